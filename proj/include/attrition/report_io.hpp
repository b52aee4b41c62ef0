#pragma once

#include <cstdint>
#include <ctime>
#include <fstream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "attrition/cluster_classifier.hpp"
#include "attrition/compare.hpp"
#include "attrition/csv.hpp"
#include "attrition/errors.hpp"
#include "attrition/insight.hpp"
#include "attrition/logistic.hpp"
#include "attrition/select_k.hpp"
#include "attrition/synth.hpp"
#include "attrition/version.hpp"

namespace attrition {

using json = nlohmann::ordered_json;

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open for writing: " + path);
  out << content;
  if (!out) throw ConfigError("write failed: " + path);
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline json parse_json_file(const std::string& path) {
  try {
    return json::parse(read_text_file(path));
  } catch (const json::parse_error& e) {
    throw DataError("invalid JSON in " + path + ": " + e.what());
  }
}

// ---- cohort spec ----------------------------------------------------------

inline json cohort_spec_to_json(const CohortSpec& spec) {
  json j;
  j["n"] = spec.n;
  j["graduate_fraction"] = spec.graduate_fraction;
  j["seed"] = spec.seed;
  j["major_name"] = spec.major_name;
  const auto meta = [](const GroupMeta& m) {
    return json{{"semesters_mean", m.semesters_mean},
                {"semesters_stddev", m.semesters_stddev},
                {"units_mean", m.units_mean},
                {"units_stddev", m.units_stddev},
                {"transfer_mean", m.transfer_mean},
                {"transfer_stddev", m.transfer_stddev}};
  };
  j["grad_meta"] = meta(spec.grad_meta);
  j["nongrad_meta"] = meta(spec.nongrad_meta);
  j["courses"] = json::array();
  const auto params = [](const GroupCourseParams& p) {
    return json{{"mean", p.mean}, {"stddev", p.stddev}, {"missing_rate", p.missing_rate}};
  };
  for (const SynthCourse& c : spec.courses) {
    j["courses"].push_back(json{{"course_id", c.course_id},
                                {"division", std::string(division_name(c.division))},
                                {"grad", params(c.grad)},
                                {"nongrad", params(c.nongrad)}});
  }
  return j;
}

inline CohortSpec cohort_spec_from_json(const json& j) {
  try {
    CohortSpec spec;
    spec.n = j.at("n").get<std::size_t>();
    spec.graduate_fraction = j.at("graduate_fraction").get<double>();
    if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("major_name")) spec.major_name = j.at("major_name").get<std::string>();
    const auto meta = [](const json& m) {
      GroupMeta g;
      g.semesters_mean = m.at("semesters_mean").get<double>();
      g.semesters_stddev = m.at("semesters_stddev").get<double>();
      g.units_mean = m.at("units_mean").get<double>();
      g.units_stddev = m.at("units_stddev").get<double>();
      g.transfer_mean = m.at("transfer_mean").get<double>();
      g.transfer_stddev = m.at("transfer_stddev").get<double>();
      return g;
    };
    spec.grad_meta = meta(j.at("grad_meta"));
    spec.nongrad_meta = meta(j.at("nongrad_meta"));
    const auto params = [](const json& p) {
      GroupCourseParams g;
      g.mean = p.at("mean").get<double>();
      g.stddev = p.at("stddev").get<double>();
      g.missing_rate = p.at("missing_rate").get<double>();
      return g;
    };
    for (const json& c : j.at("courses")) {
      SynthCourse sc;
      sc.course_id = c.at("course_id").get<std::string>();
      const std::string div = c.at("division").get<std::string>();
      if (div == "lower") sc.division = Division::Lower;
      else if (div == "upper") sc.division = Division::Upper;
      else throw DataError("unknown division: " + div);
      sc.grad = params(c.at("grad"));
      sc.nongrad = params(c.at("nongrad"));
      spec.courses.push_back(std::move(sc));
    }
    spec.validate();
    return spec;
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed cohort spec: ") + e.what());
  }
}

// ---- k selection ----------------------------------------------------------

inline json selection_to_json(const SelectKResult& r, const SelectKConfig& cfg) {
  json j;
  j["chosen_k"] = r.chosen_k;
  j["k_min"] = cfg.k_min;
  j["k_max"] = cfg.k_max;
  j["folds"] = cfg.folds;
  j["score_on_holdout"] = cfg.score_on_holdout;
  j["per_k"] = json::array();
  for (const KScore& s : r.per_k) {
    j["per_k"].push_back(json{{"k", s.k}, {"mean_ch", s.mean_ch}, {"fold_ch", s.fold_ch}});
  }
  return j;
}

inline std::string ch_curve_csv(const SelectKResult& r) {
  std::ostringstream out;
  csv_write_record(out, {"k", "mean_ch"});
  for (const KScore& s : r.per_k) {
    csv_write_record(out, {std::to_string(s.k), format_double(s.mean_ch)});
  }
  return out.str();
}

// ---- evaluation -----------------------------------------------------------

inline json metrics_to_json(const CompareResult& r) {
  json j;
  j["entries"] = json::array();
  for (const EvalReport& e : r.entries) {
    json m;
    m["classifier"] = e.classifier;
    m["feature_set"] = e.feature_set;
    m["counts"] = json{{"tp", e.counts.tp}, {"fp", e.counts.fp},
                       {"tn", e.counts.tn}, {"fn", e.counts.fn}};
    m["metrics"] = json{{"accuracy", e.metrics.accuracy},
                        {"precision", e.metrics.precision},
                        {"recall", e.metrics.recall},
                        {"f1", e.metrics.f1},
                        {"precision_defined", e.metrics.precision_defined},
                        {"recall_defined", e.metrics.recall_defined},
                        {"f1_defined", e.metrics.f1_defined}};
    m["auc"] = e.roc.auc;
    j["entries"].push_back(std::move(m));
  }
  return j;
}

inline std::string roc_csv(const RocCurve& roc) {
  std::ostringstream out;
  csv_write_record(out, {"fpr", "tpr"});
  for (const RocPoint& p : roc.points) {
    csv_write_record(out, {format_double(p.fpr), format_double(p.tpr)});
  }
  return out.str();
}

// ---- insight --------------------------------------------------------------

inline std::string bottlenecks_csv(std::span<const BottleneckEntry> entries, std::size_t k) {
  std::ostringstream out;
  std::vector<std::string> header = {"course_id", "division", "pathway_position"};
  for (std::size_t j = 0; j < k; ++j) header.push_back("cluster" + std::to_string(j) + "_mean");
  header.push_back("separation");
  csv_write_record(out, header);
  for (const BottleneckEntry& e : entries) {
    std::vector<std::string> row = {e.course_id, std::string(division_name(e.division)),
                                    std::to_string(e.pathway_position)};
    for (const double m : e.cluster_means) row.push_back(format_double(m));
    row.push_back(format_double(e.separation));
    csv_write_record(out, row);
  }
  return out.str();
}

inline std::string profile_csv(std::span<const ClusterProfile> profiles) {
  std::ostringstream out;
  csv_write_record(out, {"cluster", "size", "graduation_rate", "mean_semesters",
                         "mean_units", "mean_transfer_units"});
  for (const ClusterProfile& p : profiles) {
    csv_write_record(out, {std::to_string(p.cluster), std::to_string(p.size),
                           format_double(p.graduation_rate), format_double(p.mean_semesters),
                           format_double(p.mean_units), format_double(p.mean_transfer_units)});
  }
  return out.str();
}

inline std::string early_warning_csv(std::span<const EarlyWarningFeature> features) {
  std::ostringstream out;
  csv_write_record(out, {"rank", "course_id", "separation"});
  for (const EarlyWarningFeature& f : features) {
    csv_write_record(out, {std::to_string(f.rank), f.course_id, format_double(f.separation)});
  }
  return out.str();
}

// ---- fitted models --------------------------------------------------------

inline json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows; ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols; ++c) row.push_back(m.at(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Matrix matrix_from_json(const json& j) {
  const std::size_t rows = j.size();
  const std::size_t cols = rows > 0 ? j.at(0).size() : 0;
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const json& row = j.at(r);
    if (row.size() != cols) throw DataError("ragged matrix in JSON");
    for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = row.at(c).get<double>();
  }
  return m;
}

inline json cluster_classifier_to_json(const ClusterClassifier& model) {
  json j;
  j["type"] = "cluster_classifier";
  j["threshold"] = model.threshold;
  j["kmeans"] = json{{"k", model.clustering.config.k},
                     {"restarts", model.clustering.config.restarts},
                     {"max_iters", model.clustering.config.max_iters},
                     {"rel_tol", model.clustering.config.rel_tol},
                     {"seed", model.clustering.config.seed}};
  j["inertia"] = model.clustering.inertia;
  j["centroids"] = matrix_to_json(model.clustering.centroids);
  j["grad_fraction"] = model.grad_fraction;
  j["sizes"] = model.sizes;
  return j;
}

inline ClusterClassifier cluster_classifier_from_json(const json& j) {
  try {
    if (j.at("type").get<std::string>() != "cluster_classifier") {
      throw DataError("not a cluster classifier");
    }
    ClusterClassifier model;
    model.threshold = j.at("threshold").get<double>();
    const json& kc = j.at("kmeans");
    model.clustering.config.k = kc.at("k").get<std::size_t>();
    model.clustering.config.restarts = kc.at("restarts").get<std::size_t>();
    model.clustering.config.max_iters = kc.at("max_iters").get<std::size_t>();
    model.clustering.config.rel_tol = kc.at("rel_tol").get<double>();
    model.clustering.config.seed = kc.at("seed").get<std::uint64_t>();
    model.clustering.inertia = j.at("inertia").get<double>();
    model.clustering.centroids = matrix_from_json(j.at("centroids"));
    model.clustering.k = model.clustering.centroids.rows;
    model.grad_fraction = j.at("grad_fraction").get<std::vector<double>>();
    model.sizes = j.at("sizes").get<std::vector<std::size_t>>();
    if (model.grad_fraction.size() != model.clustering.k ||
        model.sizes.size() != model.clustering.k) {
      throw DataError("cluster classifier fields disagree on k");
    }
    return model;
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed cluster classifier: ") + e.what());
  }
}

inline json logistic_to_json(const LogisticModel& model) {
  json j;
  j["type"] = "logistic";
  j["threshold"] = model.threshold;
  j["l2_lambda"] = model.l2_lambda;
  j["weights"] = model.weights;
  j["bias"] = model.bias;
  j["iters"] = model.iters;
  j["final_grad_norm"] = model.final_grad_norm;
  j["converged"] = model.converged;
  return j;
}

inline LogisticModel logistic_from_json(const json& j) {
  try {
    if (j.at("type").get<std::string>() != "logistic") throw DataError("not a logistic model");
    LogisticModel model;
    model.threshold = j.at("threshold").get<double>();
    model.l2_lambda = j.at("l2_lambda").get<double>();
    model.weights = j.at("weights").get<std::vector<double>>();
    model.bias = j.at("bias").get<double>();
    model.iters = j.at("iters").get<std::size_t>();
    model.final_grad_norm = j.at("final_grad_norm").get<double>();
    model.converged = j.at("converged").get<bool>();
    return model;
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed logistic model: ") + e.what());
  }
}

// ---- run manifest ---------------------------------------------------------

/// Provenance sidecar written next to every command's outputs. Contains
/// wall-clock fields, so it is the one artifact not expected to be
/// byte-identical across reruns.
struct RunManifest {
  std::string command;
  std::string tool_version = kVersion;
  std::uint64_t seed = 0;
  json parameters = json::object();
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;  // relative to the output directory
  std::string started_at;            // ISO 8601 UTC
  double duration_seconds = 0.0;
};

inline std::string utc_timestamp(std::time_t t) {
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline json manifest_to_json(const RunManifest& m) {
  json j;
  j["command"] = m.command;
  j["tool_version"] = m.tool_version;
  j["seed"] = m.seed;
  j["parameters"] = m.parameters;
  j["inputs"] = m.inputs;
  j["outputs"] = m.outputs;
  j["started_at"] = m.started_at;
  j["duration_seconds"] = m.duration_seconds;
  return j;
}

}  // namespace attrition
