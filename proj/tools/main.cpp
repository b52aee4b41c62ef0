#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <attrition/attrition.hpp>

namespace fs = std::filesystem;

namespace {

using namespace attrition;

struct Common {
  std::string out = ".";
  std::uint64_t seed = 0;
  bool quiet = false;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--out", c.out, "Output directory (must already exist)")
      ->capture_default_str();
  cmd->add_option("--seed", c.seed, "Random seed")->capture_default_str();
  cmd->add_flag("--quiet", c.quiet, "Suppress informational output");
}

fs::path out_dir(const Common& c) {
  const fs::path p(c.out);
  if (!fs::is_directory(p)) {
    throw ConfigError("output directory does not exist: " + c.out);
  }
  return p;
}

/// Collects outputs and timing, then drops manifest_<command>.json next to
/// them.
class ManifestWriter {
 public:
  ManifestWriter(std::string command, std::uint64_t seed)
      : start_(std::chrono::steady_clock::now()) {
    manifest_.command = std::move(command);
    manifest_.seed = seed;
    manifest_.started_at = utc_timestamp(std::time(nullptr));
  }

  json& parameters() { return manifest_.parameters; }
  void add_input(std::string path) { manifest_.inputs.push_back(std::move(path)); }
  void record_output(std::string name) { manifest_.outputs.push_back(std::move(name)); }

  void emit(const fs::path& dir, const std::string& name, const std::string& content) {
    write_text_file((dir / name).string(), content);
    record_output(name);
  }

  void finish(const fs::path& dir) {
    manifest_.duration_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    const std::string name = "manifest_" + manifest_.command + ".json";
    write_text_file((dir / name).string(), manifest_to_json(manifest_).dump(2) + "\n");
  }

 private:
  RunManifest manifest_;
  std::chrono::steady_clock::time_point start_;
};

struct Dataset {
  CurriculumSpec curriculum;
  std::vector<StudentRecord> records;
  GradeMatrix matrix;
};

Dataset load_dataset(const std::string& cohort_path, const std::string& curriculum_path,
                     bool quiet) {
  Dataset d;
  d.curriculum = read_curriculum(curriculum_path);
  auto [records, report] = read_cohort(cohort_path, d.curriculum);
  d.records = std::move(records);
  if (!quiet) {
    for (const auto& w : report.warnings) {
      std::cerr << "warning: row " << w.row << ", " << w.column << ": " << w.message << "\n";
    }
    if (report.rejected_rows > 0) {
      std::cerr << "note: " << report.rejected_rows << " row(s) rejected\n";
    }
  }
  d.matrix = build_matrix(d.records, d.curriculum);
  return d;
}

std::string json_text(const json& j) { return j.dump(2) + "\n"; }

// ---- synth ----------------------------------------------------------------

struct SynthOpts {
  Common common;
  std::string spec_path;
  bool use_default = false;
  bool seed_given = false;
};

void run_synth(const SynthOpts& o) {
  if (o.use_default == !o.spec_path.empty()) {
    throw ConfigError("synth needs exactly one of --default or --spec");
  }
  CohortSpec spec = o.use_default ? default_department_spec()
                                  : cohort_spec_from_json(parse_json_file(o.spec_path));
  if (o.seed_given) spec.seed = o.common.seed;

  const std::vector<StudentRecord> records = generate_cohort(spec);
  const CurriculumSpec curriculum = curriculum_of(spec);

  const fs::path dir = out_dir(o.common);
  ManifestWriter mw("synth", spec.seed);
  if (!o.spec_path.empty()) mw.add_input(o.spec_path);
  mw.parameters() = json{{"n", spec.n},
                         {"graduate_fraction", spec.graduate_fraction},
                         {"courses", spec.courses.size()},
                         {"default_spec", o.use_default}};

  write_cohort(records, curriculum, dir / "cohort.csv");
  mw.record_output("cohort.csv");
  write_curriculum(curriculum, dir / "curriculum.csv");
  mw.record_output("curriculum.csv");
  mw.emit(dir, "cohort_spec.json", json_text(cohort_spec_to_json(spec)));
  mw.finish(dir);

  if (!o.common.quiet) {
    std::cout << "wrote cohort.csv (" << records.size() << " students, "
              << curriculum.courses.size() << " courses) to " << dir.string() << "\n";
  }
}

// ---- select-k -------------------------------------------------------------

struct SelectKOpts {
  Common common;
  std::string cohort_path;
  std::string curriculum_path;
  std::size_t k_min = 2;
  std::size_t k_max = 6;
  std::size_t folds = 5;
  std::size_t restarts = 10;
  bool holdout = false;
  bool svg = false;
};

void run_select_k(const SelectKOpts& o) {
  const fs::path dir = out_dir(o.common);
  const Dataset d = load_dataset(o.cohort_path, o.curriculum_path, o.common.quiet);

  SelectKConfig cfg;
  cfg.k_min = o.k_min;
  cfg.k_max = o.k_max;
  cfg.folds = o.folds;
  cfg.restarts = o.restarts;
  cfg.score_on_holdout = o.holdout;
  cfg.seed = o.common.seed;
  const SelectKResult result = select_k(d.matrix, cfg);

  ManifestWriter mw("select-k", o.common.seed);
  mw.add_input(o.cohort_path);
  mw.add_input(o.curriculum_path);
  mw.parameters() = json{{"k_min", o.k_min},
                         {"k_max", o.k_max},
                         {"folds", o.folds},
                         {"restarts", o.restarts},
                         {"score_on_holdout", o.holdout}};
  mw.emit(dir, "selection.json", json_text(selection_to_json(result, cfg)));
  mw.emit(dir, "ch_curve.csv", ch_curve_csv(result));
  if (o.svg) {
    std::vector<double> xs, ys;
    for (const KScore& s : result.per_k) {
      xs.push_back(static_cast<double>(s.k));
      ys.push_back(s.mean_ch);
    }
    mw.emit(dir, "ch_curve.svg",
            line_chart_svg(xs, ys, "k", "mean CH", "Cluster count selection"));
  }
  mw.finish(dir);

  if (!o.common.quiet) std::cout << "chosen k: " << result.chosen_k << "\n";
}

// ---- evaluate -------------------------------------------------------------

struct EvaluateOpts {
  Common common;
  std::string cohort_path;
  std::string curriculum_path;
  std::size_t k = 2;
  std::size_t first_n = 3;
  std::size_t folds = 5;
  std::size_t restarts = 10;
  bool svg = false;
};

std::string feature_token(const std::string& feature_set) {
  std::string t;
  for (const char c : feature_set) {
    if (c != '_') t.push_back(c);
  }
  return t;
}

void run_evaluate(const EvaluateOpts& o) {
  const fs::path dir = out_dir(o.common);
  const Dataset d = load_dataset(o.cohort_path, o.curriculum_path, o.common.quiet);

  CompareConfig cfg;
  cfg.kmeans.k = o.k;
  cfg.kmeans.restarts = o.restarts;
  cfg.folds = o.folds;
  cfg.first_n = o.first_n;
  cfg.seed = o.common.seed;
  const CompareResult result = compare_classifiers(d.matrix, d.curriculum, cfg);

  ManifestWriter mw("evaluate", o.common.seed);
  mw.add_input(o.cohort_path);
  mw.add_input(o.curriculum_path);
  mw.parameters() = json{{"k", o.k},
                         {"first_n", o.first_n},
                         {"folds", o.folds},
                         {"restarts", o.restarts}};
  mw.emit(dir, "metrics.json", json_text(metrics_to_json(result)));
  for (const EvalReport& e : result.entries) {
    const std::string base = "roc_" + e.classifier + "_" + feature_token(e.feature_set);
    mw.emit(dir, base + ".csv", roc_csv(e.roc));
    if (o.svg) {
      std::vector<double> xs, ys;
      for (const RocPoint& p : e.roc.points) {
        xs.push_back(p.fpr);
        ys.push_back(p.tpr);
      }
      mw.emit(dir, base + ".svg",
              line_chart_svg(xs, ys, "false positive rate", "true positive rate",
                             e.classifier + " / " + e.feature_set));
    }
  }
  mw.finish(dir);

  if (!o.common.quiet) {
    for (const EvalReport& e : result.entries) {
      std::cout << e.classifier << "/" << e.feature_set
                << ": accuracy=" << e.metrics.accuracy << " f1=" << e.metrics.f1
                << " auc=" << e.roc.auc << "\n";
    }
  }
}

// ---- bottlenecks ----------------------------------------------------------

struct BottlenecksOpts {
  Common common;
  std::string cohort_path;
  std::string curriculum_path;
  std::size_t k = 2;
  std::size_t restarts = 10;
  std::string division = "any";
  std::size_t top = 10;
};

void run_bottlenecks(const BottlenecksOpts& o) {
  const fs::path dir = out_dir(o.common);
  const Dataset d = load_dataset(o.cohort_path, o.curriculum_path, o.common.quiet);

  KMeansConfig kc;
  kc.k = o.k;
  kc.restarts = o.restarts;
  kc.seed = o.common.seed;
  const KMeansModel model = kmeans_fit(d.matrix, kc);

  std::optional<Division> filter;
  if (o.division == "lower") filter = Division::Lower;
  else if (o.division == "upper") filter = Division::Upper;

  const auto ranked = bottleneck_rank(d.matrix, d.curriculum, model, filter);
  const auto profiles = cluster_profile(d.records, model);

  ManifestWriter mw("bottlenecks", o.common.seed);
  mw.add_input(o.cohort_path);
  mw.add_input(o.curriculum_path);
  mw.parameters() = json{{"k", o.k},
                         {"restarts", o.restarts},
                         {"division", o.division},
                         {"top", o.top}};
  mw.emit(dir, "bottlenecks.csv", bottlenecks_csv(ranked, model.k));
  mw.emit(dir, "profile.csv", profile_csv(profiles));
  if (o.top >= 1) {
    const auto full_rank =
        filter ? bottleneck_rank(d.matrix, d.curriculum, model) : ranked;
    std::size_t lower_count = 0;
    for (const auto& e : full_rank) {
      if (e.division == Division::Lower) ++lower_count;
    }
    const std::size_t top_eff = std::min(o.top, lower_count);
    if (top_eff >= 1) {
      const auto warn = early_warning_features(full_rank, Division::Lower, top_eff);
      mw.emit(dir, "early_warning.csv", early_warning_csv(warn));
    }
  }
  mw.finish(dir);

  if (!o.common.quiet) {
    const std::size_t show = std::min<std::size_t>(5, ranked.size());
    for (std::size_t i = 0; i < show; ++i) {
      std::cout << (i + 1) << ". " << ranked[i].course_id
                << " separation=" << ranked[i].separation << "\n";
    }
  }
}

void add_dataset_options(CLI::App* cmd, std::string& cohort, std::string& curriculum) {
  cmd->add_option("--cohort", cohort, "Cohort CSV")->required();
  cmd->add_option("--curriculum", curriculum, "Curriculum CSV")->required();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deterministic student attrition analysis"};
  app.require_subcommand(1);
  app.set_version_flag("--version", attrition::kVersion);

  SynthOpts synth_opts;
  CLI::App* synth = app.add_subcommand("synth", "Generate a synthetic cohort");
  add_common(synth, synth_opts.common);
  synth->add_flag("--default", synth_opts.use_default,
                  "Use the built-in department spec");
  synth->add_option("--spec", synth_opts.spec_path, "Cohort spec JSON file");

  SelectKOpts select_opts;
  CLI::App* select = app.add_subcommand("select-k", "Choose the cluster count");
  add_common(select, select_opts.common);
  add_dataset_options(select, select_opts.cohort_path, select_opts.curriculum_path);
  select->add_option("--k-min", select_opts.k_min, "Smallest k")->capture_default_str();
  select->add_option("--k-max", select_opts.k_max, "Largest k")->capture_default_str();
  select->add_option("--folds", select_opts.folds, "Cross-validation folds")
      ->capture_default_str();
  select->add_option("--restarts", select_opts.restarts, "Clustering restarts")
      ->capture_default_str();
  select->add_flag("--holdout", select_opts.holdout, "Score folds on held-out rows");
  select->add_flag("--svg", select_opts.svg, "Also render the CH curve as SVG");

  EvaluateOpts eval_opts;
  CLI::App* evaluate = app.add_subcommand("evaluate", "Compare classifiers");
  add_common(evaluate, eval_opts.common);
  add_dataset_options(evaluate, eval_opts.cohort_path, eval_opts.curriculum_path);
  evaluate->add_option("--k", eval_opts.k, "Cluster count")->capture_default_str();
  evaluate->add_option("--first-n", eval_opts.first_n, "Early-pathway feature count")
      ->capture_default_str();
  evaluate->add_option("--folds", eval_opts.folds, "Cross-validation folds")
      ->capture_default_str();
  evaluate->add_option("--restarts", eval_opts.restarts, "Clustering restarts")
      ->capture_default_str();
  evaluate->add_flag("--svg", eval_opts.svg, "Also render ROC curves as SVG");

  BottlenecksOpts bott_opts;
  CLI::App* bott = app.add_subcommand("bottlenecks", "Rank bottleneck courses");
  add_common(bott, bott_opts.common);
  add_dataset_options(bott, bott_opts.cohort_path, bott_opts.curriculum_path);
  bott->add_option("--k", bott_opts.k, "Cluster count")->capture_default_str();
  bott->add_option("--restarts", bott_opts.restarts, "Clustering restarts")
      ->capture_default_str();
  bott->add_option("--division", bott_opts.division, "Restrict ranking")
      ->check(CLI::IsMember({"any", "lower", "upper"}))
      ->capture_default_str();
  bott->add_option("--top", bott_opts.top,
                   "Early-warning list length, capped at the lower-division "
                   "course count (0 skips the file)")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  synth_opts.seed_given = synth->count("--seed") > 0;

  try {
    if (synth->parsed()) run_synth(synth_opts);
    else if (select->parsed()) run_select_k(select_opts);
    else if (evaluate->parsed()) run_evaluate(eval_opts);
    else if (bott->parsed()) run_bottlenecks(bott_opts);
    return 0;
  } catch (const attrition::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const attrition::DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const attrition::NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
