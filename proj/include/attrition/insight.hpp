#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "attrition/domain.hpp"
#include "attrition/errors.hpp"
#include "attrition/kmeans.hpp"

namespace attrition {

struct BottleneckEntry {
  std::string course_id;
  Division division = Division::Lower;
  int pathway_position = 0;
  std::vector<double> cluster_means;  // encoded grades, missing counted as F
  double separation = 0.0;            // spread between extreme cluster means
};

/// Ranks courses by how far apart the clusters sit on them: separation is
/// max minus min of the per-cluster mean encoded grade. Descending by
/// separation, ties broken by earlier pathway position. `filter` restricts
/// the ranking to one division.
inline std::vector<BottleneckEntry> bottleneck_rank(
    const GradeMatrix& m, const CurriculumSpec& spec, const KMeansModel& model,
    std::optional<Division> filter = {}) {
  if (model.assignments.size() != m.n()) {
    throw ConfigError("clustering does not match matrix rows");
  }
  if (m.columns.size() != spec.courses.size()) {
    throw DataError("matrix columns do not match curriculum");
  }
  spec.validate();
  const auto ordered = spec.pathway_order();
  for (std::size_t c = 0; c < m.columns.size(); ++c) {
    if (m.columns[c] != ordered[c]->course_id) {
      throw DataError("matrix columns do not match curriculum");
    }
  }

  std::vector<std::size_t> counts(model.k, 0);
  for (const std::uint32_t a : model.assignments) counts[a] += 1;

  std::vector<BottleneckEntry> entries;
  for (std::size_t c = 0; c < m.columns.size(); ++c) {
    const CurriculumCourse& course = *ordered[c];
    if (filter && course.division != *filter) continue;

    BottleneckEntry e;
    e.course_id = course.course_id;
    e.division = course.division;
    e.pathway_position = course.pathway_position;
    e.cluster_means.assign(model.k, 0.0);
    for (std::size_t i = 0; i < m.n(); ++i) {
      e.cluster_means[model.assignments[i]] += m.values.at(i, c);
    }
    for (std::size_t j = 0; j < model.k; ++j) {
      e.cluster_means[j] /= static_cast<double>(counts[j]);
    }
    const auto [lo, hi] = std::minmax_element(e.cluster_means.begin(), e.cluster_means.end());
    e.separation = *hi - *lo;
    entries.push_back(std::move(e));
  }

  std::sort(entries.begin(), entries.end(), [](const BottleneckEntry& a, const BottleneckEntry& b) {
    if (a.separation != b.separation) return a.separation > b.separation;
    return a.pathway_position < b.pathway_position;
  });
  return entries;
}

/// Per-cluster cohort summary over the raw records (which must be in matrix
/// row order).
struct ClusterProfile {
  std::size_t cluster = 0;
  std::size_t size = 0;
  double graduation_rate = 0.0;
  double mean_semesters = 0.0;
  double mean_units = 0.0;
  double mean_transfer_units = 0.0;
};

inline std::vector<ClusterProfile> cluster_profile(std::span<const StudentRecord> records,
                                                   const KMeansModel& model) {
  if (model.assignments.size() != records.size()) {
    throw ConfigError("clustering does not match record count");
  }
  std::vector<ClusterProfile> profiles(model.k);
  for (std::size_t j = 0; j < model.k; ++j) profiles[j].cluster = j;
  for (std::size_t i = 0; i < records.size(); ++i) {
    ClusterProfile& p = profiles[model.assignments[i]];
    p.size += 1;
    p.graduation_rate += records[i].graduated ? 1.0 : 0.0;
    p.mean_semesters += static_cast<double>(records[i].semesters);
    p.mean_units += records[i].units;
    p.mean_transfer_units += records[i].transfer_units;
  }
  for (ClusterProfile& p : profiles) {
    if (p.size == 0) continue;  // cannot happen for a fitted model; keep zeros if it does
    const double inv = 1.0 / static_cast<double>(p.size);
    p.graduation_rate *= inv;
    p.mean_semesters *= inv;
    p.mean_units *= inv;
    p.mean_transfer_units *= inv;
  }
  return profiles;
}

struct EarlyWarningFeature {
  std::size_t rank = 0;  // 1-based
  std::string course_id;
  double separation = 0.0;
};

/// Top bottlenecks worth watching first, drawn from an already-ranked
/// report. `division_filter` typically restricts to lower-division
/// gatekeepers; asking for more courses than the filter leaves is an error.
inline std::vector<EarlyWarningFeature> early_warning_features(
    std::span<const BottleneckEntry> report, std::optional<Division> division_filter,
    std::size_t top_n) {
  if (top_n < 1) throw ConfigError("top_n must be >= 1");
  std::vector<EarlyWarningFeature> out;
  for (const BottleneckEntry& e : report) {
    if (division_filter && e.division != *division_filter) continue;
    if (out.size() == top_n) break;
    out.push_back({out.size() + 1, e.course_id, e.separation});
  }
  if (out.size() < top_n) {
    throw ConfigError("top_n=" + std::to_string(top_n) + " exceeds the " +
                      std::to_string(out.size()) + " courses left after filtering");
  }
  return out;
}

}  // namespace attrition
