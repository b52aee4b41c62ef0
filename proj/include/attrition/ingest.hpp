#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "attrition/csv.hpp"
#include "attrition/domain.hpp"
#include "attrition/errors.hpp"

namespace attrition {

struct IngestWarning {
  std::size_t row = 0;  // file row, header = 1
  std::string column;
  std::string message;
};

/// Audit trail for one cohort file: every rejected row and every imputed or
/// unrecognized cell is accounted for here.
struct IngestReport {
  std::size_t records_read = 0;
  std::vector<IngestWarning> warnings;
  std::size_t rejected_rows = 0;
};

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

inline std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

inline std::optional<bool> parse_bool_flag(std::string_view cell) {
  const std::string t = lower(trim(cell));
  if (t == "1" || t == "true" || t == "yes") return true;
  if (t == "0" || t == "false" || t == "no") return false;
  return std::nullopt;
}

inline std::optional<int> parse_nonneg_int(std::string_view cell) {
  const std::string t = trim(cell);
  int v = 0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (res.ec != std::errc{} || res.ptr != t.data() + t.size() || v < 0) return std::nullopt;
  return v;
}

inline std::optional<double> parse_nonneg_double(std::string_view cell) {
  const std::string t = trim(cell);
  double v = 0.0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (res.ec != std::errc{} || res.ptr != t.data() + t.size() || v < 0.0) return std::nullopt;
  return v;
}

}  // namespace detail

inline constexpr std::array<std::string_view, 5> kCohortMetaColumns = {
    "student_id", "graduated", "semesters", "units", "transfer_units"};

/// Parse a cohort CSV against a curriculum. Schema: the five metadata columns
/// followed by one column per course in pathway order. Rows with unparseable
/// metadata are rejected individually and counted; unrecognized grade marks
/// become Missing with a warning. A duplicate student_id rejects the file.
inline std::pair<std::vector<StudentRecord>, IngestReport> read_cohort(
    const std::filesystem::path& path, const CurriculumSpec& spec) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open cohort file: " + path.string());
  spec.validate();

  CsvReader reader(in);
  std::vector<std::string> fields;
  if (!reader.next_record(fields)) throw DataError("empty cohort file: " + path.string());

  const auto ordered = spec.pathway_order();
  const std::size_t meta = kCohortMetaColumns.size();
  const std::size_t want = meta + ordered.size();
  for (std::size_t i = 0; i < meta; ++i) {
    if (i >= fields.size() || detail::trim(fields[i]) != kCohortMetaColumns[i]) {
      throw DataError("missing required header column: " +
                      std::string(kCohortMetaColumns[i]));
    }
  }
  for (std::size_t j = 0; j < ordered.size(); ++j) {
    if (meta + j >= fields.size() ||
        detail::trim(fields[meta + j]) != ordered[j]->course_id) {
      throw DataError("missing required header column: " + ordered[j]->course_id);
    }
  }
  if (fields.size() != want) {
    throw DataError("unexpected extra column in header: " + fields[want]);
  }

  std::vector<StudentRecord> records;
  IngestReport report;
  std::unordered_set<std::string> seen_ids;
  std::size_t row = 1;

  while (reader.next_record(fields)) {
    ++row;
    if (fields.size() == 1 && detail::trim(fields[0]).empty()) continue;
    if (fields.size() != want) {
      ++report.rejected_rows;
      report.warnings.push_back({row, "", "wrong field count: expected " +
                                              std::to_string(want) + ", got " +
                                              std::to_string(fields.size())});
      continue;
    }

    StudentRecord rec;
    rec.student_id = detail::trim(fields[0]);
    if (rec.student_id.empty()) {
      ++report.rejected_rows;
      report.warnings.push_back({row, "student_id", "empty student_id"});
      continue;
    }

    const auto grad = detail::parse_bool_flag(fields[1]);
    const auto sems = detail::parse_nonneg_int(fields[2]);
    const auto units = detail::parse_nonneg_double(fields[3]);
    const auto transfer = detail::parse_nonneg_double(fields[4]);
    if (!grad || !sems || !units || !transfer) {
      ++report.rejected_rows;
      const char* col = !grad ? "graduated" : !sems ? "semesters" : !units ? "units" : "transfer_units";
      report.warnings.push_back({row, col, "unparseable value, row rejected"});
      continue;
    }
    rec.graduated = *grad;
    rec.semesters = *sems;
    rec.units = *units;
    rec.transfer_units = *transfer;

    for (std::size_t j = 0; j < ordered.size(); ++j) {
      const std::string& course = ordered[j]->course_id;
      const auto g = parse_grade(fields[meta + j]);
      if (!g) {
        report.warnings.push_back({row, course, "unrecognized mark '" +
                                                    detail::trim(fields[meta + j]) +
                                                    "', treated as missing"});
        continue;  // Missing stays implicit; build_matrix imputes F
      }
      if (*g != LetterGrade::Missing) rec.grades.emplace(course, *g);
    }

    if (!seen_ids.insert(rec.student_id).second) {
      throw DataError("duplicate student_id: " + rec.student_id);
    }
    records.push_back(std::move(rec));
    ++report.records_read;
  }
  return {std::move(records), std::move(report)};
}

/// Write a cohort in the schema read_cohort expects. Missing grades become
/// empty cells; doubles use shortest round-trip formatting.
inline void write_cohort(std::span<const StudentRecord> records,
                         const CurriculumSpec& spec,
                         const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write cohort file: " + path.string());
  spec.validate();
  const auto ordered = spec.pathway_order();

  std::vector<std::string> fields;
  for (auto c : kCohortMetaColumns) fields.emplace_back(c);
  for (const auto* c : ordered) fields.push_back(c->course_id);
  csv_write_record(out, fields);

  for (const auto& rec : records) {
    fields.clear();
    fields.push_back(rec.student_id);
    fields.push_back(rec.graduated ? "1" : "0");
    fields.push_back(std::to_string(rec.semesters));
    fields.push_back(format_double(rec.units));
    fields.push_back(format_double(rec.transfer_units));
    for (const auto* c : ordered) {
      const auto it = rec.grades.find(c->course_id);
      fields.emplace_back(it == rec.grades.end() ? ""
                                                 : std::string(grade_symbol(it->second)));
    }
    csv_write_record(out, fields);
  }
  if (!out) throw DataError("write failed: " + path.string());
}

/// Curriculum file: one `course_id,division` line per course in pathway
/// order, division in {lower, upper}. Position is the line order.
inline CurriculumSpec read_curriculum(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open curriculum file: " + path.string());

  CurriculumSpec spec;
  spec.major_name = path.stem().string();
  CsvReader reader(in);
  std::vector<std::string> fields;
  std::unordered_set<std::string> ids;

  while (reader.next_record(fields)) {
    if (fields.size() == 1 && detail::trim(fields[0]).empty()) continue;
    if (fields.size() != 2) {
      throw DataError("curriculum line must be 'course_id,division' (got " +
                      std::to_string(fields.size()) + " fields)");
    }
    CurriculumCourse c;
    c.course_id = detail::trim(fields[0]);
    const std::string div = detail::lower(detail::trim(fields[1]));
    if (div == "lower") c.division = Division::Lower;
    else if (div == "upper") c.division = Division::Upper;
    else throw DataError("invalid division tag '" + div + "' for course " + c.course_id);
    if (c.course_id.empty()) throw DataError("empty course_id in curriculum");
    if (!ids.insert(c.course_id).second) {
      throw DataError("duplicate course in curriculum: " + c.course_id);
    }
    c.pathway_position = static_cast<int>(spec.courses.size()) + 1;
    spec.courses.push_back(std::move(c));
  }
  if (spec.courses.empty()) throw DataError("empty curriculum: " + path.string());
  return spec;
}

inline void write_curriculum(const CurriculumSpec& spec,
                             const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write curriculum file: " + path.string());
  spec.validate();
  std::vector<std::string> fields;
  for (const auto* c : spec.pathway_order()) {
    fields.assign({c->course_id, std::string(division_name(c->division))});
    csv_write_record(out, fields);
  }
  if (!out) throw DataError("write failed: " + path.string());
}

}  // namespace attrition
