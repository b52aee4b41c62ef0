#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "attrition/errors.hpp"
#include "attrition/grades.hpp"
#include "attrition/matrix.hpp"

namespace attrition {

enum class Division { Lower, Upper };

inline std::string_view division_name(Division d) {
  return d == Division::Lower ? "lower" : "upper";
}

/// One student: graduation outcome, enrollment metadata, and letter grades
/// for the required courses they took.
struct StudentRecord {
  std::string student_id;
  bool graduated = false;
  int semesters = 0;            // count, non-negative
  double units = 0.0;           // credit units, non-negative
  double transfer_units = 0.0;  // credit units, non-negative
  std::map<std::string, LetterGrade> grades;  // course_id -> grade

  friend bool operator==(const StudentRecord&, const StudentRecord&) = default;
};

struct CurriculumCourse {
  std::string course_id;
  Division division = Division::Lower;
  int pathway_position = 0;  // 1-based position in the graduation pathway
};

/// Ordered list of the required courses for one major. Pathway positions are
/// unique and contiguous from 1; the course order is the pathway order.
struct CurriculumSpec {
  std::vector<CurriculumCourse> courses;
  std::string major_name;

  void validate() const {
    std::unordered_set<std::string> ids;
    std::vector<bool> seen(courses.size(), false);
    for (const auto& c : courses) {
      if (!ids.insert(c.course_id).second) {
        throw DataError("duplicate course_id in curriculum: " + c.course_id);
      }
      if (c.pathway_position < 1 ||
          static_cast<std::size_t>(c.pathway_position) > courses.size() ||
          seen[static_cast<std::size_t>(c.pathway_position) - 1]) {
        throw DataError("pathway positions must be unique and contiguous from 1");
      }
      seen[static_cast<std::size_t>(c.pathway_position) - 1] = true;
    }
  }

  /// Courses sorted by pathway position. The list itself may be in any order.
  std::vector<const CurriculumCourse*> pathway_order() const {
    std::vector<const CurriculumCourse*> ordered(courses.size(), nullptr);
    for (const auto& c : courses) {
      ordered[static_cast<std::size_t>(c.pathway_position) - 1] = &c;
    }
    return ordered;
  }
};

/// Encoded, F-imputed feature matrix. Rows are students in input order,
/// columns are the curriculum's courses in pathway order. Every cell is one
/// of the twelve encoded letter values; labels mirror the graduated flags.
struct GradeMatrix {
  Matrix values;
  std::vector<std::string> columns;   // course ids, pathway order
  std::vector<std::string> row_ids;   // student ids
  std::vector<std::uint8_t> labels;   // 1 = graduated

  std::size_t n() const { return values.rows; }
  std::size_t d() const { return values.cols; }

  friend bool operator==(const GradeMatrix&, const GradeMatrix&) = default;
};

/// Encode a cohort against its curriculum. Missing grades (course never
/// taken) encode as F.
inline GradeMatrix build_matrix(std::span<const StudentRecord> records,
                                const CurriculumSpec& spec) {
  if (records.empty()) throw DataError("empty cohort");
  spec.validate();

  const auto ordered = spec.pathway_order();
  std::unordered_map<std::string, std::size_t> col_of;
  col_of.reserve(ordered.size());
  for (std::size_t j = 0; j < ordered.size(); ++j) {
    col_of.emplace(ordered[j]->course_id, j);
  }

  GradeMatrix m;
  m.values = Matrix(records.size(), ordered.size(),
                    encode_grade(LetterGrade::Missing));
  m.columns.reserve(ordered.size());
  for (const auto* c : ordered) m.columns.push_back(c->course_id);

  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& rec = records[i];
    for (const auto& [course, grade] : rec.grades) {
      const auto it = col_of.find(course);
      if (it == col_of.end()) {
        throw DataError("course not in curriculum: " + course +
                        " (student " + rec.student_id + ")");
      }
      m.values.at(i, it->second) = encode_grade(grade);
    }
    m.row_ids.push_back(rec.student_id);
    m.labels.push_back(rec.graduated ? 1 : 0);
  }
  return m;
}

/// Restrict to the k earliest pathway courses. k = d is the identity.
inline GradeMatrix subset_first_k(const GradeMatrix& m, const CurriculumSpec& spec,
                                  std::size_t k) {
  if (k < 1 || k > m.d()) {
    throw ConfigError("first-k subset out of range: k=" + std::to_string(k) +
                      ", courses=" + std::to_string(m.d()));
  }
  if (spec.courses.size() != m.d()) {
    throw DataError("curriculum does not match matrix columns");
  }
  spec.validate();
  // Columns must be in pathway order; verify and take the prefix.
  const auto ordered = spec.pathway_order();
  for (std::size_t j = 0; j < m.d(); ++j) {
    if (ordered[j]->course_id != m.columns[j]) {
      throw DataError("matrix columns out of pathway order at " + m.columns[j]);
    }
  }
  GradeMatrix out;
  out.values = Matrix(m.n(), k);
  for (std::size_t i = 0; i < m.n(); ++i) {
    for (std::size_t j = 0; j < k; ++j) out.values.at(i, j) = m.values.at(i, j);
  }
  out.columns.assign(m.columns.begin(), m.columns.begin() + static_cast<long>(k));
  out.row_ids = m.row_ids;
  out.labels = m.labels;
  return out;
}

/// Row subset in the given index order; labels and ids follow.
inline GradeMatrix rows_subset(const GradeMatrix& m, std::span<const std::size_t> idx) {
  GradeMatrix out;
  out.values = Matrix(idx.size(), m.d());
  out.columns = m.columns;
  for (std::size_t r = 0; r < idx.size(); ++r) {
    const auto src = m.values.row(idx[r]);
    auto dst = out.values.row(r);
    for (std::size_t c = 0; c < m.d(); ++c) dst[c] = src[c];
    out.row_ids.push_back(m.row_ids[idx[r]]);
    out.labels.push_back(m.labels[idx[r]]);
  }
  return out;
}

}  // namespace attrition
