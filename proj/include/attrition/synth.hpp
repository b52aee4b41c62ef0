#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "attrition/domain.hpp"
#include "attrition/errors.hpp"
#include "attrition/grades.hpp"
#include "attrition/rng.hpp"

namespace attrition {

/// Grade model for one course within one outcome group: a normal draw
/// clipped to the encoded range and snapped to the nearest letter grade,
/// or no record at all with probability missing_rate.
struct GroupCourseParams {
  double mean = 0.0;
  double stddev = 0.5;
  double missing_rate = 0.0;
};

struct SynthCourse {
  std::string course_id;
  Division division = Division::Lower;
  GroupCourseParams grad;
  GroupCourseParams nongrad;
};

struct GroupMeta {
  double semesters_mean = 0.0;
  double semesters_stddev = 1.0;
  double units_mean = 0.0;
  double units_stddev = 1.0;
  double transfer_mean = 0.0;
  double transfer_stddev = 1.0;
};

struct CohortSpec {
  std::size_t n = 2000;
  double graduate_fraction = 0.6;
  std::vector<SynthCourse> courses;  // pathway order
  GroupMeta grad_meta;
  GroupMeta nongrad_meta;
  std::uint64_t seed = 0;
  std::string major_name = "synthetic";

  void validate() const {
    if (n < 1) throw ConfigError("cohort size must be >= 1");
    if (!(graduate_fraction >= 0.0 && graduate_fraction <= 1.0)) {
      throw ConfigError("graduate_fraction must be in [0, 1]");
    }
    if (courses.empty()) throw ConfigError("cohort spec has no courses");
    for (const SynthCourse& c : courses) {
      for (const GroupCourseParams* p : {&c.grad, &c.nongrad}) {
        if (!(p->stddev >= 0.0)) throw ConfigError("stddev must be >= 0 in " + c.course_id);
        if (!(p->missing_rate >= 0.0 && p->missing_rate <= 1.0)) {
          throw ConfigError("missing_rate must be in [0, 1] in " + c.course_id);
        }
      }
    }
  }
};

inline CurriculumSpec curriculum_of(const CohortSpec& spec) {
  CurriculumSpec cur;
  cur.major_name = spec.major_name;
  for (std::size_t i = 0; i < spec.courses.size(); ++i) {
    cur.courses.push_back(
        {spec.courses[i].course_id, spec.courses[i].division, static_cast<int>(i + 1)});
  }
  cur.validate();
  return cur;
}

/// Draws the cohort from a single random stream in a fixed order (group,
/// then each course in pathway order, then the metadata fields), so equal
/// specs produce identical cohorts.
inline std::vector<StudentRecord> generate_cohort(const CohortSpec& spec) {
  spec.validate();
  curriculum_of(spec);  // validates course ids

  Rng rng(spec.seed);
  const std::size_t width = std::to_string(spec.n).size();
  std::vector<StudentRecord> records;
  records.reserve(spec.n);

  for (std::size_t i = 0; i < spec.n; ++i) {
    StudentRecord rec;
    std::string num = std::to_string(i + 1);
    rec.student_id = "s" + std::string(width - num.size(), '0') + num;
    rec.graduated = rng.bernoulli(spec.graduate_fraction);

    for (const SynthCourse& course : spec.courses) {
      const GroupCourseParams& p = rec.graduated ? course.grad : course.nongrad;
      if (rng.bernoulli(p.missing_rate)) continue;
      double g = rng.normal(p.mean, p.stddev);
      g = std::clamp(g, kLetterValues.back(), kLetterValues.front());
      rec.grades[course.course_id] = nearest_letter(g);
    }

    const GroupMeta& meta = rec.graduated ? spec.grad_meta : spec.nongrad_meta;
    const double sem = rng.normal(meta.semesters_mean, meta.semesters_stddev);
    rec.semesters = static_cast<int>(std::max<long long>(0, std::llround(sem)));
    rec.units = std::max(0.0, rng.normal(meta.units_mean, meta.units_stddev));
    rec.transfer_units = std::max(0.0, rng.normal(meta.transfer_mean, meta.transfer_stddev));
    records.push_back(std::move(rec));
  }
  return records;
}

/// A department shaped like the motivating use case: a long pathway with a
/// harsh early gatekeeper course, two more introductory courses, a broad
/// lower division, and an upper division that students who leave early
/// rarely reach.
inline CohortSpec default_department_spec() {
  CohortSpec spec;
  spec.n = 2000;
  spec.graduate_fraction = 0.6;
  spec.major_name = "synthetic";

  for (std::size_t p = 1; p <= 113; ++p) {
    SynthCourse c;
    c.course_id = "C" + std::to_string(100 + p);
    c.division = p <= 45 ? Division::Lower : Division::Upper;
    if (p == 1) {  // gatekeeper: failed or skipped by most who leave
      c.grad = {1.05, 0.7, 0.02};
      c.nongrad = {-0.4, 0.9, 0.72};
    } else if (p <= 3) {
      c.grad = {0.9, 0.8, 0.03};
      c.nongrad = {-0.3, 0.8, 0.12};
    } else if (p <= 45) {
      c.grad = {1.0, 0.7, 0.03};
      c.nongrad = {0.0, 0.8, 0.15 + 0.4 * static_cast<double>(p - 4) / 41.0};
    } else {
      c.grad = {1.1, 0.7, 0.05};
      c.nongrad = {-0.3, 0.8, 0.65};
    }
    spec.courses.push_back(std::move(c));
  }

  spec.grad_meta = {12.0, 2.0, 120.0, 8.0, 12.0, 9.0};
  spec.nongrad_meta = {4.0, 1.5, 45.0, 15.0, 9.0, 8.0};
  return spec;
}

}  // namespace attrition
