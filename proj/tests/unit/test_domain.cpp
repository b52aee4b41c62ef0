#include <catch2/catch_amalgamated.hpp>

#include <attrition/domain.hpp>
#include <attrition/errors.hpp>

using namespace attrition;

namespace {

CurriculumSpec two_course_spec() {
  CurriculumSpec spec;
  spec.major_name = "demo";
  spec.courses = {{"C101", Division::Lower, 1}, {"C102", Division::Upper, 2}};
  return spec;
}

}  // namespace

TEST_CASE("build_matrix encodes grades and imputes missing courses", "[domain]") {
  StudentRecord s;
  s.student_id = "s1";
  s.graduated = true;
  s.grades = {{"C101", LetterGrade::A}};

  const std::vector<StudentRecord> cohort = {s};
  const GradeMatrix m = build_matrix(cohort, two_course_spec());

  REQUIRE(m.n() == 1);
  REQUIRE(m.d() == 2);
  CHECK(m.values.at(0, 0) == 2.0);
  CHECK(m.values.at(0, 1) == -2.0);
  CHECK(m.columns == std::vector<std::string>{"C101", "C102"});
  CHECK(m.row_ids == std::vector<std::string>{"s1"});
  REQUIRE(m.labels.size() == 1);
  CHECK(m.labels[0] == 1);
}

TEST_CASE("build_matrix rejects an empty cohort", "[domain]") {
  const std::vector<StudentRecord> cohort;
  CHECK_THROWS_MATCHES(build_matrix(cohort, two_course_spec()), DataError,
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::ContainsSubstring("empty cohort")));
}

TEST_CASE("build_matrix names an unknown course", "[domain]") {
  StudentRecord s;
  s.student_id = "s1";
  s.grades = {{"X999", LetterGrade::B}};
  const std::vector<StudentRecord> cohort = {s};
  CHECK_THROWS_MATCHES(build_matrix(cohort, two_course_spec()), DataError,
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::ContainsSubstring("X999")));
}

TEST_CASE("columns come out in pathway order even if the list is shuffled", "[domain]") {
  CurriculumSpec spec;
  spec.major_name = "demo";
  spec.courses = {{"LATE", Division::Upper, 3},
                  {"FIRST", Division::Lower, 1},
                  {"MID", Division::Lower, 2}};

  StudentRecord s;
  s.student_id = "s1";
  s.grades = {{"FIRST", LetterGrade::A}, {"MID", LetterGrade::B}, {"LATE", LetterGrade::C}};
  const std::vector<StudentRecord> cohort = {s};

  const GradeMatrix m = build_matrix(cohort, spec);
  CHECK(m.columns == std::vector<std::string>{"FIRST", "MID", "LATE"});
  CHECK(m.values.at(0, 0) == 2.0);
  CHECK(m.values.at(0, 1) == 1.0);
  CHECK(m.values.at(0, 2) == 0.0);
}

TEST_CASE("labels mirror graduation flags", "[domain]") {
  StudentRecord a;
  a.student_id = "s1";
  a.graduated = true;
  StudentRecord b;
  b.student_id = "s2";
  b.graduated = false;
  const std::vector<StudentRecord> cohort = {a, b};
  const GradeMatrix m = build_matrix(cohort, two_course_spec());
  CHECK(m.labels == std::vector<std::uint8_t>{1, 0});
}

TEST_CASE("curriculum validation catches bad pathway positions", "[domain]") {
  CurriculumSpec dup;
  dup.courses = {{"A1", Division::Lower, 1}, {"A1", Division::Lower, 2}};
  CHECK_THROWS_AS(dup.validate(), DataError);

  CurriculumSpec gap;
  gap.courses = {{"A1", Division::Lower, 1}, {"A2", Division::Lower, 3}};
  CHECK_THROWS_AS(gap.validate(), DataError);

  CurriculumSpec repeat;
  repeat.courses = {{"A1", Division::Lower, 1}, {"A2", Division::Lower, 1}};
  CHECK_THROWS_AS(repeat.validate(), DataError);

  CurriculumSpec ok;
  ok.courses = {{"A1", Division::Lower, 2}, {"A2", Division::Lower, 1}};
  CHECK_NOTHROW(ok.validate());
}

TEST_CASE("subset_first_k keeps the earliest pathway courses", "[domain]") {
  CurriculumSpec spec;
  spec.major_name = "demo";
  spec.courses = {{"P1", Division::Lower, 1},
                  {"P2", Division::Lower, 2},
                  {"P3", Division::Lower, 3},
                  {"P4", Division::Upper, 4}};

  StudentRecord s;
  s.student_id = "s1";
  s.grades = {{"P1", LetterGrade::A},
              {"P2", LetterGrade::B},
              {"P3", LetterGrade::C},
              {"P4", LetterGrade::D}};
  const std::vector<StudentRecord> cohort = {s};
  const GradeMatrix m = build_matrix(cohort, spec);

  const GradeMatrix first3 = subset_first_k(m, spec, 3);
  REQUIRE(first3.d() == 3);
  CHECK(first3.columns == std::vector<std::string>{"P1", "P2", "P3"});
  CHECK(first3.values.at(0, 0) == 2.0);
  CHECK(first3.values.at(0, 1) == 1.0);
  CHECK(first3.values.at(0, 2) == 0.0);
  CHECK(first3.labels == m.labels);
  CHECK(first3.row_ids == m.row_ids);
}

TEST_CASE("subset_first_k with k equal to the width is the identity", "[domain]") {
  CurriculumSpec spec = two_course_spec();
  StudentRecord s;
  s.student_id = "s1";
  s.grades = {{"C101", LetterGrade::BMinus}};
  const std::vector<StudentRecord> cohort = {s};
  const GradeMatrix m = build_matrix(cohort, spec);
  CHECK(subset_first_k(m, spec, 2) == m);
}

TEST_CASE("subset_first_k rejects out-of-range widths", "[domain]") {
  CurriculumSpec spec = two_course_spec();
  StudentRecord s;
  s.student_id = "s1";
  const std::vector<StudentRecord> cohort = {s};
  const GradeMatrix m = build_matrix(cohort, spec);
  CHECK_THROWS_AS(subset_first_k(m, spec, 0), ConfigError);
  CHECK_THROWS_AS(subset_first_k(m, spec, 3), ConfigError);
}

TEST_CASE("grade matrix rows subset follows index order", "[domain]") {
  CurriculumSpec spec = two_course_spec();
  std::vector<StudentRecord> cohort;
  for (int i = 0; i < 3; ++i) {
    StudentRecord s;
    s.student_id = "s" + std::to_string(i + 1);
    s.graduated = i == 1;
    cohort.push_back(s);
  }
  const GradeMatrix m = build_matrix(cohort, spec);
  const std::vector<std::size_t> idx = {2, 0};
  const GradeMatrix sub = rows_subset(m, idx);
  CHECK(sub.row_ids == std::vector<std::string>{"s3", "s1"});
  CHECK(sub.labels == std::vector<std::uint8_t>{0, 0});
  CHECK(sub.columns == m.columns);
  CHECK(sub.n() == 2);
}
