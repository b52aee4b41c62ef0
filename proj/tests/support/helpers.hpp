#pragma once

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <attrition/attrition.hpp>

#include "support/oracles.hpp"

namespace testutil {

namespace fs = std::filesystem;

/// Unique scratch directory, removed on destruction.
struct TempDir {
  fs::path path;

  TempDir() {
    std::string tmpl = (fs::temp_directory_path() / "attrition_test_XXXXXX").string();
    if (::mkdtemp(tmpl.data()) == nullptr) {
      throw std::runtime_error("mkdtemp failed");
    }
    path = tmpl;
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string str() const { return path.string(); }
  fs::path operator/(const std::string& name) const { return path / name; }
};

inline std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void spit(const fs::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary);
  out << content;
  if (!out) throw std::runtime_error("cannot write " + p.string());
}

inline std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      lines.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) lines.push_back(cur);
  return lines;
}

inline std::string cli_path() {
  const char* p = std::getenv("ATTRITION_CLI");
  if (p == nullptr || *p == '\0') {
    throw std::runtime_error("ATTRITION_CLI is not set; run through ctest");
  }
  return p;
}

struct CliResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr interleaved
};

/// Run the CLI with the given argument string, capturing combined output.
inline CliResult run_cli(const std::string& args) {
  static int counter = 0;
  const fs::path cap = fs::temp_directory_path() /
                       ("attrition_cli_out_" + std::to_string(::getpid()) + "_" +
                        std::to_string(counter++) + ".txt");
  const std::string cmd =
      cli_path() + " " + args + " > " + cap.string() + " 2>&1";
  const int raw = std::system(cmd.c_str());

  CliResult r;
  if (WIFEXITED(raw)) r.exit_code = WEXITSTATUS(raw);
  std::ifstream in(cap, std::ios::binary);
  if (in) {
    std::ostringstream ss;
    ss << in.rdbuf();
    r.output = ss.str();
  }
  std::error_code ec;
  fs::remove(cap, ec);
  return r;
}

/// Matrix filled with k isotropic Gaussian blobs, `per` points each, in
/// center order (labels = blob index).
inline attrition::Matrix gaussian_blobs(const std::vector<std::vector<double>>& centers,
                                        std::size_t per, double stddev,
                                        std::uint64_t seed) {
  const std::size_t d = centers.front().size();
  attrition::Matrix m(centers.size() * per, d);
  attrition::Rng rng(seed);
  std::size_t r = 0;
  for (const auto& c : centers) {
    for (std::size_t i = 0; i < per; ++i, ++r) {
      for (std::size_t j = 0; j < d; ++j) {
        m.at(r, j) = c[j] + stddev * rng.normal();
      }
    }
  }
  return m;
}

inline attrition::Matrix uniform_matrix(std::size_t rows, std::size_t cols,
                                        double lo, double hi, std::uint64_t seed) {
  attrition::Matrix m(rows, cols);
  attrition::Rng rng(seed);
  for (double& v : m.cells) v = lo + (hi - lo) * rng.uniform();
  return m;
}

inline oracle::Rows to_rows(const attrition::Matrix& m) {
  oracle::Rows rows(m.rows, std::vector<double>(m.cols, 0.0));
  for (std::size_t r = 0; r < m.rows; ++r) {
    for (std::size_t c = 0; c < m.cols; ++c) rows[r][c] = m.at(r, c);
  }
  return rows;
}

/// Hand-built clustering over explicit centroids, for classifier and ranking
/// tests that need assignments pinned rather than fit.
inline attrition::KMeansModel fixed_model(const std::vector<std::vector<double>>& centroids,
                                          const std::vector<std::uint32_t>& assignments) {
  attrition::KMeansModel model;
  model.k = centroids.size();
  model.centroids = attrition::Matrix(centroids.size(), centroids.front().size());
  for (std::size_t r = 0; r < centroids.size(); ++r) {
    for (std::size_t c = 0; c < centroids[r].size(); ++c) {
      model.centroids.at(r, c) = centroids[r][c];
    }
  }
  model.assignments = assignments;
  return model;
}

/// Two-group curriculum spec for small pipeline tests: `d` courses, the first
/// `lower` of them lower-division, strong grade separation on every course.
inline attrition::CohortSpec small_cohort_spec(std::size_t n, std::size_t d,
                                               std::size_t lower) {
  attrition::CohortSpec spec;
  spec.n = n;
  spec.graduate_fraction = 0.6;
  spec.major_name = "testmajor";
  for (std::size_t i = 0; i < d; ++i) {
    attrition::SynthCourse c;
    c.course_id = "T" + std::to_string(101 + i);
    c.division = i < lower ? attrition::Division::Lower : attrition::Division::Upper;
    c.grad = {1.0, 0.5, 0.02};
    c.nongrad = {-0.8, 0.6, 0.30};
    spec.courses.push_back(c);
  }
  spec.grad_meta = {12.0, 2.0, 120.0, 8.0, 12.0, 9.0};
  spec.nongrad_meta = {4.0, 1.5, 45.0, 15.0, 9.0, 8.0};
  return spec;
}

}  // namespace testutil
