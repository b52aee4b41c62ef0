#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <vector>

#include <attrition/kmeans.hpp>
#include <attrition/rng.hpp>
#include <attrition/validity.hpp>

#include "support/helpers.hpp"
#include "support/oracles.hpp"

using namespace attrition;

namespace {

Matrix one_dim(const std::vector<double>& xs) {
  Matrix m(xs.size(), 1);
  for (std::size_t i = 0; i < xs.size(); ++i) m.at(i, 0) = xs[i];
  return m;
}

}  // namespace

TEST_CASE("the two-pair example scores exactly two hundred", "[validity]") {
  const Matrix x = one_dim({0.0, 1.0, 10.0, 11.0});
  const std::vector<std::uint32_t> assign = {0, 0, 1, 1};
  CHECK(ch_index(x, assign, 2) == 200.0);
}

TEST_CASE("zero within-cluster scatter scores infinite", "[validity]") {
  const Matrix x = one_dim({0.0, 0.0, 10.0, 10.0});
  const std::vector<std::uint32_t> assign = {0, 0, 1, 1};
  CHECK(std::isinf(ch_index(x, assign, 2)));
  CHECK(ch_index(x, assign, 2) > 0.0);
}

TEST_CASE("the score requires at least two and at most n minus one clusters", "[validity]") {
  const Matrix x = one_dim({0.0, 1.0, 2.0, 3.0});
  const std::vector<std::uint32_t> one(4, 0);
  CHECK_THROWS_AS(ch_index(x, one, 1), ConfigError);
  const std::vector<std::uint32_t> four = {0, 1, 2, 3};
  CHECK_THROWS_AS(ch_index(x, four, 4), ConfigError);
  const std::vector<std::uint32_t> three = {0, 1, 2, 2};
  CHECK_NOTHROW(ch_index(x, three, 3));
}

TEST_CASE("bad assignments are rejected", "[validity]") {
  const Matrix x = one_dim({0.0, 1.0, 2.0, 3.0});

  const std::vector<std::uint32_t> short_assign = {0, 1};
  CHECK_THROWS_AS(ch_index(x, short_assign, 2), ConfigError);

  const std::vector<std::uint32_t> out_of_range = {0, 1, 2, 1};
  CHECK_THROWS_AS(ch_index(x, out_of_range, 2), DataError);

  const std::vector<std::uint32_t> leaves_empty = {0, 0, 0, 0};
  CHECK_THROWS_AS(ch_index(x, leaves_empty, 2), DataError);
}

TEST_CASE("the index matches a definitional reference on random inputs", "[validity]") {
  Rng rng(2718);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 10 + rng.below(41);
    const std::size_t d = 1 + rng.below(5);
    const std::size_t k = 2 + rng.below(2);

    const Matrix x = testutil::uniform_matrix(n, d, -3.0, 3.0, 4000 + trial);
    std::vector<std::uint32_t> assign(n);
    for (std::size_t i = 0; i < n; ++i) {
      assign[i] = i < k ? static_cast<std::uint32_t>(i)
                        : static_cast<std::uint32_t>(rng.below(k));
    }

    std::vector<int> assign_int(assign.begin(), assign.end());
    const double expect = oracle::ch_definitional(testutil::to_rows(x), assign_int,
                                                  static_cast<int>(k));
    const double got = ch_index(x, assign, k);
    CHECK_THAT(got, Catch::Matchers::WithinAbs(expect, 1e-9));
  }
}

TEST_CASE("a fitted model scores through the overload", "[validity]") {
  const Matrix x = testutil::gaussian_blobs({{-4.0}, {4.0}}, 30, 0.5, 11);
  KMeansConfig cfg;
  cfg.k = 2;
  cfg.seed = 1;
  const KMeansModel model = kmeans_fit(x, cfg);
  CHECK(ch_index(x, model) == ch_index(x, model.assignments, model.k));
  CHECK(ch_index(x, model) > 100.0);
}
