#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <vector>

#include <attrition/cluster_classifier.hpp>
#include <attrition/rng.hpp>

#include "support/helpers.hpp"

using namespace attrition;
using testutil::fixed_model;

TEST_CASE("graduation fractions count exactly", "[clusterclf]") {
  const KMeansModel clustering = fixed_model({{0.0}}, {0, 0, 0, 0});
  const std::vector<std::uint8_t> labels = {1, 1, 1, 0};
  const ClusterClassifier model = make_cluster_classifier(clustering, labels);
  REQUIRE(model.grad_fraction.size() == 1);
  CHECK(model.grad_fraction[0] == 0.75);
  CHECK(model.sizes == std::vector<std::size_t>{4});
}

TEST_CASE("an all-graduate cluster scores one", "[clusterclf]") {
  const KMeansModel clustering = fixed_model({{0.0}}, {0, 0, 0});
  const std::vector<std::uint8_t> labels = {1, 1, 1};
  const ClusterClassifier model = make_cluster_classifier(clustering, labels);
  CHECK(model.grad_fraction[0] == 1.0);
}

TEST_CASE("fractions are computed per cluster", "[clusterclf]") {
  const KMeansModel clustering = fixed_model({{0.0}, {10.0}}, {0, 0, 1, 1});
  const std::vector<std::uint8_t> labels = {1, 0, 0, 0};
  const ClusterClassifier model = make_cluster_classifier(clustering, labels);
  REQUIRE(model.grad_fraction.size() == 2);
  CHECK(model.grad_fraction[0] == 0.5);
  CHECK(model.grad_fraction[1] == 0.0);
  CHECK(model.sizes == std::vector<std::size_t>{2, 2});
}

TEST_CASE("a point scores its nearest cluster's fraction", "[clusterclf]") {
  const KMeansModel clustering = fixed_model({{0.0}, {10.0}}, {0, 0, 1, 1});
  const std::vector<std::uint8_t> labels = {1, 1, 1, 0};
  const ClusterClassifier model = make_cluster_classifier(clustering, labels);

  const std::vector<double> near_first = {1.0};
  const std::vector<double> near_second = {9.0};
  CHECK(model.predict_score(near_first) == 1.0);
  CHECK(model.predict_score(near_second) == 0.5);
}

TEST_CASE("the decision threshold is inclusive", "[clusterclf]") {
  const KMeansModel clustering = fixed_model({{0.0}, {10.0}}, {0, 0, 1, 1});
  const std::vector<std::uint8_t> labels = {1, 0, 0, 0};  // fractions 0.5 and 0.0
  const ClusterClassifier model = make_cluster_classifier(clustering, labels);

  Matrix points(2, 1);
  points.at(0, 0) = 0.0;   // fraction 0.5
  points.at(1, 0) = 10.0;  // fraction 0.0
  CHECK(model.predict_rows(points) == std::vector<std::uint8_t>{1, 0});
}

TEST_CASE("equidistant points resolve to the lowest cluster index", "[clusterclf]") {
  const KMeansModel clustering = fixed_model({{0.0}, {10.0}}, {0, 0, 1, 1});
  const std::vector<std::uint8_t> labels = {0, 0, 1, 1};  // fractions 0.0 and 1.0
  const ClusterClassifier model = make_cluster_classifier(clustering, labels);

  const std::vector<double> midpoint = {5.0};
  CHECK(model.predict_score(midpoint) == 0.0);
}

TEST_CASE("fractions ignore training row order", "[clusterclf]") {
  const std::vector<std::uint32_t> assign = {0, 1, 0, 1, 0, 1, 1, 0};
  const std::vector<std::uint8_t> labels = {1, 0, 1, 1, 0, 0, 1, 1};
  const ClusterClassifier a =
      make_cluster_classifier(fixed_model({{0.0}, {10.0}}, assign), labels);

  std::vector<std::size_t> perm = {7, 2, 5, 0, 3, 6, 1, 4};
  std::vector<std::uint32_t> assign_p(assign.size());
  std::vector<std::uint8_t> labels_p(labels.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    assign_p[i] = assign[perm[i]];
    labels_p[i] = labels[perm[i]];
  }
  const ClusterClassifier b =
      make_cluster_classifier(fixed_model({{0.0}, {10.0}}, assign_p), labels_p);

  CHECK(a.grad_fraction == b.grad_fraction);
  CHECK(a.sizes == b.sizes);
}

TEST_CASE("scores take at most k distinct values", "[clusterclf]") {
  const Matrix x = testutil::gaussian_blobs({{-2.0, 0.0}, {2.0, 0.0}, {0.0, 3.0}},
                                            20, 0.6, 48);
  std::vector<std::uint8_t> labels(60);
  Rng rng(9);
  for (auto& v : labels) v = rng.bernoulli(0.5) ? 1 : 0;
  labels[0] = 1;
  labels[1] = 0;

  ClusterClassifierConfig cfg;
  cfg.kmeans.k = 3;
  cfg.kmeans.seed = 2;
  const ClusterClassifier model = fit_cluster_classifier(x, labels, cfg);

  const std::vector<double> scores = model.score_rows(x);
  std::set<double> distinct(scores.begin(), scores.end());
  CHECK(distinct.size() <= 3);
  for (const double s : scores) {
    CHECK(s >= 0.0);
    CHECK(s <= 1.0);
  }
}

TEST_CASE("label length must match the clustering", "[clusterclf]") {
  const KMeansModel clustering = fixed_model({{0.0}}, {0, 0, 0});
  const std::vector<std::uint8_t> labels = {1, 0};
  CHECK_THROWS_AS(make_cluster_classifier(clustering, labels), ConfigError);
}

TEST_CASE("a cluster with no training members is a data error", "[clusterclf]") {
  const KMeansModel clustering = fixed_model({{0.0}, {10.0}}, {0, 0, 0});
  const std::vector<std::uint8_t> labels = {1, 0, 1};
  CHECK_THROWS_MATCHES(make_cluster_classifier(clustering, labels), DataError,
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::ContainsSubstring("no training members")));
}

TEST_CASE("fitting end to end separates planted groups", "[clusterclf]") {
  const Matrix x = testutil::gaussian_blobs({{-3.0}, {3.0}}, 50, 0.8, 77);
  std::vector<std::uint8_t> labels(100, 0);
  for (std::size_t i = 50; i < 100; ++i) labels[i] = 1;

  ClusterClassifierConfig cfg;
  cfg.kmeans.k = 2;
  cfg.kmeans.seed = 1;
  const ClusterClassifier model = fit_cluster_classifier(x, labels, cfg);

  const std::vector<std::uint8_t> preds = model.predict_rows(x);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    correct += preds[i] == labels[i] ? 1 : 0;
  }
  CHECK(correct >= 95);
}
