// End-to-end tour of the library on a small generated department:
// generate, pick k, compare classifiers, rank bottlenecks.

#include <iostream>

#include <attrition/attrition.hpp>

using namespace attrition;

int main() {
  CohortSpec spec = default_department_spec();
  spec.n = 400;
  spec.seed = 42;

  const auto records = generate_cohort(spec);
  const CurriculumSpec curriculum = curriculum_of(spec);
  const GradeMatrix matrix = build_matrix(records, curriculum);
  std::cout << "cohort: " << matrix.n() << " students x " << matrix.d() << " courses\n";

  SelectKConfig sk;
  sk.k_min = 2;
  sk.k_max = 4;
  sk.seed = spec.seed;
  const SelectKResult selection = select_k(matrix, sk);
  for (const KScore& s : selection.per_k) {
    std::cout << "  k=" << s.k << "  mean CH=" << s.mean_ch << "\n";
  }
  std::cout << "chosen k: " << selection.chosen_k << "\n";

  CompareConfig cc;
  cc.kmeans.k = selection.chosen_k;
  cc.seed = spec.seed;
  const CompareResult comparison = compare_classifiers(matrix, curriculum, cc);
  for (const EvalReport& e : comparison.entries) {
    std::cout << e.classifier << "/" << e.feature_set << ": accuracy=" << e.metrics.accuracy
              << " auc=" << e.roc.auc << "\n";
  }

  KMeansConfig kc;
  kc.k = selection.chosen_k;
  kc.seed = spec.seed;
  const KMeansModel model = kmeans_fit(matrix, kc);
  const auto ranked = bottleneck_rank(matrix, curriculum, model);
  std::cout << "top bottlenecks:\n";
  for (std::size_t i = 0; i < 3 && i < ranked.size(); ++i) {
    std::cout << "  " << ranked[i].course_id << " (" << division_name(ranked[i].division)
              << ", position " << ranked[i].pathway_position
              << ") separation=" << ranked[i].separation << "\n";
  }

  const auto profiles = cluster_profile(records, model);
  for (const ClusterProfile& p : profiles) {
    std::cout << "cluster " << p.cluster << ": size=" << p.size
              << " grad_rate=" << p.graduation_rate
              << " mean_semesters=" << p.mean_semesters << "\n";
  }
  return 0;
}
