#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "attrition/errors.hpp"
#include "attrition/rng.hpp"

namespace attrition {

struct FoldSplit {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

/// Stratified k-fold split. Each class is shuffled once (seeded) and dealt
/// round-robin to folds, with a per-class starting offset so no fold
/// systematically collects the remainders of every class. Index lists come
/// back sorted; the union of test sets is a partition of 0..n-1.
inline std::vector<FoldSplit> kfold_split(std::span<const std::uint8_t> labels,
                                          std::size_t folds, std::uint64_t seed) {
  if (folds < 2) throw ConfigError("folds must be >= 2");
  if (labels.empty()) throw DataError("empty labels");

  std::map<std::uint8_t, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < labels.size(); ++i) by_class[labels[i]].push_back(i);
  for (const auto& [cls, idx] : by_class) {
    if (idx.size() < folds) {
      throw DataError("class " + std::to_string(static_cast<int>(cls)) + " has " +
                      std::to_string(idx.size()) + " members, need at least " +
                      std::to_string(folds));
    }
  }

  Rng rng(seed);
  std::vector<std::vector<std::size_t>> tests(folds);
  std::size_t class_ordinal = 0;
  for (auto& [cls, idx] : by_class) {
    rng.shuffle(idx);
    for (std::size_t pos = 0; pos < idx.size(); ++pos) {
      tests[(class_ordinal + pos) % folds].push_back(idx[pos]);
    }
    ++class_ordinal;
  }

  std::vector<FoldSplit> out(folds);
  std::vector<std::uint8_t> in_test(labels.size());
  for (std::size_t f = 0; f < folds; ++f) {
    std::sort(tests[f].begin(), tests[f].end());
    std::fill(in_test.begin(), in_test.end(), 0);
    for (const std::size_t i : tests[f]) in_test[i] = 1;
    out[f].test = std::move(tests[f]);
    out[f].train.reserve(labels.size() - out[f].test.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (!in_test[i]) out[f].train.push_back(i);
    }
  }
  return out;
}

}  // namespace attrition
