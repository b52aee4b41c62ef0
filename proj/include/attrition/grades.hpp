#pragma once

#include <array>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace attrition {

/// The twelve letter grades plus Missing for a required course never taken.
enum class LetterGrade : int {
  A = 0,
  AMinus,
  BPlus,
  B,
  BMinus,
  CPlus,
  C,
  CMinus,
  DPlus,
  D,
  DMinus,
  F,
  Missing,
};

inline constexpr std::size_t kLetterCount = 12;

inline constexpr std::array<std::string_view, kLetterCount> kLetterSymbols = {
    "A", "A-", "B+", "B", "B-", "C+", "C", "C-", "D+", "D", "D-", "F"};

/// Normalized grade scale: A=2.0 down to F=-2.0 in 0.3/0.4 steps.
inline constexpr std::array<double, kLetterCount> kLetterValues = {
    2.0, 1.7, 1.3, 1.0, 0.7, 0.3, 0.0, -0.3, -0.7, -1.0, -1.3, -2.0};

/// Encode a grade on the normalized scale. Total: Missing encodes as the F
/// value (-2.0), since an untaken required course blocks graduation just as a
/// failed one does.
inline constexpr double encode_grade(LetterGrade g) {
  if (g == LetterGrade::Missing) return kLetterValues[kLetterCount - 1];
  return kLetterValues[static_cast<std::size_t>(g)];
}

/// Symbol for a letter grade; Missing renders as the empty string.
inline constexpr std::string_view grade_symbol(LetterGrade g) {
  if (g == LetterGrade::Missing) return "";
  return kLetterSymbols[static_cast<std::size_t>(g)];
}

/// Inverse of encode_grade on the twelve letter values. Returns nullopt for
/// anything off the lattice (including the imputed -2.0, which maps to F).
inline std::optional<LetterGrade> letter_from_value(double v) {
  for (std::size_t i = 0; i < kLetterCount; ++i) {
    if (kLetterValues[i] == v) return static_cast<LetterGrade>(i);
  }
  return std::nullopt;
}

/// Case-insensitive parse of a grade cell. Empty or whitespace-only means
/// Missing; unrecognized marks (W, I, E, ...) yield nullopt so callers can
/// warn and impute.
inline std::optional<LetterGrade> parse_grade(std::string_view cell) {
  std::string t;
  for (char c : cell) {
    if (!std::isspace(static_cast<unsigned char>(c))) {
      t.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    }
  }
  if (t.empty()) return LetterGrade::Missing;
  for (std::size_t i = 0; i < kLetterCount; ++i) {
    if (t == kLetterSymbols[i]) return static_cast<LetterGrade>(i);
  }
  return std::nullopt;
}

/// Snap an arbitrary value to the nearest letter on the encoded lattice.
/// Ties resolve toward the higher grade.
inline LetterGrade nearest_letter(double v) {
  std::size_t best = 0;
  double best_gap = std::abs(v - kLetterValues[0]);
  for (std::size_t i = 1; i < kLetterCount; ++i) {
    const double gap = std::abs(v - kLetterValues[i]);
    if (gap < best_gap) {
      best_gap = gap;
      best = i;
    }
  }
  return static_cast<LetterGrade>(best);
}

/// Policy for merging repeated attempts at the same course.
enum class RepeatPolicy {
  KeepBest,  // keep the attempt with the highest encoded value
  KeepLast,
};

inline LetterGrade merge_attempts(LetterGrade existing, LetterGrade incoming,
                                  RepeatPolicy policy = RepeatPolicy::KeepBest) {
  if (policy == RepeatPolicy::KeepLast) return incoming;
  return encode_grade(incoming) > encode_grade(existing) ? incoming : existing;
}

}  // namespace attrition
