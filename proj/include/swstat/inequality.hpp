#pragma once

#include <span>
#include <utility>
#include <vector>

namespace swstat::ineq {

inline constexpr double kDefaultAversion = 0.5;

/// Summary of one distribution. Index ranges: gini, pietra in [0,1), theil >= 0,
/// atkinson in [0,1].
struct InequalityReport {
  double gini = 0.0;
  double pietra = 0.0;
  double theil = 0.0;
  double atkinson = 0.0;
  double epsilon = kDefaultAversion;
  std::size_t n = 0;
};

// All index functions take nonnegative, finite measurements with a positive
// mean. Violations throw AnalysisError with one of "empty input",
// "negative value", "non-finite value" or "degenerate mean".
// A single measurement is perfectly equal by definition and yields 0.

/// Mean absolute difference over all ordered pairs, halved and normalized by the
/// mean. Uses the n^2 denominator so the maximum is (n-1)/n.
[[nodiscard]] double gini(std::span<const double> values);

/// Ricci-Schutz / Pietra index: half the relative mean absolute deviation.
[[nodiscard]] double pietra(std::span<const double> values);

/// Theil T index, with 0 ln 0 = 0.
[[nodiscard]] double theil(std::span<const double> values);

/// Atkinson index for aversion epsilon > 0. epsilon == 1 uses the geometric mean.
/// Throws AnalysisError("invalid aversion parameter") for epsilon <= 0.
[[nodiscard]] double atkinson(std::span<const double> values,
                              double epsilon = kDefaultAversion);

/// Lorenz curve: n+1 points (k/n, share of the k smallest values).
[[nodiscard]] std::vector<std::pair<double, double>> lorenz_points(
    std::span<const double> values);

[[nodiscard]] InequalityReport report(std::span<const double> values,
                                      double epsilon = kDefaultAversion);

}  // namespace swstat::ineq
