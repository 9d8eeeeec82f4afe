#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace swstat::trend {

inline constexpr double kDefaultAlpha = 0.01;

/// Largest series length for which the exact null distribution of S is used.
inline constexpr std::size_t kExactMaxLength = 10;

enum class Method { exact, normal };

enum class Decision { no_trend_not_rejected, upward, downward };

[[nodiscard]] std::string_view to_string(Method m);
[[nodiscard]] std::string_view to_string(Decision d);

struct PValues {
  double two_sided = 1.0;
  double upward = 1.0;    // H1: increasing
  double downward = 1.0;  // H1: decreasing
};

struct TrendResult {
  std::int64_t s = 0;
  double var_s = 0.0;
  double z = 0.0;
  double tau = 0.0;  // 0 when every value is tied
  double p_two_sided = 1.0;
  double p_upward = 1.0;
  double p_downward = 1.0;
  Method method = Method::normal;
  double alpha = kDefaultAlpha;
  Decision decision = Decision::no_trend_not_rejected;
};

// Series arguments are ordered observations; index order is the time axis.
// Every operation needs at least two finite values and throws
// AnalysisError("series too short") otherwise.

/// Mann-Kendall S = sum over i<j of sgn(x_j - x_i).
[[nodiscard]] std::int64_t mk_s(std::span<const double> series);

/// Tie-corrected variance of S under H0.
[[nodiscard]] double mk_variance(std::span<const double> series);

/// Sizes of the groups of exactly equal values (groups of size 1 omitted).
[[nodiscard]] std::vector<std::size_t> tie_groups(std::span<const double> series);

/// Number of permutations of n items with k inversions, k = 0..n(n-1)/2.
/// Computed by the standard insertion recursion; n <= 20.
[[nodiscard]] std::vector<std::uint64_t> inversion_counts(std::size_t n);

/// Exact permutation p-values of S for n distinct values.
[[nodiscard]] PValues exact_p_values(std::size_t n, std::int64_t s);

/// Normal approximation with continuity correction. z is returned through `z_out`.
[[nodiscard]] PValues normal_p_values(std::int64_t s, double var_s, double* z_out = nullptr);

/// Standard normal upper tail 1 - Phi(z), evaluated via erfc.
[[nodiscard]] double normal_sf(double z);

/// Full test. Exact method for n <= kExactMaxLength without ties, normal otherwise.
/// The decision uses the one-sided p-value matching the sign of S.
/// Throws AnalysisError("invalid alpha") unless 0 < alpha < 1.
[[nodiscard]] TrendResult mk_test(std::span<const double> series,
                                  double alpha = kDefaultAlpha);

/// Kendall tau-b against the (untied) time index.
/// Throws AnalysisError("tau undefined") when all values are tied.
[[nodiscard]] double kendall_tau_b(std::span<const double> series);

/// Sen's slope: median of (x_j - x_i) / (j - i) over i < j.
[[nodiscard]] double sen_slope(std::span<const double> series);

}  // namespace swstat::trend
