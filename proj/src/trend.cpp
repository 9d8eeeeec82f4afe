#include "swstat/trend.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "swstat/error.hpp"

namespace swstat::trend {
namespace {

void check_series(std::span<const double> series) {
  if (series.size() < 2) throw AnalysisError("series too short");
  for (double v : series) {
    if (!std::isfinite(v)) throw AnalysisError("non-finite value in series");
  }
}

int sgn(double d) { return (d > 0.0) - (d < 0.0); }

std::int64_t pair_count(std::size_t n) {
  return static_cast<std::int64_t>(n) * static_cast<std::int64_t>(n - 1) / 2;
}

}  // namespace

std::string_view to_string(Method m) {
  return m == Method::exact ? "exact" : "normal";
}

std::string_view to_string(Decision d) {
  switch (d) {
    case Decision::upward:
      return "upward";
    case Decision::downward:
      return "downward";
    case Decision::no_trend_not_rejected:
      break;
  }
  return "no_trend_not_rejected";
}

std::int64_t mk_s(std::span<const double> series) {
  check_series(series);
  std::int64_t s = 0;
  for (std::size_t i = 0; i + 1 < series.size(); ++i) {
    for (std::size_t j = i + 1; j < series.size(); ++j) s += sgn(series[j] - series[i]);
  }
  return s;
}

std::vector<std::size_t> tie_groups(std::span<const double> series) {
  std::vector<double> x(series.begin(), series.end());
  std::sort(x.begin(), x.end());
  std::vector<std::size_t> groups;
  for (std::size_t i = 0; i < x.size();) {
    std::size_t j = i + 1;
    while (j < x.size() && x[j] == x[i]) ++j;
    if (j - i > 1) groups.push_back(j - i);
    i = j;
  }
  return groups;
}

double mk_variance(std::span<const double> series) {
  check_series(series);
  auto term = [](double t) { return t * (t - 1.0) * (2.0 * t + 5.0); };
  double v = term(static_cast<double>(series.size()));
  for (std::size_t t : tie_groups(series)) v -= term(static_cast<double>(t));
  return std::max(v / 18.0, 0.0);
}

std::vector<std::uint64_t> inversion_counts(std::size_t n) {
  if (n > 20) throw AnalysisError("exact distribution limited to n <= 20");
  // counts_m[k] = #perms of m items with k inversions; inserting item m+1
  // adds between 0 and m inversions.
  std::vector<std::uint64_t> counts{1};
  for (std::size_t m = 1; m < n; ++m) {
    std::vector<std::uint64_t> next(counts.size() + m, 0);
    for (std::size_t k = 0; k < counts.size(); ++k) {
      for (std::size_t add = 0; add <= m; ++add) next[k + add] += counts[k];
    }
    counts = std::move(next);
  }
  return counts;
}

PValues exact_p_values(std::size_t n, std::int64_t s) {
  if (n < 2) throw AnalysisError("series too short");
  const auto counts = inversion_counts(n);
  const std::int64_t max_s = pair_count(n);
  if (s < -max_s || s > max_s || (max_s - s) % 2 != 0) {
    throw AnalysisError("S is not attainable for this series length");
  }
  // S = max_s - 2 * inversions.
  const auto inv_of = [&](std::int64_t sv) { return static_cast<std::size_t>((max_s - sv) / 2); };
  const std::size_t inv = inv_of(s);
  const std::size_t inv_mirror = inv_of(-s);

  std::uint64_t total = 0, le = 0, ge = 0, extreme = 0;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    total += counts[k];
    if (k <= inv) le += counts[k];  // S' >= S
    if (k >= inv) ge += counts[k];  // S' <= S
    if (k <= std::min(inv, inv_mirror) || k >= std::max(inv, inv_mirror)) extreme += counts[k];
  }
  const auto denom = static_cast<double>(total);
  return PValues{static_cast<double>(extreme) / denom, static_cast<double>(le) / denom,
                 static_cast<double>(ge) / denom};
}

double normal_sf(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

PValues normal_p_values(std::int64_t s, double var_s, double* z_out) {
  if (!(var_s > 0.0)) {
    if (z_out) *z_out = 0.0;
    return PValues{};
  }
  const double sd = std::sqrt(var_s);
  double z = 0.0;
  if (s > 0) z = static_cast<double>(s - 1) / sd;
  if (s < 0) z = static_cast<double>(s + 1) / sd;
  if (z_out) *z_out = z;
  return PValues{std::min(1.0, 2.0 * normal_sf(std::abs(z))), normal_sf(z), normal_sf(-z)};
}

TrendResult mk_test(std::span<const double> series, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw AnalysisError("invalid alpha");
  check_series(series);

  TrendResult r;
  r.alpha = alpha;
  r.s = mk_s(series);
  r.var_s = mk_variance(series);
  if (!(r.var_s > 0.0)) return r;  // every value tied: nothing to test

  r.tau = kendall_tau_b(series);
  const bool ties = !tie_groups(series).empty();
  PValues p;
  if (series.size() <= kExactMaxLength && !ties) {
    r.method = Method::exact;
    p = exact_p_values(series.size(), r.s);
    (void)normal_p_values(r.s, r.var_s, &r.z);
  } else {
    r.method = Method::normal;
    p = normal_p_values(r.s, r.var_s, &r.z);
  }
  r.p_two_sided = p.two_sided;
  r.p_upward = p.upward;
  r.p_downward = p.downward;

  if (r.s > 0 && r.p_upward <= alpha) r.decision = Decision::upward;
  if (r.s < 0 && r.p_downward <= alpha) r.decision = Decision::downward;
  return r;
}

double kendall_tau_b(std::span<const double> series) {
  check_series(series);
  const auto n0 = static_cast<double>(pair_count(series.size()));
  double nt = 0.0;
  for (std::size_t t : tie_groups(series)) {
    nt += static_cast<double>(t) * static_cast<double>(t - 1) / 2.0;
  }
  if (!(n0 - nt > 0.0)) throw AnalysisError("tau undefined");
  const double tau = static_cast<double>(mk_s(series)) / std::sqrt(n0 * (n0 - nt));
  return std::clamp(tau, -1.0, 1.0);
}

double sen_slope(std::span<const double> series) {
  check_series(series);
  std::vector<double> slopes;
  slopes.reserve(static_cast<std::size_t>(pair_count(series.size())));
  for (std::size_t i = 0; i + 1 < series.size(); ++i) {
    for (std::size_t j = i + 1; j < series.size(); ++j) {
      slopes.push_back((series[j] - series[i]) / static_cast<double>(j - i));
    }
  }
  const std::size_t mid = slopes.size() / 2;
  std::nth_element(slopes.begin(), slopes.begin() + static_cast<std::ptrdiff_t>(mid), slopes.end());
  const double upper = slopes[mid];
  if (slopes.size() % 2 == 1) return upper;
  const double lower = *std::max_element(slopes.begin(), slopes.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

}  // namespace swstat::trend
