#pragma once

// Independent reference implementations used only by the tests. They follow
// the textbook definitions directly and share no code with the library.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <span>
#include <vector>

namespace swstat::testing {

// Gini by the O(n^2) definition: sum_i sum_j |x_i - x_j| / (2 n^2 mu).
inline double gini_pairwise(std::span<const double> x) {
  const double n = static_cast<double>(x.size());
  const double mu = std::accumulate(x.begin(), x.end(), 0.0) / n;
  long double acc = 0.0L;
  for (double a : x) {
    for (double b : x) acc += std::fabs(static_cast<long double>(a) - b);
  }
  return static_cast<double>(acc / (2.0L * n * n * mu));
}

// Trapezoidal area under a polyline of (x, y) points.
template <typename Points>
double trapezoid_area(const Points& pts) {
  double area = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    area += (pts[i].first - pts[i - 1].first) * (pts[i].second + pts[i - 1].second) / 2.0;
  }
  return area;
}

inline std::int64_t mk_s_direct(std::span<const int> x) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) s += (x[j] > x[i]) - (x[j] < x[i]);
  }
  return s;
}

// Null distribution of S by enumerating all n! orderings: S value -> count.
inline std::map<std::int64_t, std::uint64_t> enumerate_s_distribution(int n) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::map<std::int64_t, std::uint64_t> dist;
  do {
    ++dist[mk_s_direct(perm)];
  } while (std::next_permutation(perm.begin(), perm.end()));
  return dist;
}

struct BruteP {
  double two_sided;
  double upward;
  double downward;
};

inline BruteP brute_p(const std::map<std::int64_t, std::uint64_t>& dist, std::int64_t s) {
  std::uint64_t total = 0, ge = 0, le = 0, extreme = 0;
  for (const auto& [value, count] : dist) {
    total += count;
    if (value >= s) ge += count;
    if (value <= s) le += count;
    if (std::llabs(value) >= std::llabs(s)) extreme += count;
  }
  const double d = static_cast<double>(total);
  return {static_cast<double>(extreme) / d, static_cast<double>(ge) / d, static_cast<double>(le) / d};
}

inline std::vector<double> random_distribution(std::mt19937_64& rng, std::size_t max_n,
                                               bool allow_zeros = true) {
  std::uniform_int_distribution<std::size_t> size(1, max_n);
  std::lognormal_distribution<double> value(2.0, 1.5);
  std::bernoulli_distribution zero(0.1);
  std::vector<double> x(size(rng));
  for (auto& v : x) v = (allow_zeros && zero(rng)) ? 0.0 : value(rng);
  if (std::all_of(x.begin(), x.end(), [](double v) { return v == 0.0; })) x.front() = 1.0;
  return x;
}

}  // namespace swstat::testing
