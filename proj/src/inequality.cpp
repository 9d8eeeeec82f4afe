#include "swstat/inequality.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "swstat/error.hpp"

namespace swstat::ineq {
namespace {

// Validates the distribution and returns its arithmetic mean.
double checked_mean(std::span<const double> values) {
  if (values.empty()) throw AnalysisError("empty input");
  double sum = 0.0;
  for (double v : values) {
    if (!std::isfinite(v)) throw AnalysisError("non-finite value");
    if (v < 0.0) throw AnalysisError("negative value");
    sum += v;
  }
  if (!(sum > 0.0)) throw AnalysisError("degenerate mean");
  return sum / static_cast<double>(values.size());
}

bool all_equal(std::span<const double> values) {
  return std::adjacent_find(values.begin(), values.end(),
                            std::not_equal_to<>()) == values.end();
}

std::vector<double> sorted_copy(std::span<const double> values) {
  std::vector<double> out(values.begin(), values.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

double gini(std::span<const double> values) {
  checked_mean(values);
  if (all_equal(values)) return 0.0;
  const auto x = sorted_copy(values);
  const auto n = static_cast<double>(x.size());
  // sum_i (2i - n - 1) x_(i) / (n * sum x), i 1-based over ascending order.
  double weighted = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    weighted += (2.0 * static_cast<double>(i + 1) - n - 1.0) * x[i];
    total += x[i];
  }
  return std::clamp(weighted / (n * total), 0.0, (n - 1.0) / n);
}

double pietra(std::span<const double> values) {
  const double mu = checked_mean(values);
  if (all_equal(values)) return 0.0;
  double dev = 0.0;
  for (double v : values) dev += std::abs(v - mu);
  const auto n = static_cast<double>(values.size());
  return std::clamp(dev / (2.0 * n * mu), 0.0, (n - 1.0) / n);
}

double theil(std::span<const double> values) {
  const double mu = checked_mean(values);
  if (all_equal(values)) return 0.0;
  double acc = 0.0;
  for (double v : values) {
    if (v == 0.0) continue;
    const double r = v / mu;
    acc += r * std::log(r);
  }
  const auto n = static_cast<double>(values.size());
  return std::clamp(acc / n, 0.0, std::log(n));
}

double atkinson(std::span<const double> values, double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw AnalysisError("invalid aversion parameter");
  }
  const double mu = checked_mean(values);
  if (all_equal(values)) return 0.0;
  const bool has_zero = std::find(values.begin(), values.end(), 0.0) != values.end();
  if (epsilon >= 1.0 && has_zero) return 1.0;

  const auto n = static_cast<double>(values.size());
  double ede = 0.0;  // equally-distributed equivalent, relative to mu
  if (epsilon == 1.0) {
    double log_sum = 0.0;
    for (double v : values) log_sum += std::log(v / mu);
    ede = std::exp(log_sum / n);
  } else {
    const double power = 1.0 - epsilon;
    double acc = 0.0;
    for (double v : values) acc += std::pow(v / mu, power);
    ede = std::pow(acc / n, 1.0 / power);
  }
  return std::clamp(1.0 - ede, 0.0, 1.0);
}

std::vector<std::pair<double, double>> lorenz_points(std::span<const double> values) {
  checked_mean(values);
  const auto x = sorted_copy(values);
  const double total = std::accumulate(x.begin(), x.end(), 0.0);
  const auto n = static_cast<double>(x.size());

  std::vector<std::pair<double, double>> points;
  points.reserve(x.size() + 1);
  points.emplace_back(0.0, 0.0);
  double cum = 0.0;
  for (std::size_t k = 1; k < x.size(); ++k) {
    cum += x[k - 1];
    const double p = static_cast<double>(k) / n;
    points.emplace_back(p, std::min(cum / total, p));
  }
  points.emplace_back(1.0, 1.0);
  return points;
}

InequalityReport report(std::span<const double> values, double epsilon) {
  InequalityReport r;
  r.gini = gini(values);
  r.pietra = pietra(values);
  r.theil = theil(values);
  r.atkinson = atkinson(values, epsilon);
  r.epsilon = epsilon;
  r.n = values.size();
  return r;
}

}  // namespace swstat::ineq
