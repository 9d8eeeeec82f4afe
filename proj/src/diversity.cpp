#include "swstat/diversity.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "swstat/error.hpp"

namespace swstat::diversity {
namespace {

std::vector<double> proportions(const AbundanceVector& a) {
  const std::uint64_t total = a.total();
  if (total == 0) throw AnalysisError("empty ecosystem");
  std::vector<double> p;
  for (const auto& [label, count] : a.counts()) {
    if (count > 0) p.push_back(static_cast<double>(count) / static_cast<double>(total));
  }
  return p;
}

}  // namespace

AbundanceVector::AbundanceVector(std::vector<std::pair<std::string, std::uint64_t>> counts)
    : counts_(std::move(counts)) {
  std::set<std::string_view> seen;
  for (const auto& [label, count] : counts_) {
    if (!seen.insert(label).second) throw InputError("duplicate category '" + label + "'");
  }
}

AbundanceVector AbundanceVector::from_counts(std::span<const std::uint64_t> counts) {
  std::vector<std::pair<std::string, std::uint64_t>> labelled;
  labelled.reserve(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) labelled.emplace_back(std::to_string(i), counts[i]);
  return AbundanceVector(std::move(labelled));
}

std::uint64_t AbundanceVector::total() const {
  std::uint64_t t = 0;
  for (const auto& entry : counts_) t += entry.second;
  return t;
}

std::size_t AbundanceVector::richness() const {
  return static_cast<std::size_t>(std::count_if(
      counts_.begin(), counts_.end(), [](const auto& entry) { return entry.second > 0; }));
}

double shannon(const AbundanceVector& a) {
  double h = 0.0;
  for (double p : proportions(a)) h -= p * std::log(p);
  return std::clamp(h, 0.0, std::log(static_cast<double>(a.richness())));
}

double simpson(const AbundanceVector& a) {
  double d = 0.0;
  for (double p : proportions(a)) d += p * p;
  return std::clamp(d, 1.0 / static_cast<double>(a.richness()), 1.0);
}

double gini_simpson(const AbundanceVector& a) { return 1.0 - simpson(a); }

double evenness(const AbundanceVector& a) {
  const double h = shannon(a);
  const std::size_t k = a.richness();
  if (k == 1) return 1.0;
  return std::clamp(h / std::log(static_cast<double>(k)), 0.0, 1.0);
}

DiversityReport report(const AbundanceVector& a) {
  DiversityReport r;
  r.shannon = shannon(a);
  r.simpson = simpson(a);
  r.gini_simpson = 1.0 - r.simpson;
  r.evenness = evenness(a);
  r.richness = a.richness();
  r.total = a.total();
  return r;
}

}  // namespace swstat::diversity
