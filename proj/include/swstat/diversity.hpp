#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace swstat::diversity {

/// Composition of a software "ecosystem": how many entities fall in each category.
class AbundanceVector {
 public:
  AbundanceVector() = default;

  /// Throws InputError on a duplicate category label.
  explicit AbundanceVector(std::vector<std::pair<std::string, std::uint64_t>> counts);

  /// Unlabelled counts; categories are named "0", "1", ...
  static AbundanceVector from_counts(std::span<const std::uint64_t> counts);

  [[nodiscard]] const std::vector<std::pair<std::string, std::uint64_t>>& counts() const {
    return counts_;
  }
  [[nodiscard]] std::uint64_t total() const;
  [[nodiscard]] std::size_t richness() const;

 private:
  std::vector<std::pair<std::string, std::uint64_t>> counts_;
};

// Indices use natural logs and ignore zero-count categories. Each throws
// AnalysisError("empty ecosystem") when the total count is zero.

/// H = -sum p ln p.
[[nodiscard]] double shannon(const AbundanceVector& a);
/// D = sum p^2.
[[nodiscard]] double simpson(const AbundanceVector& a);
[[nodiscard]] double gini_simpson(const AbundanceVector& a);
/// Pielou J = H / ln(richness); 1 for a single category.
[[nodiscard]] double evenness(const AbundanceVector& a);

struct DiversityReport {
  double shannon = 0.0;
  double simpson = 0.0;
  double gini_simpson = 0.0;
  double evenness = 0.0;
  std::size_t richness = 0;
  std::uint64_t total = 0;
};

[[nodiscard]] DiversityReport report(const AbundanceVector& a);

}  // namespace swstat::diversity
