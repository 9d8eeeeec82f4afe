#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "swstat/inequality.hpp"
#include "swstat/trend.hpp"

namespace swstat {

struct Record {
  std::string version;
  std::string package;
  std::string entity;
  std::string metric;
  double value = 0.0;
};

/// Parses a manifest document {"versions": [...]}. Throws InputError on
/// malformed JSON, non-string labels, duplicates or an empty list.
[[nodiscard]] std::vector<std::string> load_manifest(std::string_view json_text);

/// Immutable long-format metrics table with a declared version order.
class MetricsDataset {
 public:
  /// Validates the invariants: known versions, unique keys, finite values.
  MetricsDataset(std::vector<Record> records, std::vector<std::string> version_order);

  [[nodiscard]] const std::vector<Record>& records() const { return records_; }
  [[nodiscard]] const std::vector<std::string>& version_order() const { return versions_; }
  [[nodiscard]] std::size_t version_index(std::string_view version) const;

  /// Sorted, distinct package labels (optionally only those carrying `metric`).
  [[nodiscard]] std::vector<std::string> packages(std::string_view metric = {}) const;

 private:
  std::vector<Record> records_;
  std::vector<std::string> versions_;
  std::unordered_map<std::string, std::size_t> version_pos_;
};

/// Parses `version,package,entity,metric,value` CSV text. Errors name the
/// 1-based line number. When `version_order` is absent, versions are taken in
/// order of first appearance.
[[nodiscard]] MetricsDataset load_csv(std::string_view csv_text,
                                      std::optional<std::vector<std::string>> version_order);

/// CSV text for records, with a header line. Values use shortest round-trip form.
[[nodiscard]] std::string write_csv(const std::vector<Record>& records, bool header = true);

/// Shortest decimal string that parses back to exactly `v`.
[[nodiscard]] std::string format_double(double v);

/// Values of one (version, package, metric) slice ordered by entity label.
/// Throws AnalysisError("empty slice") when nothing matches.
[[nodiscard]] std::vector<double> slice_distribution(const MetricsDataset& ds,
                                                     std::string_view version,
                                                     std::string_view package,
                                                     std::string_view metric);

enum class Statistic { gini, pietra, theil, atkinson, mean, median, raw };

[[nodiscard]] std::string_view to_string(Statistic s);
/// Throws InputError for an unknown label.
[[nodiscard]] Statistic parse_statistic(std::string_view label);
[[nodiscard]] bool is_inequality(Statistic s);

struct SeriesPoint {
  std::string version;
  double value = 0.0;
};

struct VersionSeries {
  std::string package;
  std::string metric;
  Statistic statistic = Statistic::gini;
  std::vector<SeriesPoint> points;
  /// Manifest versions with no matching records, in manifest order.
  std::vector<std::string> gaps;

  [[nodiscard]] std::vector<double> values() const;
};

struct SeriesBuild {
  VersionSeries series;
  /// One report per point for the inequality statistics; empty otherwise.
  std::vector<ineq::InequalityReport> inequality;
};

/// One point per version that has data, in manifest order.
[[nodiscard]] SeriesBuild build_series(const MetricsDataset& ds, std::string_view package,
                                       std::string_view metric, Statistic statistic,
                                       double epsilon = ineq::kDefaultAversion);

inline constexpr std::size_t kMinTrendPoints = 4;

struct PipelineResult {
  VersionSeries series;
  std::vector<ineq::InequalityReport> inequality;
  trend::TrendResult trend;
};

/// build_series followed by the Mann-Kendall test over the point values.
/// Refuses series with fewer than kMinTrendPoints points.
[[nodiscard]] PipelineResult run_pipeline(const MetricsDataset& ds, std::string_view package,
                                          std::string_view metric, Statistic statistic,
                                          double epsilon = ineq::kDefaultAversion,
                                          double alpha = trend::kDefaultAlpha);

struct Selection {
  std::string package;
  std::string metric;
};

/// Runs independent selections concurrently. Results are ordered by
/// (package, metric) regardless of scheduling.
[[nodiscard]] std::vector<PipelineResult> run_pipelines(const MetricsDataset& ds,
                                                        std::vector<Selection> selections,
                                                        Statistic statistic,
                                                        double epsilon = ineq::kDefaultAversion,
                                                        double alpha = trend::kDefaultAlpha);

}  // namespace swstat
