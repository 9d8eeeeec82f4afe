#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "swstat/dataset.hpp"
#include "swstat/diversity.hpp"

namespace swstat::report {

struct InputIdentity {
  std::string role;  // "manifest", "data", "source"
  std::string path;
  std::string sha256;
};

struct DiversityEntry {
  diversity::DiversityReport indices;
  std::vector<std::pair<std::string, std::uint64_t>> categories;
};

/// One analysed (package, metric, statistic) combination.
struct ResultEntry {
  std::string package;
  std::string metric;
  std::string statistic;
  std::string version;  // only set for single-version analyses (diversity)
  std::vector<SeriesPoint> points;
  std::vector<std::string> gaps;
  std::optional<std::vector<ineq::InequalityReport>> inequality;
  std::optional<trend::TrendResult> trend;
  std::optional<DiversityEntry> diversity;
};

[[nodiscard]] ResultEntry from_pipeline(const PipelineResult& r);
[[nodiscard]] ResultEntry from_series(const SeriesBuild& b);

struct ReportDocument {
  std::string tool_version;
  std::vector<InputIdentity> inputs;
  std::vector<ResultEntry> results;
  std::vector<std::string> warnings;
};

/// Results are emitted sorted by (package, metric, statistic).
[[nodiscard]] nlohmann::json to_json(const ReportDocument& doc);
[[nodiscard]] std::string to_json_text(const ReportDocument& doc);

/// Inverse of to_json for the fields it writes. Throws InputError on schema mismatch.
[[nodiscard]] ReportDocument from_json(const nlohmann::json& j);

// CSV tables, one row per version (or per result for diversity).
[[nodiscard]] std::string inequality_csv(const ReportDocument& doc);
[[nodiscard]] std::string trend_csv(const ReportDocument& doc);
[[nodiscard]] std::string diversity_csv(const ReportDocument& doc);

[[nodiscard]] std::string sha256_hex(std::string_view bytes);

}  // namespace swstat::report
