#pragma once

#include <optional>
#include <string>

#include "swstat/dataset.hpp"

namespace swstat::svg {

/// Standalone SVG line chart of a version series: one polyline through the
/// points in series order, version labels on the x axis, gap versions and the
/// optional trend decision listed as annotations. Output is byte-deterministic.
/// Throws AnalysisError for a series without points.
[[nodiscard]] std::string render_svg(const VersionSeries& series,
                                     const std::optional<trend::TrendResult>& trend = std::nullopt);

}  // namespace swstat::svg
