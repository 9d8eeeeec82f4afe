#include "swstat/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <future>
#include <set>
#include <tuple>
#include <unordered_set>

#include "json.hpp"

#include "swstat/error.hpp"

namespace swstat {
namespace {

constexpr std::string_view kHeader = "version,package,entity,metric,value";

std::string record_key(const Record& r) {
  std::string key;
  key.reserve(r.version.size() + r.package.size() + r.entity.size() + r.metric.size() + 3);
  for (const std::string* part : {&r.version, &r.package, &r.entity, &r.metric}) {
    key += *part;
    key += '\x1f';
  }
  return key;
}

std::string line_prefix(std::size_t line) { return "line " + std::to_string(line) + ": "; }

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

double median_of(std::vector<double> v) {
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  const double upper = v[mid];
  if (v.size() % 2 == 1) return upper;
  return 0.5 * (*std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid)) + upper);
}

}  // namespace

std::vector<std::string> load_manifest(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("manifest: malformed JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("versions") || !doc["versions"].is_array()) {
    throw InputError("manifest: expected an object with a \"versions\" array");
  }
  std::vector<std::string> versions;
  std::set<std::string> seen;
  for (const auto& item : doc["versions"]) {
    if (!item.is_string()) throw InputError("manifest: version labels must be strings");
    auto label = item.get<std::string>();
    if (label.empty()) throw InputError("manifest: empty version label");
    if (!seen.insert(label).second) throw InputError("manifest: duplicate version '" + label + "'");
    versions.push_back(std::move(label));
  }
  if (versions.empty()) throw InputError("manifest: empty version list");
  return versions;
}

MetricsDataset::MetricsDataset(std::vector<Record> records, std::vector<std::string> version_order)
    : records_(std::move(records)), versions_(std::move(version_order)) {
  for (std::size_t i = 0; i < versions_.size(); ++i) {
    if (!version_pos_.emplace(versions_[i], i).second) {
      throw InputError("duplicate version '" + versions_[i] + "'");
    }
  }
  std::unordered_set<std::string> keys;
  for (const auto& r : records_) {
    if (!version_pos_.contains(r.version)) throw InputError("unknown version '" + r.version + "'");
    if (!std::isfinite(r.value)) throw InputError("non-finite value for entity '" + r.entity + "'");
    if (!keys.insert(record_key(r)).second) {
      throw InputError("duplicate key (" + r.version + ", " + r.package + ", " + r.entity + ", " +
                       r.metric + ")");
    }
  }
}

std::size_t MetricsDataset::version_index(std::string_view version) const {
  const auto it = version_pos_.find(std::string(version));
  if (it == version_pos_.end()) throw InputError("unknown version '" + std::string(version) + "'");
  return it->second;
}

std::vector<std::string> MetricsDataset::packages(std::string_view metric) const {
  std::set<std::string> out;
  for (const auto& r : records_) {
    if (metric.empty() || r.metric == metric) out.insert(r.package);
  }
  return {out.begin(), out.end()};
}

MetricsDataset load_csv(std::string_view csv_text,
                        std::optional<std::vector<std::string>> version_order) {
  std::vector<std::string> versions = version_order.value_or(std::vector<std::string>{});
  std::unordered_set<std::string> known(versions.begin(), versions.end());
  std::unordered_set<std::string> keys;
  std::vector<Record> records;

  std::size_t line_no = 0;
  bool saw_header = false;
  std::size_t pos = 0;
  while (pos < csv_text.size()) {
    std::size_t end = csv_text.find('\n', pos);
    if (end == std::string_view::npos) end = csv_text.size();
    std::string_view line = csv_text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.remove_prefix(3);

    if (!saw_header) {
      if (line != kHeader) {
        throw InputError(line_prefix(line_no) + "missing column: header must be '" +
                         std::string(kHeader) + "'");
      }
      saw_header = true;
      continue;
    }
    if (line.empty()) continue;

    const auto fields = split_fields(line);
    if (fields.size() < 5) {
      throw InputError(line_prefix(line_no) + "missing column: expected 5 fields, found " +
                       std::to_string(fields.size()));
    }
    if (fields.size() > 5) {
      throw InputError(line_prefix(line_no) + "too many fields (labels may not contain commas)");
    }
    for (std::size_t f = 0; f < 4; ++f) {
      if (fields[f].empty()) throw InputError(line_prefix(line_no) + "empty label");
    }

    Record r{std::string(fields[0]), std::string(fields[1]), std::string(fields[2]),
             std::string(fields[3]), 0.0};
    const std::string_view literal = fields[4];
    const char* first = literal.data();
    const char* last = first + literal.size();
    const auto [ptr, ec] = std::from_chars(first, last, r.value);
    if (literal.empty() || ec != std::errc() || ptr != last || !std::isfinite(r.value)) {
      throw InputError(line_prefix(line_no) + "bad value literal '" + std::string(literal) + "'");
    }

    if (!known.contains(r.version)) {
      if (version_order) {
        throw InputError(line_prefix(line_no) + "unknown version '" + r.version +
                         "' (not in manifest)");
      }
      known.insert(r.version);
      versions.push_back(r.version);
    }
    if (!keys.insert(record_key(r)).second) {
      throw InputError(line_prefix(line_no) + "duplicate key (" + r.version + ", " + r.package +
                       ", " + r.entity + ", " + r.metric + ")");
    }
    records.push_back(std::move(r));
  }
  if (!saw_header) throw InputError("line 1: missing column: empty file, no header");
  if (versions.empty()) throw InputError("no versions in data");
  return MetricsDataset(std::move(records), std::move(versions));
}

std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string write_csv(const std::vector<Record>& records, bool header) {
  std::string out;
  if (header) {
    out += kHeader;
    out += '\n';
  }
  for (const auto& r : records) {
    out += r.version + ',' + r.package + ',' + r.entity + ',' + r.metric + ',' +
           format_double(r.value) + '\n';
  }
  return out;
}

std::vector<double> slice_distribution(const MetricsDataset& ds, std::string_view version,
                                       std::string_view package, std::string_view metric) {
  std::vector<const Record*> hits;
  for (const auto& r : ds.records()) {
    if (r.version == version && r.package == package && r.metric == metric) hits.push_back(&r);
  }
  if (hits.empty()) throw AnalysisError("empty slice");
  std::sort(hits.begin(), hits.end(),
            [](const Record* a, const Record* b) { return a->entity < b->entity; });
  std::vector<double> values;
  values.reserve(hits.size());
  for (const Record* r : hits) values.push_back(r->value);
  return values;
}

std::string_view to_string(Statistic s) {
  switch (s) {
    case Statistic::gini: return "gini";
    case Statistic::pietra: return "pietra";
    case Statistic::theil: return "theil";
    case Statistic::atkinson: return "atkinson";
    case Statistic::mean: return "mean";
    case Statistic::median: return "median";
    case Statistic::raw: return "raw";
  }
  return "raw";
}

Statistic parse_statistic(std::string_view label) {
  for (auto s : {Statistic::gini, Statistic::pietra, Statistic::theil, Statistic::atkinson,
                 Statistic::mean, Statistic::median, Statistic::raw}) {
    if (to_string(s) == label) return s;
  }
  throw InputError("unknown statistic '" + std::string(label) + "'");
}

bool is_inequality(Statistic s) {
  return s == Statistic::gini || s == Statistic::pietra || s == Statistic::theil ||
         s == Statistic::atkinson;
}

std::vector<double> VersionSeries::values() const {
  std::vector<double> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(p.value);
  return out;
}

SeriesBuild build_series(const MetricsDataset& ds, std::string_view package,
                         std::string_view metric, Statistic statistic, double epsilon) {
  SeriesBuild out;
  out.series.package = package;
  out.series.metric = metric;
  out.series.statistic = statistic;

  for (const auto& version : ds.version_order()) {
    std::vector<double> values;
    try {
      values = slice_distribution(ds, version, package, metric);
    } catch (const AnalysisError&) {
      out.series.gaps.push_back(version);
      continue;
    }
    try {
      double value = 0.0;
      if (is_inequality(statistic)) {
        const auto rep = ineq::report(values, epsilon);
        switch (statistic) {
          case Statistic::gini: value = rep.gini; break;
          case Statistic::pietra: value = rep.pietra; break;
          case Statistic::theil: value = rep.theil; break;
          default: value = rep.atkinson; break;
        }
        out.inequality.push_back(rep);
      } else if (statistic == Statistic::mean) {
        double sum = 0.0;
        for (double v : values) sum += v;
        value = sum / static_cast<double>(values.size());
      } else if (statistic == Statistic::median) {
        value = median_of(std::move(values));
      } else {
        if (values.size() != 1) {
          throw AnalysisError("raw statistic needs exactly one entity per version, found " +
                              std::to_string(values.size()));
        }
        value = values.front();
      }
      out.series.points.push_back({version, value});
    } catch (const AnalysisError& e) {
      throw AnalysisError("version " + version + ": " + e.what());
    }
  }
  return out;
}

PipelineResult run_pipeline(const MetricsDataset& ds, std::string_view package,
                            std::string_view metric, Statistic statistic, double epsilon,
                            double alpha) {
  auto built = build_series(ds, package, metric, statistic, epsilon);
  const std::size_t n = built.series.points.size();
  if (n < kMinTrendPoints) {
    throw AnalysisError("series too short for trend: " + std::to_string(n) + " point(s) for " +
                        std::string(package) + "/" + std::string(metric) + ", need " +
                        std::to_string(kMinTrendPoints));
  }
  PipelineResult result;
  result.trend = trend::mk_test(built.series.values(), alpha);
  result.series = std::move(built.series);
  result.inequality = std::move(built.inequality);
  return result;
}

std::vector<PipelineResult> run_pipelines(const MetricsDataset& ds,
                                          std::vector<Selection> selections,
                                          Statistic statistic, double epsilon, double alpha) {
  std::sort(selections.begin(), selections.end(), [](const Selection& a, const Selection& b) {
    return std::tie(a.package, a.metric) < std::tie(b.package, b.metric);
  });
  std::vector<std::future<PipelineResult>> jobs;
  jobs.reserve(selections.size());
  for (const auto& sel : selections) {
    jobs.push_back(std::async(std::launch::async, [&ds, &sel, statistic, epsilon, alpha] {
      return run_pipeline(ds, sel.package, sel.metric, statistic, epsilon, alpha);
    }));
  }
  std::vector<PipelineResult> results;
  results.reserve(jobs.size());
  for (auto& job : jobs) results.push_back(job.get());
  return results;
}

}  // namespace swstat
