// swstat: inequality, trend and diversity analysis of software metrics across versions.
//
// Exit status: 0 success, 1 analysis refused, 2 input/IO/usage error,
// 3 trend detected (only with --ci-exit).

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "swstat/dataset.hpp"
#include "swstat/diversity.hpp"
#include "swstat/error.hpp"
#include "swstat/halstead.hpp"
#include "swstat/report.hpp"
#include "swstat/svg.hpp"
#include "swstat/version.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRefused = 1;
constexpr int kExitInput = 2;
constexpr int kExitTrend = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw swstat::InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw swstat::InputError("cannot read '" + path + "'");
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << content) || !out.flush()) {
    throw swstat::InputError("cannot write '" + path + "'");
  }
}

struct Loaded {
  swstat::MetricsDataset dataset;
  std::vector<swstat::report::InputIdentity> inputs;
};

Loaded load_inputs(const std::string& manifest_path, const std::string& data_path) {
  std::vector<swstat::report::InputIdentity> inputs;
  std::optional<std::vector<std::string>> order;
  if (!manifest_path.empty()) {
    const auto text = read_file(manifest_path);
    try {
      order = swstat::load_manifest(text);
    } catch (const swstat::InputError& e) {
      throw swstat::InputError(manifest_path + ": " + e.what());
    }
    inputs.push_back({"manifest", manifest_path, swstat::report::sha256_hex(text)});
  }
  const auto csv = read_file(data_path);
  inputs.push_back({"data", data_path, swstat::report::sha256_hex(csv)});
  try {
    return Loaded{swstat::load_csv(csv, std::move(order)), std::move(inputs)};
  } catch (const swstat::InputError& e) {
    throw swstat::InputError(data_path + ": " + e.what());
  }
}

std::string gap_warning(const swstat::VersionSeries& s) {
  std::string list;
  for (const auto& g : s.gaps) list += (list.empty() ? "" : ", ") + g;
  return s.package + "/" + s.metric + ": no data for version(s) " + list;
}

std::string sanitize(std::string_view label) {
  std::string out;
  for (char c : label) out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.') ? c : '_';
  return out;
}

// One result writes exactly `path`; several get a per-package/metric suffix.
std::string plot_path(const std::string& path, const swstat::VersionSeries& s, bool single) {
  if (single) return path;
  const fs::path p(path);
  const auto name = p.stem().string() + "-" + sanitize(s.package) + "-" + sanitize(s.metric) +
                    p.extension().string();
  return (p.parent_path() / name).string();
}

struct CommonOptions {
  std::string manifest;
  std::string data;
  std::vector<std::string> packages;
  std::string metric;
  std::string statistic = "gini";
  double epsilon = swstat::ineq::kDefaultAversion;
  double alpha = swstat::trend::kDefaultAlpha;
  std::string format = "json";
  std::string plot;
  bool ci_exit = false;
};

void emit(const swstat::report::ReportDocument& doc, const std::string& format,
          std::string (*csv)(const swstat::report::ReportDocument&)) {
  std::cout << (format == "csv" ? csv(doc) : swstat::report::to_json_text(doc));
}

swstat::report::ReportDocument new_document(std::vector<swstat::report::InputIdentity> inputs) {
  swstat::report::ReportDocument doc;
  doc.tool_version = std::string(swstat::kToolVersion);
  doc.inputs = std::move(inputs);
  return doc;
}

int cmd_inequality(const CommonOptions& o) {
  const auto statistic = swstat::parse_statistic(o.statistic);
  if (!swstat::is_inequality(statistic)) {
    throw swstat::InputError("--statistic must be an inequality index for this command");
  }
  auto [ds, inputs] = load_inputs(o.manifest, o.data);
  auto doc = new_document(std::move(inputs));
  const auto& package = o.packages.front();
  const auto built = swstat::build_series(ds, package, o.metric, statistic, o.epsilon);
  if (built.series.points.empty()) {
    throw swstat::AnalysisError("empty selection: no records for " + package + "/" + o.metric);
  }
  if (!built.series.gaps.empty()) doc.warnings.push_back(gap_warning(built.series));
  doc.results.push_back(swstat::report::from_series(built));
  if (!o.plot.empty()) write_file(o.plot, swstat::svg::render_svg(built.series));
  emit(doc, o.format, &swstat::report::inequality_csv);
  return kExitOk;
}

int cmd_trend(const CommonOptions& o) {
  const auto statistic = swstat::parse_statistic(o.statistic);
  auto [ds, inputs] = load_inputs(o.manifest, o.data);
  auto doc = new_document(std::move(inputs));

  std::vector<std::string> packages = o.packages;
  if (packages.empty()) packages = ds.packages(o.metric);
  if (packages.empty()) throw swstat::AnalysisError("empty selection: no records for metric " + o.metric);
  std::vector<swstat::Selection> selections;
  for (const auto& p : packages) selections.push_back({p, o.metric});

  const auto results = swstat::run_pipelines(ds, selections, statistic, o.epsilon, o.alpha);
  bool detected = false;
  for (const auto& r : results) {
    if (!r.series.gaps.empty()) doc.warnings.push_back(gap_warning(r.series));
    if (r.trend.decision != swstat::trend::Decision::no_trend_not_rejected) detected = true;
    doc.results.push_back(swstat::report::from_pipeline(r));
    if (!o.plot.empty()) {
      write_file(plot_path(o.plot, r.series, results.size() == 1),
                 swstat::svg::render_svg(r.series, r.trend));
    }
  }
  emit(doc, o.format, &swstat::report::trend_csv);
  return o.ci_exit && detected ? kExitTrend : kExitOk;
}

struct DiversityOptions {
  std::string manifest;
  std::string data;
  std::string version;
  std::string package;
  std::string metric;
  std::string format = "json";
};

int cmd_diversity(const DiversityOptions& o) {
  auto [ds, inputs] = load_inputs(o.manifest, o.data);
  auto doc = new_document(std::move(inputs));
  (void)ds.version_index(o.version);  // unknown version is an input error

  std::map<std::string, std::uint64_t> by_category;
  for (const auto& r : ds.records()) {
    if (r.version == o.version && r.package == o.package && r.metric == o.metric) {
      ++by_category[swstat::format_double(r.value)];
    }
  }
  swstat::diversity::AbundanceVector abundance(
      std::vector<std::pair<std::string, std::uint64_t>>(by_category.begin(), by_category.end()));

  swstat::report::ResultEntry entry;
  entry.package = o.package;
  entry.metric = o.metric;
  entry.statistic = "diversity";
  entry.version = o.version;
  entry.diversity = swstat::report::DiversityEntry{swstat::diversity::report(abundance),
                                                   abundance.counts()};
  doc.results.push_back(std::move(entry));
  emit(doc, o.format, &swstat::report::diversity_csv);
  return kExitOk;
}

struct ExtractOptions {
  std::vector<std::string> paths;
  std::string version;
  std::string package;
  std::string output;
  bool append = false;
};

bool is_source_file(const fs::path& p) {
  static const std::vector<std::string> exts = {".c",   ".cc",  ".cpp", ".cxx", ".c++", ".h",
                                                ".hh",  ".hpp", ".hxx", ".h++", ".icc", ".ipp",
                                                ".inl", ".tcc"};
  return std::find(exts.begin(), exts.end(), p.extension().string()) != exts.end();
}

int cmd_extract(const ExtractOptions& o) {
  std::vector<std::string> files;
  std::vector<std::string> failures;
  for (const auto& arg : o.paths) {
    std::error_code ec;
    if (fs::is_directory(arg, ec)) {
      std::vector<std::string> found;
      for (auto it = fs::recursive_directory_iterator(arg, ec); !ec && it != fs::recursive_directory_iterator();
           it.increment(ec)) {
        if (it->is_regular_file(ec) && is_source_file(it->path())) found.push_back(it->path().generic_string());
      }
      if (ec) failures.push_back(arg + ": " + ec.message());
      if (found.empty()) std::cerr << "warning: " << arg << ": no source files found\n";
      files.insert(files.end(), found.begin(), found.end());
    } else {
      files.push_back(fs::path(arg).generic_string());
    }
  }
  std::sort(files.begin(), files.end());
  files.erase(std::unique(files.begin(), files.end()), files.end());

  std::vector<std::vector<swstat::Record>> per_file(files.size());
  std::vector<std::string> file_warning(files.size());
  std::vector<std::string> file_failure(files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < files.size(); i = next++) {
      try {
        per_file[i] = swstat::halstead::extract_file(read_file(files[i]), o.version, o.package, files[i]);
      } catch (const swstat::AnalysisError& e) {
        file_warning[i] = std::string(e.what()) + ", skipped";
      } catch (const std::exception& e) {
        file_failure[i] = e.what();
      }
    }
  };
  const std::size_t n_workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, std::max<std::size_t>(files.size(), 1));
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
  }

  std::vector<swstat::Record> records;
  for (std::size_t i = 0; i < files.size(); ++i) {
    if (!file_warning[i].empty()) std::cerr << "warning: " << file_warning[i] << "\n";
    if (!file_failure[i].empty()) failures.push_back(file_failure[i]);
    records.insert(records.end(), per_file[i].begin(), per_file[i].end());
  }

  if (o.output.empty()) {
    std::cout << swstat::write_csv(records);
  } else {
    std::error_code ec;
    const bool has_content = o.append && fs::exists(o.output, ec) && fs::file_size(o.output, ec) > 0;
    std::ofstream out(o.output, std::ios::binary | (o.append ? std::ios::app : std::ios::trunc));
    if (!out || !(out << swstat::write_csv(records, !has_content)) || !out.flush()) {
      throw swstat::InputError("cannot write '" + o.output + "'");
    }
  }
  if (!failures.empty()) {
    std::cerr << "error: " << failures.size() << " file(s) failed:\n";
    for (const auto& f : failures) std::cerr << "  " << f << "\n";
    return kExitInput;
  }
  return kExitOk;
}

// CLI11 validator for the open interval (0, 1).
struct OpenUnitInterval : CLI::Validator {
  OpenUnitInterval() {
    name_ = "OPEN_UNIT_INTERVAL";
    func_ = [](std::string& s) -> std::string {
      double v = 0.0;
      if (!CLI::detail::lexical_cast(s, v) || !(v > 0.0 && v < 1.0)) {
        return "value " + s + " not in the open interval (0, 1)";
      }
      return {};
    };
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Inequality, trend and diversity analysis of software metrics across versions"};
  app.set_version_flag("--version", std::string(swstat::kToolVersion));
  app.require_subcommand(1);

  const std::vector<std::string> statistics = {"gini", "pietra", "theil", "atkinson",
                                               "mean", "median", "raw"};
  const std::vector<std::string> formats = {"csv", "json"};

  CommonOptions ineq_opts;
  auto* ineq = app.add_subcommand("inequality", "All four inequality indices per version for one slice");
  ineq->add_option("--manifest", ineq_opts.manifest, "Version manifest (JSON)")->required();
  ineq->add_option("--data", ineq_opts.data, "Metrics data (long-format CSV)")->required();
  ineq->add_option("--package", ineq_opts.packages, "Package label")->required()->expected(1);
  ineq->add_option("--metric", ineq_opts.metric, "Metric label")->required();
  ineq->add_option("--statistic", ineq_opts.statistic, "Index used for the plotted points")
      ->check(CLI::IsMember({"gini", "pietra", "theil", "atkinson"}))
      ->capture_default_str();
  ineq->add_option("--epsilon", ineq_opts.epsilon, "Atkinson inequality aversion")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  ineq->add_option("--format", ineq_opts.format)->check(CLI::IsMember(formats))->capture_default_str();
  ineq->add_option("--plot", ineq_opts.plot, "Write an SVG plot of the series");

  CommonOptions trend_opts;
  auto* trend = app.add_subcommand("trend", "Mann-Kendall trend test over a version series");
  trend->add_option("--manifest", trend_opts.manifest, "Version manifest (JSON)")->required();
  trend->add_option("--data", trend_opts.data, "Metrics data (long-format CSV)")->required();
  trend->add_option("--package", trend_opts.packages, "Package label (repeatable; default all)");
  trend->add_option("--metric", trend_opts.metric, "Metric label")->required();
  trend->add_option("--statistic", trend_opts.statistic)->check(CLI::IsMember(statistics))->capture_default_str();
  trend->add_option("--alpha", trend_opts.alpha, "Significance level")
      ->check(OpenUnitInterval())
      ->capture_default_str();
  trend->add_option("--epsilon", trend_opts.epsilon, "Atkinson inequality aversion")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  trend->add_option("--format", trend_opts.format)->check(CLI::IsMember(formats))->capture_default_str();
  trend->add_option("--plot", trend_opts.plot, "Write an SVG plot per series");
  trend->add_flag("--ci-exit", trend_opts.ci_exit, "Exit with status 3 when a trend is detected");

  DiversityOptions div_opts;
  auto* div = app.add_subcommand("diversity", "Diversity of entities grouped by a categorical metric");
  div->add_option("--manifest", div_opts.manifest, "Version manifest (optional)");
  div->add_option("--data", div_opts.data, "Metrics data (long-format CSV)")->required();
  div->add_option("--version-label", div_opts.version, "Version to analyse")->required();
  div->add_option("--package", div_opts.package, "Package label")->required();
  div->add_option("--metric", div_opts.metric, "Metric whose values are the categories")->required();
  div->add_option("--format", div_opts.format)->check(CLI::IsMember(formats))->capture_default_str();

  ExtractOptions ext_opts;
  auto* ext = app.add_subcommand("extract", "Halstead measures from C-family sources as dataset CSV");
  ext->add_option("paths", ext_opts.paths, "Source files or directories");
  ext->add_option("--version-label", ext_opts.version, "Version label for the records")->required();
  ext->add_option("--package", ext_opts.package, "Package label for the records")->required();
  ext->add_option("--output", ext_opts.output, "Output CSV (default stdout)");
  ext->add_flag("--append", ext_opts.append, "Append to --output, writing the header only if empty");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*ineq) return cmd_inequality(ineq_opts);
    if (*trend) return cmd_trend(trend_opts);
    if (*div) return cmd_diversity(div_opts);
    if (*ext) return cmd_extract(ext_opts);
  } catch (const swstat::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const swstat::AnalysisError& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return kExitRefused;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitOk;
}
