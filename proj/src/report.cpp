#include "swstat/report.hpp"

#include <algorithm>
#include <array>
#include <tuple>

#include <openssl/evp.h>

#include "swstat/error.hpp"

namespace swstat::report {
namespace {

using nlohmann::json;

std::vector<const ResultEntry*> sorted_results(const ReportDocument& doc) {
  std::vector<const ResultEntry*> out;
  for (const auto& r : doc.results) out.push_back(&r);
  std::stable_sort(out.begin(), out.end(), [](const ResultEntry* a, const ResultEntry* b) {
    return std::tie(a->package, a->metric, a->statistic) <
           std::tie(b->package, b->metric, b->statistic);
  });
  return out;
}

json trend_json(const trend::TrendResult& t) {
  return json{{"s", t.s},
              {"var_s", t.var_s},
              {"z", t.z},
              {"tau", t.tau},
              {"p_two_sided", t.p_two_sided},
              {"p_upward", t.p_upward},
              {"p_downward", t.p_downward},
              {"method", std::string(to_string(t.method))},
              {"alpha", t.alpha},
              {"decision", std::string(to_string(t.decision))}};
}

trend::TrendResult trend_from(const json& j) {
  trend::TrendResult t;
  t.s = j.at("s").get<std::int64_t>();
  t.var_s = j.at("var_s").get<double>();
  t.z = j.at("z").get<double>();
  t.tau = j.at("tau").get<double>();
  t.p_two_sided = j.at("p_two_sided").get<double>();
  t.p_upward = j.at("p_upward").get<double>();
  t.p_downward = j.at("p_downward").get<double>();
  t.alpha = j.at("alpha").get<double>();
  const auto method = j.at("method").get<std::string>();
  if (method == "exact") {
    t.method = trend::Method::exact;
  } else if (method == "normal") {
    t.method = trend::Method::normal;
  } else {
    throw InputError("report: unknown method '" + method + "'");
  }
  const auto decision = j.at("decision").get<std::string>();
  if (decision == "upward") {
    t.decision = trend::Decision::upward;
  } else if (decision == "downward") {
    t.decision = trend::Decision::downward;
  } else if (decision == "no_trend_not_rejected") {
    t.decision = trend::Decision::no_trend_not_rejected;
  } else {
    throw InputError("report: unknown decision '" + decision + "'");
  }
  return t;
}

std::string row(std::initializer_list<std::string> cells) {
  std::string out;
  for (const auto& c : cells) {
    if (!out.empty()) out += ',';
    out += c;
  }
  out += '\n';
  return out;
}

}  // namespace

ResultEntry from_series(const SeriesBuild& b) {
  ResultEntry e;
  e.package = b.series.package;
  e.metric = b.series.metric;
  e.statistic = std::string(to_string(b.series.statistic));
  e.points = b.series.points;
  e.gaps = b.series.gaps;
  if (is_inequality(b.series.statistic)) e.inequality = b.inequality;
  return e;
}

ResultEntry from_pipeline(const PipelineResult& r) {
  ResultEntry e = from_series(SeriesBuild{r.series, r.inequality});
  e.trend = r.trend;
  return e;
}

json to_json(const ReportDocument& doc) {
  json inputs = json::array();
  for (const auto& in : doc.inputs) {
    inputs.push_back(json{{"role", in.role}, {"path", in.path}, {"sha256", in.sha256}});
  }

  json results = json::array();
  for (const ResultEntry* r : sorted_results(doc)) {
    json points = json::array();
    for (const auto& p : r->points) points.push_back(json{{"version", p.version}, {"value", p.value}});

    json entry{{"package", r->package},
               {"metric", r->metric},
               {"statistic", r->statistic},
               {"points", std::move(points)},
               {"gaps", r->gaps},
               {"inequality", nullptr},
               {"trend", nullptr}};
    if (!r->version.empty()) entry["version"] = r->version;
    if (r->inequality) {
      json reports = json::array();
      for (std::size_t i = 0; i < r->inequality->size(); ++i) {
        const auto& rep = (*r->inequality)[i];
        reports.push_back(json{{"version", i < r->points.size() ? r->points[i].version : ""},
                               {"n", rep.n},
                               {"gini", rep.gini},
                               {"pietra", rep.pietra},
                               {"theil", rep.theil},
                               {"atkinson", rep.atkinson},
                               {"epsilon", rep.epsilon}});
      }
      entry["inequality"] = std::move(reports);
    }
    if (r->trend) entry["trend"] = trend_json(*r->trend);
    if (r->diversity) {
      const auto& d = r->diversity->indices;
      json categories = json::array();
      for (const auto& [label, count] : r->diversity->categories) {
        categories.push_back(json{{"category", label}, {"count", count}});
      }
      entry["diversity"] = json{{"shannon", d.shannon},           {"simpson", d.simpson},
                                {"gini_simpson", d.gini_simpson}, {"evenness", d.evenness},
                                {"richness", d.richness},         {"total", d.total},
                                {"categories", std::move(categories)}};
    }
    results.push_back(std::move(entry));
  }

  return json{{"tool_version", doc.tool_version},
              {"inputs", std::move(inputs)},
              {"results", std::move(results)},
              {"warnings", doc.warnings}};
}

std::string to_json_text(const ReportDocument& doc) { return to_json(doc).dump(2) + "\n"; }

ReportDocument from_json(const json& j) {
  ReportDocument doc;
  try {
    doc.tool_version = j.at("tool_version").get<std::string>();
    for (const auto& in : j.at("inputs")) {
      doc.inputs.push_back({in.at("role").get<std::string>(), in.at("path").get<std::string>(),
                            in.at("sha256").get<std::string>()});
    }
    for (const auto& r : j.at("results")) {
      ResultEntry e;
      e.package = r.at("package").get<std::string>();
      e.metric = r.at("metric").get<std::string>();
      e.statistic = r.at("statistic").get<std::string>();
      if (r.contains("version")) e.version = r.at("version").get<std::string>();
      for (const auto& p : r.at("points")) {
        e.points.push_back({p.at("version").get<std::string>(), p.at("value").get<double>()});
      }
      e.gaps = r.at("gaps").get<std::vector<std::string>>();
      if (!r.at("inequality").is_null()) {
        std::vector<ineq::InequalityReport> reps;
        for (const auto& q : r.at("inequality")) {
          ineq::InequalityReport rep;
          rep.n = q.at("n").get<std::size_t>();
          rep.gini = q.at("gini").get<double>();
          rep.pietra = q.at("pietra").get<double>();
          rep.theil = q.at("theil").get<double>();
          rep.atkinson = q.at("atkinson").get<double>();
          rep.epsilon = q.at("epsilon").get<double>();
          reps.push_back(rep);
        }
        e.inequality = std::move(reps);
      }
      if (!r.at("trend").is_null()) e.trend = trend_from(r.at("trend"));
      if (r.contains("diversity")) {
        const auto& d = r.at("diversity");
        DiversityEntry de;
        de.indices.shannon = d.at("shannon").get<double>();
        de.indices.simpson = d.at("simpson").get<double>();
        de.indices.gini_simpson = d.at("gini_simpson").get<double>();
        de.indices.evenness = d.at("evenness").get<double>();
        de.indices.richness = d.at("richness").get<std::size_t>();
        de.indices.total = d.at("total").get<std::uint64_t>();
        for (const auto& c : d.at("categories")) {
          de.categories.emplace_back(c.at("category").get<std::string>(),
                                     c.at("count").get<std::uint64_t>());
        }
        e.diversity = std::move(de);
      }
      doc.results.push_back(std::move(e));
    }
    doc.warnings = j.at("warnings").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("report: ") + e.what());
  }
  return doc;
}

std::string inequality_csv(const ReportDocument& doc) {
  std::string out = row({"package", "metric", "version", "n", "gini", "pietra", "theil",
                         "atkinson", "epsilon"});
  for (const ResultEntry* r : sorted_results(doc)) {
    if (!r->inequality) continue;
    for (std::size_t i = 0; i < r->inequality->size() && i < r->points.size(); ++i) {
      const auto& q = (*r->inequality)[i];
      out += row({r->package, r->metric, r->points[i].version, std::to_string(q.n),
                  format_double(q.gini), format_double(q.pietra), format_double(q.theil),
                  format_double(q.atkinson), format_double(q.epsilon)});
    }
  }
  return out;
}

std::string trend_csv(const ReportDocument& doc) {
  std::string out = row({"package", "metric", "statistic", "points", "s", "var_s", "z", "tau",
                         "p_two_sided", "p_upward", "p_downward", "method", "alpha", "decision"});
  for (const ResultEntry* r : sorted_results(doc)) {
    if (!r->trend) continue;
    const auto& t = *r->trend;
    out += row({r->package, r->metric, r->statistic, std::to_string(r->points.size()),
                std::to_string(t.s), format_double(t.var_s), format_double(t.z),
                format_double(t.tau), format_double(t.p_two_sided), format_double(t.p_upward),
                format_double(t.p_downward), std::string(to_string(t.method)),
                format_double(t.alpha), std::string(to_string(t.decision))});
  }
  return out;
}

std::string diversity_csv(const ReportDocument& doc) {
  std::string out = row({"package", "metric", "version", "richness", "total", "shannon",
                         "simpson", "gini_simpson", "evenness"});
  for (const ResultEntry* r : sorted_results(doc)) {
    if (!r->diversity) continue;
    const auto& d = r->diversity->indices;
    out += row({r->package, r->metric, r->version, std::to_string(d.richness),
                std::to_string(d.total), format_double(d.shannon), format_double(d.simpson),
                format_double(d.gini_simpson), format_double(d.evenness)});
  }
  return out;
}

std::string sha256_hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xF];
  }
  return out;
}

}  // namespace swstat::report
