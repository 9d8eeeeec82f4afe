#include <regex>
#include <string>

#include "doctest.h"
#include "swstat/error.hpp"
#include "swstat/report.hpp"
#include "swstat/svg.hpp"

using namespace swstat;

namespace {

MetricsDataset fixture() {
  std::vector<std::string> versions;
  std::vector<Record> recs;
  for (int v = 0; v < 8; ++v) {
    const std::string label = "1." + std::to_string(v);
    versions.push_back(label);
    if (v == 5) continue;  // gap
    for (int e = 0; e < 4; ++e) {
      recs.push_back({label, "pkg", "f" + std::to_string(e), "m", 1.0 / 3.0 + e * (8 - v)});
    }
  }
  return MetricsDataset(recs, versions);
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("JSON report round-trips numerically") {
  const auto ds = fixture();
  const auto r = run_pipeline(ds, "pkg", "m", Statistic::atkinson, 0.7, 0.05);
  report::ReportDocument doc{"0.1.0", {{"data", "x.csv", report::sha256_hex("abc")}}, {}, {"w"}};
  doc.results.push_back(report::from_pipeline(r));

  const auto text = report::to_json_text(doc);
  const auto back = report::from_json(nlohmann::json::parse(text));
  REQUIRE(back.results.size() == 1);
  const auto& e = back.results[0];
  CHECK(e.statistic == "atkinson");
  CHECK(e.gaps == std::vector<std::string>{"1.5"});
  REQUIRE(e.points.size() == r.series.points.size());
  for (std::size_t i = 0; i < e.points.size(); ++i) {
    CHECK(e.points[i].version == r.series.points[i].version);
    CHECK(e.points[i].value == r.series.points[i].value);
    CHECK((*e.inequality)[i].gini == r.inequality[i].gini);
    CHECK((*e.inequality)[i].theil == r.inequality[i].theil);
    CHECK((*e.inequality)[i].atkinson == r.inequality[i].atkinson);
    CHECK((*e.inequality)[i].n == r.inequality[i].n);
  }
  REQUIRE(e.trend.has_value());
  CHECK(e.trend->s == r.trend.s);
  CHECK(e.trend->var_s == r.trend.var_s);
  CHECK(e.trend->z == r.trend.z);
  CHECK(e.trend->tau == r.trend.tau);
  CHECK(e.trend->p_two_sided == r.trend.p_two_sided);
  CHECK(e.trend->p_upward == r.trend.p_upward);
  CHECK(e.trend->p_downward == r.trend.p_downward);
  CHECK(e.trend->method == r.trend.method);
  CHECK(e.trend->decision == r.trend.decision);
  CHECK(report::to_json_text(back) == text);
}

TEST_CASE("report schema and ordering") {
  report::ReportDocument doc;
  doc.tool_version = "0.1.0";
  for (const char* pkg : {"zz", "aa"}) {
    report::ResultEntry e;
    e.package = pkg;
    e.metric = "m";
    e.statistic = "raw";
    doc.results.push_back(e);
  }
  const auto j = report::to_json(doc);
  for (const char* key : {"tool_version", "inputs", "results", "warnings"}) CHECK(j.contains(key));
  CHECK(j["results"][0]["package"] == "aa");
  CHECK(j["results"][1]["package"] == "zz");
  for (const char* key : {"package", "metric", "statistic", "points", "inequality", "trend"}) {
    CHECK(j["results"][0].contains(key));
  }
  CHECK(j["results"][0]["trend"].is_null());
  CHECK_THROWS_AS((void)report::from_json(nlohmann::json::parse(R"({"tool_version":"x"})")), InputError);
}

TEST_CASE("CSV tables") {
  const auto ds = fixture();
  report::ReportDocument doc;
  doc.results.push_back(report::from_pipeline(run_pipeline(ds, "pkg", "m", Statistic::gini)));
  const auto ineq_csv = report::inequality_csv(doc);
  CHECK(ineq_csv.starts_with("package,metric,version,n,gini,pietra,theil,atkinson,epsilon\n"));
  CHECK(count(ineq_csv, "\n") == 1 + 7);
  const auto trend_csv = report::trend_csv(doc);
  CHECK(count(trend_csv, "\n") == 2);
  CHECK(trend_csv.find(",exact,") != std::string::npos);
}

TEST_CASE("sha256") {
  CHECK(report::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(report::sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_CASE("svg structure") {
  VersionSeries s;
  s.package = "p";
  s.metric = "m";
  s.statistic = Statistic::raw;
  s.points = {{"9.6", 0.8}, {"10.0", 0.7}};
  const auto svg_text = svg::render_svg(s);
  CHECK(svg_text.starts_with("<?xml"));
  CHECK(count(svg_text, "<polyline") == 1);
  const std::regex points_attr("<polyline[^>]*points=\"([^\"]*)\"");
  std::smatch m;
  REQUIRE(std::regex_search(svg_text, m, points_attr));
  const std::string coords = m[1];
  CHECK(count(coords, ",") == 2);
  CHECK(svg_text.find(">9.6<") < svg_text.find(">10.0<"));
  CHECK(svg_text == svg::render_svg(s));
  CHECK(svg_text.find("class=\"gaps\"") == std::string::npos);
}

TEST_CASE("svg annotations") {
  const auto ds = fixture();
  const auto r = run_pipeline(ds, "pkg", "m", Statistic::gini);
  const auto svg_text = svg::render_svg(r.series, r.trend);
  CHECK(svg_text.find("no data: 1.5") != std::string::npos);
  CHECK(svg_text.find(">1.5<") == std::string::npos);  // gap not on the axis
  CHECK(svg_text.find("Mann-Kendall: ") != std::string::npos);

  VersionSeries single;
  single.points = {{"a&b", 2.0}};
  const auto one = svg::render_svg(single);
  CHECK(one.find("a&amp;b") != std::string::npos);

  CHECK_THROWS_AS((void)svg::render_svg(VersionSeries{}), AnalysisError);
}
