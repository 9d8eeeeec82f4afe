#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>

#include "swstat/dataset.hpp"
#include "swstat/diversity.hpp"
#include "swstat/error.hpp"
#include "swstat/halstead.hpp"
#include "swstat/inequality.hpp"
#include "swstat/trend.hpp"
#include "swstat/version.hpp"

namespace py = pybind11;
using namespace pybind11::literals;

namespace {

swstat::diversity::AbundanceVector abundance_from(const std::map<std::string, std::uint64_t>& counts) {
  return swstat::diversity::AbundanceVector(
      std::vector<std::pair<std::string, std::uint64_t>>(counts.begin(), counts.end()));
}

template <typename Fn>
void def_diversity(py::module_& m, const char* name, Fn fn, const char* doc) {
  m.def(name, [fn](const std::vector<std::uint64_t>& counts) {
    return fn(swstat::diversity::AbundanceVector::from_counts(counts));
  }, "counts"_a, doc);
  m.def(name, [fn](const std::map<std::string, std::uint64_t>& counts) {
    return fn(abundance_from(counts));
  }, "counts"_a, doc);
}

}  // namespace

PYBIND11_MODULE(_swstat, m) {
  m.doc() = "Inequality, trend and diversity statistics for software metrics";
  m.attr("__version__") = std::string(swstat::kToolVersion);

  py::register_exception<swstat::InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<swstat::AnalysisError>(m, "AnalysisError", PyExc_ValueError);

  // Inequality
  py::class_<swstat::ineq::InequalityReport>(m, "InequalityReport")
      .def_readonly("gini", &swstat::ineq::InequalityReport::gini)
      .def_readonly("pietra", &swstat::ineq::InequalityReport::pietra)
      .def_readonly("theil", &swstat::ineq::InequalityReport::theil)
      .def_readonly("atkinson", &swstat::ineq::InequalityReport::atkinson)
      .def_readonly("epsilon", &swstat::ineq::InequalityReport::epsilon)
      .def_readonly("n", &swstat::ineq::InequalityReport::n);

  m.def("gini", [](const std::vector<double>& v) { return swstat::ineq::gini(v); }, "values"_a);
  m.def("pietra", [](const std::vector<double>& v) { return swstat::ineq::pietra(v); }, "values"_a);
  m.def("theil", [](const std::vector<double>& v) { return swstat::ineq::theil(v); }, "values"_a);
  m.def("atkinson",
        [](const std::vector<double>& v, double eps) { return swstat::ineq::atkinson(v, eps); },
        "values"_a, "epsilon"_a = swstat::ineq::kDefaultAversion);
  m.def("lorenz_points", [](const std::vector<double>& v) { return swstat::ineq::lorenz_points(v); },
        "values"_a);
  m.def("inequality_report",
        [](const std::vector<double>& v, double eps) { return swstat::ineq::report(v, eps); },
        "values"_a, "epsilon"_a = swstat::ineq::kDefaultAversion);

  // Trend
  py::class_<swstat::trend::TrendResult>(m, "TrendResult")
      .def_readonly("s", &swstat::trend::TrendResult::s)
      .def_readonly("var_s", &swstat::trend::TrendResult::var_s)
      .def_readonly("z", &swstat::trend::TrendResult::z)
      .def_readonly("tau", &swstat::trend::TrendResult::tau)
      .def_readonly("p_two_sided", &swstat::trend::TrendResult::p_two_sided)
      .def_readonly("p_upward", &swstat::trend::TrendResult::p_upward)
      .def_readonly("p_downward", &swstat::trend::TrendResult::p_downward)
      .def_readonly("alpha", &swstat::trend::TrendResult::alpha)
      .def_property_readonly("method", [](const swstat::trend::TrendResult& t) {
        return std::string(swstat::trend::to_string(t.method));
      })
      .def_property_readonly("decision", [](const swstat::trend::TrendResult& t) {
        return std::string(swstat::trend::to_string(t.decision));
      });

  m.def("mk_s", [](const std::vector<double>& s) { return swstat::trend::mk_s(s); }, "series"_a);
  m.def("mk_variance", [](const std::vector<double>& s) { return swstat::trend::mk_variance(s); },
        "series"_a);
  m.def("mk_test",
        [](const std::vector<double>& s, double alpha) { return swstat::trend::mk_test(s, alpha); },
        "series"_a, "alpha"_a = swstat::trend::kDefaultAlpha);
  m.def("kendall_tau_b", [](const std::vector<double>& s) { return swstat::trend::kendall_tau_b(s); },
        "series"_a);
  m.def("sen_slope", [](const std::vector<double>& s) { return swstat::trend::sen_slope(s); },
        "series"_a);

  // Diversity; counts may be a list or a {category: count} dict.
  def_diversity(m, "shannon", &swstat::diversity::shannon, "Shannon entropy (natural log)");
  def_diversity(m, "simpson", &swstat::diversity::simpson, "Simpson concentration sum p^2");
  def_diversity(m, "gini_simpson", &swstat::diversity::gini_simpson, "1 - Simpson");
  def_diversity(m, "evenness", &swstat::diversity::evenness, "Pielou evenness");

  // Halstead
  py::class_<swstat::halstead::TokenCounts>(m, "TokenCounts")
      .def(py::init([](std::size_t n1, std::size_t n2, std::size_t N1, std::size_t N2) {
             return swstat::halstead::TokenCounts{n1, n2, N1, N2};
           }),
           "n1"_a, "n2"_a, "N1"_a, "N2"_a)
      .def_readonly("n1", &swstat::halstead::TokenCounts::n1)
      .def_readonly("n2", &swstat::halstead::TokenCounts::n2)
      .def_readonly("N1", &swstat::halstead::TokenCounts::N1)
      .def_readonly("N2", &swstat::halstead::TokenCounts::N2)
      .def("__eq__", &swstat::halstead::TokenCounts::operator==);

  py::class_<swstat::halstead::HalsteadMeasures>(m, "HalsteadMeasures")
      .def_readonly("vocabulary", &swstat::halstead::HalsteadMeasures::vocabulary)
      .def_readonly("length", &swstat::halstead::HalsteadMeasures::length)
      .def_readonly("volume", &swstat::halstead::HalsteadMeasures::volume)
      .def_readonly("difficulty", &swstat::halstead::HalsteadMeasures::difficulty)
      .def_readonly("effort", &swstat::halstead::HalsteadMeasures::effort);

  m.def("tokenize", [](std::string_view source) {
    std::vector<std::tuple<std::string, std::string, std::size_t>> out;
    for (auto& t : swstat::halstead::tokenize(source)) {
      out.emplace_back(std::move(t.text),
                       t.cls == swstat::halstead::TokenClass::op ? "operator" : "operand", t.line);
    }
    return out;
  }, "source"_a, "List of (text, class, line) tuples");
  m.def("halstead_counts", [](std::string_view source) {
    return swstat::halstead::halstead_counts(swstat::halstead::tokenize(source));
  }, "source"_a);
  m.def("halstead_measures", &swstat::halstead::halstead_measures, "counts"_a);

  // Dataset and pipeline
  py::class_<swstat::Record>(m, "Record")
      .def_readonly("version", &swstat::Record::version)
      .def_readonly("package", &swstat::Record::package)
      .def_readonly("entity", &swstat::Record::entity)
      .def_readonly("metric", &swstat::Record::metric)
      .def_readonly("value", &swstat::Record::value);

  m.def("extract_file", &swstat::halstead::extract_file, "source"_a, "version"_a, "package"_a,
        "entity"_a);

  py::class_<swstat::MetricsDataset>(m, "MetricsDataset")
      .def_property_readonly("records", &swstat::MetricsDataset::records)
      .def_property_readonly("version_order", &swstat::MetricsDataset::version_order)
      .def("packages", &swstat::MetricsDataset::packages, "metric"_a = std::string_view{});

  m.def("load_manifest", &swstat::load_manifest, "text"_a);
  m.def("load_csv", &swstat::load_csv, "text"_a, "version_order"_a = py::none());
  m.def("slice_distribution", &swstat::slice_distribution, "dataset"_a, "version"_a, "package"_a,
        "metric"_a);

  py::class_<swstat::VersionSeries>(m, "VersionSeries")
      .def_readonly("package", &swstat::VersionSeries::package)
      .def_readonly("metric", &swstat::VersionSeries::metric)
      .def_property_readonly("statistic", [](const swstat::VersionSeries& s) {
        return std::string(swstat::to_string(s.statistic));
      })
      .def_property_readonly("points", [](const swstat::VersionSeries& s) {
        std::vector<std::pair<std::string, double>> out;
        for (const auto& p : s.points) out.emplace_back(p.version, p.value);
        return out;
      })
      .def_readonly("gaps", &swstat::VersionSeries::gaps);

  py::class_<swstat::SeriesBuild>(m, "SeriesBuild")
      .def_readonly("series", &swstat::SeriesBuild::series)
      .def_readonly("inequality", &swstat::SeriesBuild::inequality);

  py::class_<swstat::PipelineResult>(m, "PipelineResult")
      .def_readonly("series", &swstat::PipelineResult::series)
      .def_readonly("inequality", &swstat::PipelineResult::inequality)
      .def_readonly("trend", &swstat::PipelineResult::trend);

  m.def("build_series",
        [](const swstat::MetricsDataset& ds, std::string_view package, std::string_view metric,
           std::string_view statistic, double epsilon) {
          return swstat::build_series(ds, package, metric, swstat::parse_statistic(statistic), epsilon);
        },
        "dataset"_a, "package"_a, "metric"_a, "statistic"_a = "gini",
        "epsilon"_a = swstat::ineq::kDefaultAversion);
  m.def("run_pipeline",
        [](const swstat::MetricsDataset& ds, std::string_view package, std::string_view metric,
           std::string_view statistic, double epsilon, double alpha) {
          return swstat::run_pipeline(ds, package, metric, swstat::parse_statistic(statistic), epsilon,
                                      alpha);
        },
        "dataset"_a, "package"_a, "metric"_a, "statistic"_a = "gini",
        "epsilon"_a = swstat::ineq::kDefaultAversion, "alpha"_a = swstat::trend::kDefaultAlpha);
}
