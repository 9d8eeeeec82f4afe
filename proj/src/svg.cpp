#include "swstat/svg.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "swstat/error.hpp"

namespace swstat::svg {
namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 24.0;
constexpr double kTop = 48.0;
constexpr double kBottom = 96.0;

std::string fixed(double v, int precision = 2) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, precision);
  std::string s(buf, ptr);
  return s == "-0.00" ? "0.00" : s;
}

std::string general(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 4);
  return std::string(buf, ptr);
}

std::string escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_svg(const VersionSeries& series, const std::optional<trend::TrendResult>& trend) {
  if (series.points.empty()) throw AnalysisError("cannot plot an empty series");

  const auto values = series.values();
  double lo = *std::min_element(values.begin(), values.end());
  double hi = *std::max_element(values.begin(), values.end());
  if (hi - lo <= 0.0) {
    const double pad = lo != 0.0 ? std::abs(lo) * 0.1 : 1.0;
    lo -= pad;
    hi += pad;
  }
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const std::size_t n = series.points.size();
  auto x_at = [&](std::size_t i) {
    return n == 1 ? kLeft + plot_w / 2.0
                  : kLeft + plot_w * static_cast<double>(i) / static_cast<double>(n - 1);
  };
  auto y_at = [&](double v) { return kTop + plot_h * (hi - v) / (hi - lo); };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed(kWidth, 0) + "\" height=\"" +
         fixed(kHeight, 0) + "\" viewBox=\"0 0 " + fixed(kWidth, 0) + " " + fixed(kHeight, 0) +
         "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<text x=\"" + fixed(kWidth / 2.0) + "\" y=\"24.00\" text-anchor=\"middle\" font-size=\"14\">" +
         escape(series.package + " / " + series.metric + " : " + std::string(to_string(series.statistic))) +
         "</text>\n";

  // Axes.
  out += "<g stroke=\"black\" stroke-width=\"1\">\n";
  out += "<line x1=\"" + fixed(kLeft) + "\" y1=\"" + fixed(kTop) + "\" x2=\"" + fixed(kLeft) +
         "\" y2=\"" + fixed(kTop + plot_h) + "\"/>\n";
  out += "<line x1=\"" + fixed(kLeft) + "\" y1=\"" + fixed(kTop + plot_h) + "\" x2=\"" +
         fixed(kLeft + plot_w) + "\" y2=\"" + fixed(kTop + plot_h) + "\"/>\n";
  out += "</g>\n";

  constexpr int kTicks = 5;
  out += "<g text-anchor=\"end\">\n";
  for (int t = 0; t < kTicks; ++t) {
    const double v = lo + (hi - lo) * t / (kTicks - 1);
    const double y = y_at(v);
    out += "<line x1=\"" + fixed(kLeft - 4.0) + "\" y1=\"" + fixed(y) + "\" x2=\"" + fixed(kLeft) +
           "\" y2=\"" + fixed(y) + "\" stroke=\"black\"/>\n";
    out += "<text x=\"" + fixed(kLeft - 6.0) + "\" y=\"" + fixed(y + 4.0) + "\">" + general(v) +
           "</text>\n";
  }
  out += "</g>\n";

  out += "<g text-anchor=\"end\">\n";
  for (std::size_t i = 0; i < n; ++i) {
    const double x = x_at(i);
    const double y = kTop + plot_h + 12.0;
    out += "<text x=\"" + fixed(x) + "\" y=\"" + fixed(y) + "\" transform=\"rotate(-45 " + fixed(x) +
           " " + fixed(y) + ")\">" + escape(series.points[i].version) + "</text>\n";
  }
  out += "</g>\n";

  std::string coords;
  for (std::size_t i = 0; i < n; ++i) {
    if (!coords.empty()) coords += ' ';
    coords += fixed(x_at(i)) + "," + fixed(y_at(values[i]));
  }
  out += "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"" + coords + "\"/>\n";
  out += "<g fill=\"steelblue\">\n";
  for (std::size_t i = 0; i < n; ++i) {
    out += "<circle cx=\"" + fixed(x_at(i)) + "\" cy=\"" + fixed(y_at(values[i])) + "\" r=\"3\"/>\n";
  }
  out += "</g>\n";

  double note_y = kHeight - 24.0;
  if (trend) {
    const double p = trend->decision == trend::Decision::downward ? trend->p_downward
                     : trend->decision == trend::Decision::upward ? trend->p_upward
                                                                   : trend->p_two_sided;
    out += "<text class=\"trend\" x=\"" + fixed(kLeft) + "\" y=\"" + fixed(note_y) +
           "\">Mann-Kendall: " + std::string(to_string(trend->decision)) + ", p = " + general(p) +
           ", alpha = " + general(trend->alpha) + " (" + std::string(to_string(trend->method)) +
           ")</text>\n";
    note_y += 14.0;
  }
  if (!series.gaps.empty()) {
    std::string list;
    for (const auto& g : series.gaps) list += (list.empty() ? "" : ", ") + g;
    out += "<text class=\"gaps\" x=\"" + fixed(kLeft) + "\" y=\"" + fixed(note_y) +
           "\">no data: " + escape(list) + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace swstat::svg
