#include "drpkit/io/svg.hpp"

#include <cstdio>

namespace drpkit::io {

namespace {

constexpr double kLeft = 70.0;
constexpr double kTop = 40.0;
constexpr double kSide = 400.0;
constexpr double kWidth = 720.0;
constexpr double kHeight = 520.0;

const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                               "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

double px(double c) { return kLeft + c * kSide; }
double py(double e) { return kTop + (1.0 - e) * kSide; }

std::string escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

}  // namespace

std::string default_label(const CoverageTable& table) {
  if (auto it = table.meta.find("label"); it != table.meta.end() && !it->second.empty()) {
    return it->second;
  }
  std::string label;
  if (auto it = table.meta.find("method"); it != table.meta.end()) label = it->second;
  if (auto it = table.meta.find("policy"); it != table.meta.end() && !it->second.empty() &&
                                           it->second != "none") {
    label += " " + it->second;
  }
  return label.empty() ? "curve" : label;
}

std::string render_coverage_svg(const std::vector<PlotSeries>& series, const std::string& title) {
  if (series.empty()) throw Error("plot: no series");
  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" +
       num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) + "\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!title.empty()) {
    s += "<text x=\"" + num(px(0.5)) + "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"15\">" + escape(title) + "</text>\n";
  }

  // bands first so curves draw over them
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& t = series[i].table;
    std::string pts;
    for (std::size_t k = 0; k < t.credibility.size(); ++k) {
      pts += num(px(t.credibility[k])) + "," + num(py(t.band_hi[k])) + " ";
    }
    for (std::size_t k = t.credibility.size(); k-- > 0;) {
      pts += num(px(t.credibility[k])) + "," + num(py(t.band_lo[k])) + " ";
    }
    s += "<polygon class=\"band\" points=\"" + pts + "\" fill=\"" + kColors[i % 8] +
         "\" fill-opacity=\"0.15\" stroke=\"none\"/>\n";
  }

  // axes, ticks, grid
  s += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" + num(kSide) +
       "\" height=\"" + num(kSide) + "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 5; ++k) {
    const double v = k / 5.0;
    s += "<line x1=\"" + num(px(v)) + "\" y1=\"" + num(py(0)) + "\" x2=\"" + num(px(v)) +
         "\" y2=\"" + num(py(0) + 5) + "\" stroke=\"black\"/>\n";
    s += "<line x1=\"" + num(px(0) - 5) + "\" y1=\"" + num(py(v)) + "\" x2=\"" + num(px(0)) +
         "\" y2=\"" + num(py(v)) + "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + num(px(v)) + "\" y=\"" + num(py(0) + 20) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" + num(v).substr(0, 3) +
         "</text>\n";
    s += "<text x=\"" + num(px(0) - 9) + "\" y=\"" + num(py(v) + 4) +
         "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" + num(v).substr(0, 3) +
         "</text>\n";
  }
  s += "<text x=\"" + num(px(0.5)) + "\" y=\"" + num(py(0) + 42) +
       "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">Credibility level 1 - alpha</text>\n";
  s += "<text x=\"20\" y=\"" + num(py(0.5)) + "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
       "font-size=\"13\" transform=\"rotate(-90 20 " + num(py(0.5)) + ")\">Expected coverage</text>\n";

  s += "<line class=\"diagonal\" x1=\"" + num(px(0)) + "\" y1=\"" + num(py(0)) + "\" x2=\"" +
       num(px(1)) + "\" y2=\"" + num(py(1)) + "\" stroke=\"gray\" stroke-dasharray=\"6,4\"/>\n";

  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& t = series[i].table;
    std::string pts;
    for (std::size_t k = 0; k < t.credibility.size(); ++k) {
      pts += num(px(t.credibility[k])) + "," + num(py(t.ecp[k])) + " ";
    }
    s += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" + kColors[i % 8] +
         "\" stroke-width=\"2\"/>\n";
  }

  // legend
  const double lx = px(1) + 20;
  double ly = kTop + 10;
  for (std::size_t i = 0; i < series.size(); ++i) {
    s += "<g class=\"legend-entry\"><rect x=\"" + num(lx) + "\" y=\"" + num(ly - 9) +
         "\" width=\"18\" height=\"10\" fill=\"" + kColors[i % 8] + "\" fill-opacity=\"0.15\"/>"
         "<line x1=\"" + num(lx) + "\" y1=\"" + num(ly - 4) + "\" x2=\"" + num(lx + 18) + "\" y2=\"" +
         num(ly - 4) + "\" stroke=\"" + kColors[i % 8] + "\" stroke-width=\"2\"/>"
         "<text x=\"" + num(lx + 24) + "\" y=\"" + num(ly) +
         "\" font-family=\"sans-serif\" font-size=\"12\">" + escape(series[i].label) + "</text></g>\n";
    ly += 20;
  }
  s += "<text x=\"" + num(lx) + "\" y=\"" + num(ly + 6) +
       "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#444\">dashed: ecp = 1 - alpha</text>\n";
  s += "<text x=\"" + num(lx) + "\" y=\"" + num(ly + 22) +
       "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#444\">shaded: pointwise 3 sigma binomial</text>\n";
  s += "<text x=\"" + num(lx) + "\" y=\"" + num(ly + 36) +
       "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#444\">band (added by drpkit)</text>\n";
  s += "</svg>\n";
  return s;
}

}  // namespace drpkit::io
