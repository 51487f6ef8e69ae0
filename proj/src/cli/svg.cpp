#include "oscillab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace oscillab::svg {

namespace {

constexpr double kWidth = 640, kHeight = 420;
constexpr double kLeft = 70, kRight = 20, kTop = 40, kBottom = 50;
constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string tick_label(double log2v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "2^%d", static_cast<int>(std::lround(log2v)));
  return buf;
}

}  // namespace

std::string loglog(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                   const std::vector<Series>& series) {
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!(s.x[i] > 0 && s.y[i] > 0)) continue;
      x0 = std::min(x0, std::log2(s.x[i]));
      x1 = std::max(x1, std::log2(s.x[i]));
      y0 = std::min(y0, std::log2(s.y[i]));
      y1 = std::max(y1, std::log2(s.y[i]));
    }
  }
  if (!(x0 <= x1)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (x1 - x0 < 1) x0 -= 0.5, x1 += 0.5;
  if (y1 - y0 < 1) y0 -= 0.5, y1 += 0.5;
  x0 = std::floor(x0), x1 = std::ceil(x1), y0 = std::floor(y0), y1 = std::ceil(y1);
  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  auto px = [&](double lx) { return kLeft + (lx - x0) / (x1 - x0) * pw; };
  auto py = [&](double ly) { return kTop + (y1 - ly) / (y1 - y0) * ph; };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << num(kWidth / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
      << escape(title) << "</text>\n";
  out << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(pw) << "\" height=\""
      << num(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";
  const int xstep = std::max(1, static_cast<int>((x1 - x0) / 10) + 1);
  for (double t = x0; t <= x1; t += xstep) {
    out << "<line x1=\"" << num(px(t)) << "\" y1=\"" << num(kTop + ph) << "\" x2=\"" << num(px(t)) << "\" y2=\""
        << num(kTop + ph + 5) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << num(px(t)) << "\" y=\"" << num(kTop + ph + 18) << "\" text-anchor=\"middle\">"
        << tick_label(t) << "</text>\n";
  }
  const int ystep = std::max(1, static_cast<int>((y1 - y0) / 8) + 1);
  for (double t = y0; t <= y1; t += ystep) {
    out << "<line x1=\"" << num(kLeft - 5) << "\" y1=\"" << num(py(t)) << "\" x2=\"" << num(kLeft) << "\" y2=\""
        << num(py(t)) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(py(t) + 4) << "\" text-anchor=\"end\">"
        << tick_label(t) << "</text>\n";
  }
  out << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"" << num(kHeight - 10) << "\" text-anchor=\"middle\">"
      << escape(xlabel) << "</text>\n";
  out << "<text x=\"16\" y=\"" << num(kTop + ph / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << num(kTop + ph / 2) << ")\">" << escape(ylabel) << "</text>\n";

  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = kColors[k % std::size(kColors)];
    std::string pts;
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!(s.x[i] > 0 && s.y[i] > 0)) continue;
      pts += num(px(std::log2(s.x[i]))) + "," + num(py(std::log2(s.y[i]))) + " ";
      out << "<circle cx=\"" << num(px(std::log2(s.x[i]))) << "\" cy=\"" << num(py(std::log2(s.y[i])))
          << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    }
    if (!pts.empty()) {
      pts.pop_back();
      out << "<polyline points=\"" << pts << "\" fill=\"none\" stroke=\"" << color << "\"/>\n";
    }
    if (s.fit) {
      const auto [slope, intercept] = *s.fit;
      auto ly = [&](double lx) { return (intercept + slope * lx * std::log(2.0)) / std::log(2.0); };
      out << "<line x1=\"" << num(px(x0)) << "\" y1=\"" << num(py(ly(x0))) << "\" x2=\"" << num(px(x1))
          << "\" y2=\"" << num(py(ly(x1))) << "\" stroke=\"" << color
          << "\" stroke-dasharray=\"5,4\" clip-path=\"url(#plot)\"/>\n";
    }
    out << "<text x=\"" << num(kLeft + 10) << "\" y=\"" << num(kTop + 16 + 14 * static_cast<double>(k))
        << "\" fill=\"" << color << "\">" << escape(s.label) << "</text>\n";
  }
  out << "<defs><clipPath id=\"plot\"><rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\""
      << num(pw) << "\" height=\"" << num(ph) << "\"/></clipPath></defs>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace oscillab::svg
