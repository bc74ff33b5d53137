#pragma once

// Locale-independent number formatting, CSV tables and minimal SVG line plots.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <initializer_list>
#include <limits>
#include <string>
#include <system_error>
#include <utility>
#include <vector>

namespace berger::io {

/// Shortest representation that reads back to the same double.
inline std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, r.ptr);
}

/// `digits` significant digits, general notation.
inline std::string sig(double v, int digits) {
  if (!std::isfinite(v)) return num(v);
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, digits);
  return std::string(buf, r.ptr);
}

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  void add_row(std::initializer_list<double> values) { add_row(std::vector<double>(values)); }
  void add_row(const std::vector<double>& values) {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values) cells.push_back(num(v));
    rows_.push_back(std::move(cells));
  }
  void add_cells(std::vector<std::string> cells) { rows_.push_back(std::move(cells)); }

  std::size_t rows() const { return rows_.size(); }

  std::string str() const {
    std::string out = join(header_);
    for (const auto& r : rows_) out += join(r);
    return out;
  }

 private:
  static std::string join(const std::vector<std::string>& cells) {
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) line += ',';
      line += cells[i];
    }
    line += '\n';
    return line;
  }

  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

namespace detail {

inline std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace detail

/// Polyline plot with a frame, min/max tick labels and a legend.
inline std::string svg_plot(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                            const std::vector<Series>& series) {
  constexpr double W = 640, Hh = 480, L = 70, R = 20, T = 40, B = 50;
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      x0 = std::min(x0, s.x[i]); x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, s.y[i]); y1 = std::max(y1, s.y[i]);
    }
  }
  if (!(x1 > x0)) { x0 -= 0.5; x1 += 0.5; }
  if (!(y1 > y0)) { y0 -= 0.5; y1 += 0.5; }
  auto px = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
  auto py = [&](double y) { return Hh - B - (y - y0) / (y1 - y0) * (Hh - T - B); };
  auto fx = [](double v) { return sig(v, 6); };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" viewBox=\"0 0 640 480\">\n";
  out += "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n";
  out += "<text x=\"320\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" + detail::xml_escape(title) + "</text>\n";
  out += "<rect x=\"" + fx(L) + "\" y=\"" + fx(T) + "\" width=\"" + fx(W - L - R) + "\" height=\"" + fx(Hh - T - B) +
         "\" fill=\"none\" stroke=\"black\"/>\n";
  out += "<text x=\"" + fx(L) + "\" y=\"" + fx(Hh - B + 16) + "\" font-size=\"11\">" + sig(x0, 4) + "</text>\n";
  out += "<text x=\"" + fx(W - R) + "\" y=\"" + fx(Hh - B + 16) + "\" text-anchor=\"end\" font-size=\"11\">" +
         sig(x1, 4) + "</text>\n";
  out += "<text x=\"" + fx(L - 4) + "\" y=\"" + fx(Hh - B) + "\" text-anchor=\"end\" font-size=\"11\">" +
         sig(y0, 4) + "</text>\n";
  out += "<text x=\"" + fx(L - 4) + "\" y=\"" + fx(T + 10) + "\" text-anchor=\"end\" font-size=\"11\">" +
         sig(y1, 4) + "</text>\n";
  out += "<text x=\"" + fx(0.5 * (L + W - R)) + "\" y=\"" + fx(Hh - 12) + "\" text-anchor=\"middle\" font-size=\"13\">" +
         detail::xml_escape(xlabel) + "</text>\n";
  out += "<text x=\"16\" y=\"" + fx(0.5 * (T + Hh - B)) + "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 16 " +
         fx(0.5 * (T + Hh - B)) + ")\">" + detail::xml_escape(ylabel) + "</text>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = colors[k % 6];
    out += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      if (!first) out += ' ';
      out += fx(px(s.x[i])) + "," + fx(py(s.y[i]));
      first = false;
    }
    out += "\"/>\n";
    const double ly = T + 16 + 16.0 * k;
    out += "<line x1=\"" + fx(W - R - 150) + "\" y1=\"" + fx(ly) + "\" x2=\"" + fx(W - R - 126) + "\" y2=\"" + fx(ly) +
           "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
    out += "<text x=\"" + fx(W - R - 120) + "\" y=\"" + fx(ly + 4) + "\" font-size=\"11\">" +
           detail::xml_escape(s.label) + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace berger::io
