#include "qfp/heatmap.hpp"

#include <algorithm>
#include <cstdarg>
#include <cstdio>
#include <iterator>
#include <stdexcept>

namespace qfp {

namespace {

struct Color {
  double r, g, b;
};

// Linear ramp through a handful of viridis anchor colors.
Color colormap(double t) {
  static const Color anchors[] = {
      {0.267, 0.005, 0.329}, {0.283, 0.141, 0.458}, {0.254, 0.265, 0.530},
      {0.207, 0.372, 0.553}, {0.164, 0.471, 0.558}, {0.128, 0.567, 0.551},
      {0.135, 0.659, 0.518}, {0.267, 0.749, 0.441}, {0.478, 0.821, 0.318},
      {0.741, 0.873, 0.150}, {0.993, 0.906, 0.144},
  };
  constexpr int n = static_cast<int>(std::size(anchors));
  t = std::clamp(t, 0.0, 1.0);
  double pos = t * (n - 1);
  int lo = std::min(static_cast<int>(pos), n - 2);
  double frac = pos - lo;
  const Color& a = anchors[lo];
  const Color& b = anchors[lo + 1];
  return {a.r + frac * (b.r - a.r), a.g + frac * (b.g - a.g), a.b + frac * (b.b - a.b)};
}

std::string color_hex(double t) {
  Color c = colormap(t);
  char buf[8];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", static_cast<int>(c.r * 255.0 + 0.5),
                static_cast<int>(c.g * 255.0 + 0.5), static_cast<int>(c.b * 255.0 + 0.5));
  return buf;
}

std::string escape_xml(const std::string& text) {
  std::string out;
  for (char ch : text) {
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

void append_format(std::string& out, const char* fmt, ...) {
  char buf[512];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof(buf), fmt, args);
  va_end(args);
  out += buf;
}

}  // namespace

std::string render_heatmap(const std::vector<std::vector<double>>& matrix,
                           const std::vector<std::string>& labels,
                           const std::string& title) {
  std::size_t n = matrix.size();
  for (const auto& row : matrix) {
    if (row.size() != n) throw std::invalid_argument("heatmap needs a square matrix");
  }
  if (n < 2) throw std::invalid_argument("heatmap needs at least a 2x2 matrix");
  if (!labels.empty() && labels.size() != n) {
    throw std::invalid_argument("label count must match matrix order");
  }

  const double cell = 22.0;
  const double margin_left = 58.0;
  const double margin_top = title.empty() ? 16.0 : 40.0;
  const double margin_bottom = 46.0;
  const double legend_w = 52.0;
  std::size_t cells = n - 1;  // triangle spans rows 1..n-1 and cols 0..n-2
  double plot = cell * static_cast<double>(cells);
  double width = margin_left + plot + legend_w + 16.0;
  double height = margin_top + plot + margin_bottom;

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  append_format(svg,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" "
                "viewBox=\"0 0 %.0f %.0f\">\n",
                width, height, width, height);
  append_format(svg, "<rect width=\"%.0f\" height=\"%.0f\" fill=\"white\"/>\n", width, height);
  if (!title.empty()) {
    append_format(svg,
                  "<text x=\"%.1f\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\" "
                  "text-anchor=\"middle\">%s</text>\n",
                  margin_left + plot / 2.0, escape_xml(title).c_str());
  }

  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      double v = std::clamp(matrix[i][j], 0.0, 1.0);
      double x = margin_left + cell * static_cast<double>(j);
      double y = margin_top + cell * static_cast<double>(i - 1);
      append_format(svg,
                    "<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" "
                    "fill=\"%s\"/>\n",
                    x, y, cell, cell, color_hex(v).c_str());
    }
  }

  for (std::size_t i = 1; i < n; ++i) {
    std::string label = labels.empty() ? std::to_string(i) : labels[i];
    append_format(svg,
                  "<text x=\"%.1f\" y=\"%.1f\" font-family=\"sans-serif\" font-size=\"10\" "
                  "text-anchor=\"end\">%s</text>\n",
                  margin_left - 6.0, margin_top + cell * (static_cast<double>(i - 1) + 0.5) + 3.5,
                  escape_xml(label).c_str());
  }
  for (std::size_t j = 0; j + 1 < n; ++j) {
    std::string label = labels.empty() ? std::to_string(j) : labels[j];
    append_format(svg,
                  "<text x=\"%.1f\" y=\"%.1f\" font-family=\"sans-serif\" font-size=\"10\" "
                  "text-anchor=\"middle\">%s</text>\n",
                  margin_left + cell * (static_cast<double>(j) + 0.5),
                  margin_top + plot + 14.0, escape_xml(label).c_str());
  }

  // Legend: vertical 0..1 ramp next to the triangle.
  double lx = margin_left + plot + 16.0;
  svg += "<defs><linearGradient id=\"scale\" x1=\"0\" y1=\"1\" x2=\"0\" y2=\"0\">\n";
  for (int s = 0; s <= 10; ++s) {
    append_format(svg, "<stop offset=\"%d%%\" stop-color=\"%s\"/>\n", s * 10,
                  color_hex(s / 10.0).c_str());
  }
  svg += "</linearGradient></defs>\n";
  append_format(svg,
                "<rect x=\"%.1f\" y=\"%.1f\" width=\"14\" height=\"%.1f\" "
                "fill=\"url(#scale)\" stroke=\"black\" stroke-width=\"0.5\"/>\n",
                lx, margin_top, plot);
  append_format(svg,
                "<text x=\"%.1f\" y=\"%.1f\" font-family=\"sans-serif\" font-size=\"10\">1</text>\n",
                lx + 18.0, margin_top + 8.0);
  append_format(svg,
                "<text x=\"%.1f\" y=\"%.1f\" font-family=\"sans-serif\" font-size=\"10\">0</text>\n",
                lx + 18.0, margin_top + plot);
  svg += "</svg>\n";
  return svg;
}

}  // namespace qfp
