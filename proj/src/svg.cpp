#include "tireval/svg.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "tireval/numeric.hpp"

namespace tireval {

namespace {

constexpr int kWidth = 640;
constexpr int kHeight = 480;
constexpr int kMargin = 60;

std::string px(double value) { return fixed_double(value, 2); }

std::string escape(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (const char ch : text) {
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

struct Range {
  double lo = 0.0;
  double hi = 1.0;

  void include(double value) {
    lo = std::min(lo, value);
    hi = std::max(hi, value);
  }

  void pad() {
    if (hi == lo) {
      lo -= 0.5;
      hi += 0.5;
      return;
    }
    const double slack = 0.1 * (hi - lo);
    lo -= slack;
    hi += slack;
  }

  double at(double value, double from, double to) const {
    return from + (value - lo) / (hi - lo) * (to - from);
  }
};

void open_svg(std::ostringstream& out) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
  out << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
}

void text_at(std::ostringstream& out, double x, double y, const std::string& label,
             const char* anchor = "start", int size = 12) {
  out << "<text x=\"" << px(x) << "\" y=\"" << px(y) << "\" font-family=\"sans-serif\" font-size=\""
      << size << "\" text-anchor=\"" << anchor << "\">" << escape(label) << "</text>\n";
}

void line(std::ostringstream& out, double x1, double y1, double x2, double y2, const char* stroke,
          const char* dash = nullptr) {
  out << "<line x1=\"" << px(x1) << "\" y1=\"" << px(y1) << "\" x2=\"" << px(x2) << "\" y2=\""
      << px(y2) << "\" stroke=\"" << stroke << "\" stroke-width=\"1\"";
  if (dash != nullptr) {
    out << " stroke-dasharray=\"" << dash << "\"";
  }
  out << "/>\n";
}

}  // namespace

std::string scatter_svg(std::span<const ScatterPoint> points, const std::string& title) {
  std::ostringstream out;
  open_svg(out);

  // The ideal point (1, 0) is always in frame so the reference lines cross
  // inside the plot.
  Range x{1.0, 1.0};
  Range y{0.0, 0.0};
  for (const auto& point : points) {
    x.include(point.er);
    y.include(point.delta_ri);
  }
  x.pad();
  y.pad();

  const double left = kMargin;
  const double right = kWidth - kMargin;
  const double top = kMargin;
  const double bottom = kHeight - kMargin;

  if (!title.empty()) {
    text_at(out, kWidth / 2.0, kMargin / 2.0, title, "middle", 14);
  }

  // Frame and reference lines.
  out << "<rect x=\"" << px(left) << "\" y=\"" << px(top) << "\" width=\"" << px(right - left)
      << "\" height=\"" << px(bottom - top)
      << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
  line(out, x.at(1.0, left, right), top, x.at(1.0, left, right), bottom, "gray", "4,4");
  line(out, left, y.at(0.0, bottom, top), right, y.at(0.0, bottom, top), "gray", "4,4");

  text_at(out, (left + right) / 2.0, kHeight - kMargin / 3.0, "ER", "middle");
  text_at(out, kMargin / 3.0, (top + bottom) / 2.0, "dRI", "middle");
  text_at(out, left, bottom + 16, fixed_double(x.lo, 2), "middle", 10);
  text_at(out, right, bottom + 16, fixed_double(x.hi, 2), "middle", 10);
  text_at(out, left - 6, bottom + 4, fixed_double(y.lo, 2), "end", 10);
  text_at(out, left - 6, top + 4, fixed_double(y.hi, 2), "end", 10);

  for (const auto& point : points) {
    const double cx = x.at(point.er, left, right);
    const double cy = y.at(point.delta_ri, bottom, top);
    out << "<circle cx=\"" << px(cx) << "\" cy=\"" << px(cy)
        << "\" r=\"4\" fill=\"steelblue\"/>\n";
    if (!point.label.empty()) {
      text_at(out, cx + 6, cy - 6, point.label, "start", 10);
    }
  }
  out << "</svg>\n";
  return out.str();
}

std::string evolution_svg(const EvolutionStats& stats) {
  struct Segment {
    const char* label;
    std::size_t count;
    const char* fill;
  };
  const Segment segments[] = {{"removed", stats.removed, "#c0392b"},
                              {"decreased", stats.decreased, "#e67e22"},
                              {"unchanged", stats.unchanged, "#95a5a6"},
                              {"increased", stats.increased, "#27ae60"},
                              {"added", stats.added, "#2980b9"}};
  std::size_t total = 0;
  for (const auto& segment : segments) {
    total += segment.count;
  }
  if (total == 0) {
    throw std::invalid_argument("nothing to plot: the diff is empty");
  }

  std::ostringstream out;
  open_svg(out);
  text_at(out, kWidth / 2.0, kMargin / 2.0,
          stats.ee1_label + " to " + stats.ee2_label + " (" +
              std::to_string(stats.urls_ee1) + " to " + std::to_string(stats.urls_ee2) + " URLs)",
          "middle", 14);

  const double left = kMargin;
  const double bar_width = kWidth - 2.0 * kMargin;
  const double bar_top = 160.0;
  const double bar_height = 80.0;

  double cursor = left;
  for (const auto& segment : segments) {
    const double width = bar_width * static_cast<double>(segment.count) /
                         static_cast<double>(total);
    if (segment.count > 0) {
      out << "<rect x=\"" << px(cursor) << "\" y=\"" << px(bar_top) << "\" width=\"" << px(width)
          << "\" height=\"" << px(bar_height) << "\" fill=\"" << segment.fill
          << "\" stroke=\"white\" stroke-width=\"1\"/>\n";
    }
    cursor += width;
  }

  double legend_y = bar_top + bar_height + 50.0;
  for (const auto& segment : segments) {
    out << "<rect x=\"" << px(left) << "\" y=\"" << px(legend_y - 10) << "\" width=\"12\""
        << " height=\"12\" fill=\"" << segment.fill << "\"/>\n";
    text_at(out, left + 20, legend_y, std::string(segment.label) + ": " +
                                          std::to_string(segment.count));
    legend_y += 20.0;
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace tireval
