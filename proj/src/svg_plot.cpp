#include "qsd/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qsd {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kMarginLeft = 78.0;
constexpr double kMarginRight = 24.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 58.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                          "#9467bd", "#ff7f0e", "#8c564b"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string sci_label(int exponent) {
  if (exponent == 0) return "1";
  std::ostringstream ss;
  ss << "1e" << exponent;
  return ss.str();
}

}  // namespace

void write_svg_plot(const PlotSpec& spec, const std::string& path) {
  double x_min = 1e300, x_max = -1e300;
  double y_min = 1e300, y_max = -1e300;
  bool any = false;
  for (const PlotSeries& s : spec.series) {
    for (const PlotPoint& p : s.points) {
      if (!(p.y > 0.0)) continue;  // log axis
      any = true;
      x_min = std::min(x_min, p.x);
      x_max = std::max(x_max, p.x);
      y_min = std::min(y_min, std::max(p.y - p.y_err, p.y * 0.5));
      y_max = std::max(y_max, p.y + p.y_err);
    }
  }
  if (!any) throw std::runtime_error("nothing to plot: no positive values");
  if (x_max == x_min) {
    x_min -= 0.5;
    x_max += 0.5;
  }

  const int dec_lo = static_cast<int>(std::floor(std::log10(y_min)));
  const int dec_hi = static_cast<int>(std::ceil(std::log10(y_max)));
  const double ly_lo = dec_lo, ly_hi = std::max(dec_hi, dec_lo + 1) + 0.0;

  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  auto sx = [&](double x) {
    return kMarginLeft + (x - x_min) / (x_max - x_min) * plot_w;
  };
  auto sy = [&](double y) {
    const double ly = std::log10(std::max(y, std::pow(10.0, ly_lo)));
    return kMarginTop + (ly_hi - ly) / (ly_hi - ly_lo) * plot_h;
  };

  std::ostringstream svg;
  svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kWidth
      << "' height='" << kHeight << "' viewBox='0 0 " << kWidth << " "
      << kHeight << "'>\n";
  svg << "<rect width='100%' height='100%' fill='white'/>\n";

  // frame
  svg << "<rect x='" << num(kMarginLeft) << "' y='" << num(kMarginTop)
      << "' width='" << num(plot_w) << "' height='" << num(plot_h)
      << "' fill='none' stroke='black'/>\n";

  // y decade ticks and gridlines
  for (int d = dec_lo; d <= static_cast<int>(ly_hi); ++d) {
    const double y = sy(std::pow(10.0, d));
    svg << "<line x1='" << num(kMarginLeft) << "' y1='" << num(y) << "' x2='"
        << num(kMarginLeft + plot_w) << "' y2='" << num(y)
        << "' stroke='#dddddd'/>\n";
    svg << "<text x='" << num(kMarginLeft - 8) << "' y='" << num(y + 4)
        << "' text-anchor='end' font-size='12'>" << sci_label(d)
        << "</text>\n";
  }

  // x ticks: integers when the span is small and integral, else ~6 steps
  const double span = x_max - x_min;
  double step;
  if (span <= 12.5 && std::floor(x_min) == x_min && std::floor(span) == span) {
    step = std::max(1.0, std::floor(span / 10.0));
  } else {
    step = std::pow(10.0, std::floor(std::log10(span / 5.0)));
    if (span / step > 10.0) step *= 2.0;
    if (span / step > 10.0) step *= 2.5;
  }
  for (double x = std::ceil(x_min / step) * step; x <= x_max + 1e-9;
       x += step) {
    const double px = sx(x);
    svg << "<line x1='" << num(px) << "' y1='" << num(kMarginTop + plot_h)
        << "' x2='" << num(px) << "' y2='" << num(kMarginTop + plot_h + 5)
        << "' stroke='black'/>\n";
    char lab[32];
    std::snprintf(lab, sizeof(lab), "%g", x);
    svg << "<text x='" << num(px) << "' y='" << num(kMarginTop + plot_h + 20)
        << "' text-anchor='middle' font-size='12'>" << lab << "</text>\n";
  }

  // axis labels and title
  svg << "<text x='" << num(kMarginLeft + plot_w / 2) << "' y='"
      << num(kHeight - 14) << "' text-anchor='middle' font-size='14'>"
      << spec.x_label << "</text>\n";
  svg << "<text x='18' y='" << num(kMarginTop + plot_h / 2)
      << "' text-anchor='middle' font-size='14' transform='rotate(-90 18 "
      << num(kMarginTop + plot_h / 2) << ")'>" << spec.y_label << "</text>\n";
  if (!spec.title.empty())
    svg << "<text x='" << num(kMarginLeft + plot_w / 2)
        << "' y='24' text-anchor='middle' font-size='15'>" << spec.title
        << "</text>\n";

  // series
  for (size_t si = 0; si < spec.series.size(); ++si) {
    const PlotSeries& s = spec.series[si];
    const char* color = kPalette[si % (sizeof(kPalette) / sizeof(*kPalette))];
    if (s.line) {
      svg << "<polyline fill='none' stroke='" << color
          << "' stroke-width='1.6' points='";
      for (const PlotPoint& p : s.points)
        if (p.y > 0.0) svg << num(sx(p.x)) << ',' << num(sy(p.y)) << ' ';
      svg << "'/>\n";
    } else {
      for (const PlotPoint& p : s.points) {
        if (!(p.y > 0.0)) continue;
        const double px = sx(p.x), py = sy(p.y);
        if (p.y_err > 0.0) {
          const double y_hi = sy(p.y + p.y_err);
          const double y_lo = sy(std::max(p.y - p.y_err, 1e-300));
          svg << "<line x1='" << num(px) << "' y1='" << num(y_hi) << "' x2='"
              << num(px) << "' y2='" << num(y_lo) << "' stroke='" << color
              << "'/>\n";
        }
        svg << "<circle cx='" << num(px) << "' cy='" << num(py)
            << "' r='3' fill='" << color << "'/>\n";
      }
    }
  }

  // legend
  const double lx = kMarginLeft + plot_w - 190.0;
  double ly = kMarginTop + 12.0;
  for (size_t si = 0; si < spec.series.size(); ++si) {
    const PlotSeries& s = spec.series[si];
    const char* color = kPalette[si % (sizeof(kPalette) / sizeof(*kPalette))];
    if (s.line) {
      svg << "<line x1='" << num(lx) << "' y1='" << num(ly - 4) << "' x2='"
          << num(lx + 22) << "' y2='" << num(ly - 4) << "' stroke='" << color
          << "' stroke-width='1.6'/>\n";
    } else {
      svg << "<circle cx='" << num(lx + 11) << "' cy='" << num(ly - 4)
          << "' r='3' fill='" << color << "'/>\n";
    }
    svg << "<text x='" << num(lx + 28) << "' y='" << num(ly)
        << "' font-size='12'>" << s.label << "</text>\n";
    ly += 16.0;
  }

  svg << "</svg>\n";

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << svg.str();
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace qsd
