#ifndef TWOSAMPLE_SVG_HPP
#define TWOSAMPLE_SVG_HPP

#include <algorithm>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "twosample/power.hpp"

namespace twosample {

// Minimal SVG line chart for power curves: rejection rate vs sweep value,
// one polyline per test, legend ordered by mean power (best first).
inline void write_power_svg(std::ostream& os, const PowerCurve& curve) {
  constexpr int kW = 640, kH = 420;
  constexpr int kLeft = 56, kRight = 150, kTop = 28, kBottom = 44;
  const int plot_w = kW - kLeft - kRight;
  const int plot_h = kH - kTop - kBottom;
  static const char* kColors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                  "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

  std::vector<TestMethod> methods;
  std::vector<double> xs;
  for (const auto& c : curve.cells) {
    if (std::find(methods.begin(), methods.end(), c.test) == methods.end())
      methods.push_back(c.test);
    if (std::find(xs.begin(), xs.end(), c.sweep_value) == xs.end())
      xs.push_back(c.sweep_value);
  }
  std::sort(xs.begin(), xs.end());
  const double x_lo = xs.front(), x_hi = xs.back();
  const double x_span = x_hi > x_lo ? x_hi - x_lo : 1.0;

  auto mean_power = [&](TestMethod m) {
    double sum = 0;
    std::size_t count = 0;
    for (const auto& c : curve.cells)
      if (c.test == m) sum += c.rate, ++count;
    return count ? sum / static_cast<double>(count) : 0.0;
  };
  std::stable_sort(methods.begin(), methods.end(),
                   [&](TestMethod a, TestMethod b) {
                     return mean_power(a) > mean_power(b);
                   });

  auto px = [&](double x) {
    return kLeft + (x - x_lo) / x_span * plot_w;
  };
  auto py = [&](double rate) { return kTop + (1.0 - rate) * plot_h; };

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW
     << "\" height=\"" << kH << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"" << kW << "\" height=\"" << kH << "\" fill=\"white\"/>\n";
  os << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w
     << "\" height=\"" << plot_h << "\" fill=\"none\" stroke=\"#333\"/>\n";

  for (int i = 0; i <= 5; ++i) {
    const double rate = i / 5.0;
    os << "<line x1=\"" << kLeft << "\" y1=\"" << py(rate) << "\" x2=\""
       << kLeft + plot_w << "\" y2=\"" << py(rate)
       << "\" stroke=\"#ddd\"/>\n";
    os << "<text x=\"" << kLeft - 8 << "\" y=\"" << py(rate) + 4
       << "\" text-anchor=\"end\">" << std::setprecision(2) << rate
       << "</text>\n";
  }
  for (double x : xs) {
    os << "<text x=\"" << px(x) << "\" y=\"" << kTop + plot_h + 18
       << "\" text-anchor=\"middle\">" << x << "</text>\n";
  }
  os << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kH - 8
     << "\" text-anchor=\"middle\">" << curve.sweep_name << "</text>\n";
  os << "<text x=\"14\" y=\"" << kTop + plot_h / 2
     << "\" transform=\"rotate(-90 14 " << kTop + plot_h / 2
     << ")\" text-anchor=\"middle\">rejection rate</text>\n";

  for (std::size_t m = 0; m < methods.size(); ++m) {
    const char* color = kColors[m % 8];
    std::ostringstream pts;
    for (double x : xs) {
      for (const auto& c : curve.cells)
        if (c.test == methods[m] && c.sweep_value == x)
          pts << px(x) << ',' << py(c.rate) << ' ';
    }
    os << "<polyline fill=\"none\" stroke=\"" << color
       << "\" stroke-width=\"1.5\" points=\"" << pts.str() << "\"/>\n";
    const int ly = kTop + 16 + static_cast<int>(m) * 18;
    os << "<line x1=\"" << kLeft + plot_w + 12 << "\" y1=\"" << ly
       << "\" x2=\"" << kLeft + plot_w + 34 << "\" y2=\"" << ly
       << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << kLeft + plot_w + 40 << "\" y=\"" << ly + 4 << "\">"
       << to_string(methods[m]) << "</text>\n";
  }
  os << "</svg>\n";
}

}  // namespace twosample

#endif  // TWOSAMPLE_SVG_HPP
