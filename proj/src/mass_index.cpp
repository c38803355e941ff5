#include "tentgrid/mass_index.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tentgrid {

double power_profile_integral(double y0, double y1, double alpha) {
  if (!(y1 > y0)) return 0.0;
  if (alpha == 0.0) return y1 - y0;
  if (alpha == -1.0) return std::log(y1 / y0);
  double e = alpha + 1.0;
  return (std::pow(y1, e) - std::pow(y0, e)) / e;
}

MassIndex::MassIndex(const Window& window, std::span<const double> cell_values, double alpha)
    : window_(window), alpha_(alpha) {
  if (static_cast<int>(cell_values.size()) != window.cell_count())
    throw std::invalid_argument("MassIndex: cell value count does not match the window");
  unit_values_.resize(window.depth + 1);
  prefix_.resize(window.depth + 1);
  for (int d = 0; d <= window.depth; ++d) {
    int s = window.scale_of_level(d);
    int cut = Window::cut_units(s);
    std::int64_t tiles = std::int64_t{1} << d;
    auto& vals = unit_values_[d];
    auto& pre = prefix_[d];
    vals.resize(3 * tiles);
    pre.assign(3 * tiles + 1, 0.0L);
    for (std::int64_t m = 0; m < tiles; ++m) {
      int t = Window::tile_index(d, m);
      for (int u = 0; u < 3; ++u) vals[3 * m + u] = cell_values[2 * t + (u >= cut ? 1 : 0)];
    }
    for (std::size_t u = 0; u < vals.size(); ++u) pre[u + 1] = pre[u] + vals[u];
  }
}

double MassIndex::unit_width(int level) const {
  return std::ldexp(1.0, window_.scale_of_level(level)) / 3.0;
}

long double MassIndex::band_prefix(int level, const GridCoord& x) const {
  const auto& pre = prefix_[level];
  const auto units = static_cast<std::int64_t>(pre.size()) - 1;
  double frac = 0.0;
  std::int64_t u = (x + x + x).floor_div_pow2(window_.scale_of_level(level), &frac);
  if (u < 0) return 0.0L;
  if (u >= units) return pre[units];
  return pre[u] + static_cast<long double>(frac) * unit_values_[level][u];
}

double MassIndex::band_profile(int level) const {
  int s = window_.scale_of_level(level);
  return power_profile_integral(std::ldexp(1.0, s - 1), std::ldexp(1.0, s), alpha_);
}

double MassIndex::band_profile(int level, double y0, double y1) const {
  int s = window_.scale_of_level(level);
  double lo = std::max(y0, std::ldexp(1.0, s - 1));
  double hi = std::min(y1, std::ldexp(1.0, s));
  return power_profile_integral(lo, hi, alpha_);
}

double MassIndex::rect(const GridCoord& x0, const GridCoord& x1, double y0, double y1) const {
  if (!(x0 < x1) || !(y1 > y0)) return 0.0;
  long double total = 0.0L;
  for (int d = 0; d <= window_.depth; ++d) {
    double prof = band_profile(d, y0, y1);
    if (prof <= 0.0) continue;
    long double across = band_prefix(d, x1) - band_prefix(d, x0);
    total += across * unit_width(d) * prof;
  }
  return static_cast<double>(total);
}

}  // namespace tentgrid
