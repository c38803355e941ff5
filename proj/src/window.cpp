#include "tentgrid/window.hpp"

#include <bit>
#include <cmath>

namespace tentgrid {

using dyadic::Beta;
using dyadic::DyadicInterval;
using dyadic::Interval;

int Window::level_of(int tile) {
  return std::bit_width(static_cast<unsigned>(tile + 1)) - 1;
}

DyadicInterval Window::tile_interval(int tile) const {
  int d = level_of(tile);
  std::int64_t m = tile - ((std::int64_t{1} << d) - 1);
  return {Beta::Zero, top_scale - d, m};
}

Interval Window::cell_x(int cell) const {
  DyadicInterval t = tile_interval(cell / 2);
  GridCoord cut = t.left() + GridCoord::from_parts(cut_units(t.scale), 0).mul_pow2(t.scale);
  if (cell % 2 == 0) return {t.left(), cut};
  return {cut, t.right()};
}

double Window::cell_y_lo(int cell) const { return std::ldexp(1.0, cell_scale(cell) - 1); }

double Window::cell_y_hi(int cell) const { return std::ldexp(1.0, cell_scale(cell)); }

Point Window::cell_center(int cell) const {
  Interval x = cell_x(cell);
  int s = cell_scale(cell);
  // (x.lo + x.hi) / 2 and 3/4 of the band top
  GridCoord cx = (x.lo + x.hi).mul_pow2(-1);
  GridCoord cy = GridCoord::dyadic(3, s - 2);
  return {cx, cy};
}

double Window::cell_area(int cell) const {
  Interval x = cell_x(cell);
  return x.length().to_double() * std::ldexp(1.0, cell_scale(cell) - 1);
}

std::optional<int> Window::locate_cell(const Point& z) const {
  if (!z.y.is_positive()) return std::nullopt;
  int s = z.y.floor_log2() + 1;
  if (s < leaf_scale() || s > top_scale) return std::nullopt;
  if (!root_interval().contains(z.x)) return std::nullopt;
  int level = top_scale - s;
  DyadicInterval t = dyadic::locate(z.x, s, Beta::Zero);
  int tile = tile_index(level, t.index);
  GridCoord v = (z.x - t.left()).mul_pow2(-s);
  std::int64_t u = (v + v + v).floor_div_pow2(0);
  return 2 * tile + (u >= cut_units(s) ? 1 : 0);
}

}  // namespace tentgrid
