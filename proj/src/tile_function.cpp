#include "tentgrid/tile_function.hpp"

#include <cmath>
#include <stdexcept>

namespace tentgrid {

TileFunction TileFunction::from_tiles(const Window& w, std::span<const double> tile_values) {
  if (static_cast<int>(tile_values.size()) != w.tile_count())
    throw std::invalid_argument("tile function: expected " + std::to_string(w.tile_count()) + " tile values");
  TileFunction f{w, std::vector<double>(w.cell_count())};
  for (int t = 0; t < w.tile_count(); ++t) f.cells[2 * t] = f.cells[2 * t + 1] = tile_values[t];
  return f;
}

std::vector<int> cells_in_box(const Window& w, const dyadic::Interval& I) {
  std::vector<int> out;
  double top = I.length().to_double();
  for (int c = 0; c < w.cell_count(); ++c) {
    if (w.cell_y_lo(c) >= top) continue;
    dyadic::Interval x = w.cell_x(c);
    if (!x.intersects(I)) continue;
    if (!I.contains(x) || w.cell_y_hi(c) > top)
      throw std::invalid_argument("box is not resolved by the refined mesh");
    out.push_back(c);
  }
  return out;
}

TileFunction TileFunction::box_indicator(const Window& w, const dyadic::Interval& I) {
  TileFunction f = zero(w);
  for (int c : cells_in_box(w, I)) f.cells[c] = 1.0;
  return f;
}

double TileFunction::at(const Point& z) const {
  auto c = window.locate_cell(z);
  return c ? cells[*c] : 0.0;
}

bool TileFunction::is_tile_constant() const {
  for (std::size_t t = 0; 2 * t < cells.size(); ++t)
    if (cells[2 * t] != cells[2 * t + 1]) return false;
  return true;
}

std::vector<double> TileFunction::tile_values() const {
  if (!is_tile_constant()) throw std::logic_error("function is not constant on tiles");
  std::vector<double> v(cells.size() / 2);
  for (std::size_t t = 0; t < v.size(); ++t) v[t] = cells[2 * t];
  return v;
}

double TileFunction::integral_pow(const Weight& w, double p) const {
  long double total = 0.0L;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    double v = std::fabs(cells[c]);
    if (v == 0.0) continue;
    total += std::pow(v, p) * w.cell_mass(static_cast<int>(c));
  }
  return static_cast<double>(total);
}

double TileFunction::norm(const Weight& w, double p) const { return std::pow(integral_pow(w, p), 1.0 / p); }

double TileFunction::max_abs() const {
  double m = 0.0;
  for (double v : cells) m = std::max(m, std::fabs(v));
  return m;
}

TileFunction TileFunction::abs() const {
  TileFunction f = *this;
  for (double& v : f.cells) v = std::fabs(v);
  return f;
}

TileFunction TileFunction::pow(double e) const {
  TileFunction f = *this;
  for (double& v : f.cells) v = std::pow(std::fabs(v), e);
  return f;
}

TileFunction TileFunction::scaled(double c) const {
  TileFunction f = *this;
  for (double& v : f.cells) v *= c;
  return f;
}

}  // namespace tentgrid
