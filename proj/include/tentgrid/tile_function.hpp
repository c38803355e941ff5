#pragma once

#include <span>
#include <vector>

#include "tentgrid/dyadic.hpp"
#include "tentgrid/weight.hpp"
#include "tentgrid/window.hpp"

namespace tentgrid {

/// A real function constant on each refined cell of a window, zero on the
/// bottom strip and outside the window box.
///
/// Functions that are constant on whole tiles (the usual inputs) are built
/// with from_tiles; computed maximal functions generally are not.
struct TileFunction {
  Window window{};
  std::vector<double> cells;

  static TileFunction zero(const Window& w) { return {w, std::vector<double>(w.cell_count(), 0.0)}; }
  static TileFunction constant(const Window& w, double c) { return {w, std::vector<double>(w.cell_count(), c)}; }
  static TileFunction from_tiles(const Window& w, std::span<const double> tile_values);
  /// chi_{Q_I} restricted to the tiled region. I must be resolved by the
  /// refined mesh (any interval of either grid is).
  static TileFunction box_indicator(const Window& w, const dyadic::Interval& I);

  double at(const Point& z) const;
  /// True when every tile carries one value on both of its cells.
  bool is_tile_constant() const;
  std::vector<double> tile_values() const;

  /// (sum over cells of |f|^p omega(cell))^(1/p).
  double norm(const Weight& w, double p) const;
  /// integral of |f|^p omega over the tiled region.
  double integral_pow(const Weight& w, double p) const;
  double max_abs() const;

  TileFunction abs() const;
  TileFunction pow(double e) const;
  TileFunction scaled(double c) const;
};

/// Cells of the window inside Q_I; throws if some cell straddles the box boundary.
std::vector<int> cells_in_box(const Window& w, const dyadic::Interval& I);

}  // namespace tentgrid
