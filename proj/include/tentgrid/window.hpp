#pragma once

#include <cstdint>
#include <optional>

#include "tentgrid/dyadic.hpp"
#include "tentgrid/grid_coord.hpp"

namespace tentgrid {

/// Finite truncation of the upper half-plane: the Carleson box over the root
/// [0, 2^L) of D^0, tiled by the tents of its dyadic descendants down to
/// scale L - D. The bottom strip 0 < y <= 2^(L-D-1) carries no mass.
///
/// Tiles are ordered by scale descending, index ascending: tile
/// 2^d - 1 + m is the tent over [m 2^(L-d), (m+1) 2^(L-d)).
///
/// Each tile is split into two refined cells by the D^{1/3} line of its
/// scale, which falls at one third (even scale) or two thirds (odd scale) of
/// the tile. The refined mesh resolves every box of both grids.
struct Window {
  int top_scale = 0;  // L
  int depth = 0;      // D

  int leaf_scale() const { return top_scale - depth; }
  int tile_count() const { return (2 << depth) - 1; }
  int cell_count() const { return 2 * tile_count(); }

  dyadic::DyadicInterval root() const { return {dyadic::Beta::Zero, top_scale, 0}; }
  dyadic::Interval root_interval() const { return root().interval(); }

  static int level_of(int tile);
  static int tile_index(int level, std::int64_t m) { return static_cast<int>((std::int64_t{1} << level) - 1 + m); }
  int scale_of_level(int level) const { return top_scale - level; }
  dyadic::DyadicInterval tile_interval(int tile) const;

  /// Position of the D^{1/3} cut inside tiles of this scale, in thirds of the tile width.
  static int cut_units(int scale) { return (scale & 1) == 0 ? 1 : 2; }

  dyadic::Interval cell_x(int cell) const;
  /// Band (2^(s-1), 2^s) of the cell's tile, as doubles.
  double cell_y_lo(int cell) const;
  double cell_y_hi(int cell) const;
  int cell_scale(int cell) const { return scale_of_level(level_of(cell / 2)); }
  Point cell_center(int cell) const;
  double cell_area(int cell) const;

  /// Refined cell containing z, or nullopt outside the tiled region.
  std::optional<int> locate_cell(const Point& z) const;
  /// True when z lies in the tiled region (the window box above the strip).
  bool in_tiled_region(const Point& z) const { return locate_cell(z).has_value(); }

  friend bool operator==(const Window&, const Window&) = default;
};

}  // namespace tentgrid
