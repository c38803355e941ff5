#pragma once

#include <span>
#include <vector>

#include "tentgrid/grid_coord.hpp"
#include "tentgrid/window.hpp"

namespace tentgrid {

/// Integral of y^alpha over [y0, y1].
double power_profile_integral(double y0, double y1, double alpha);

/// Rectangle integrals of a refined-cell-constant density against the
/// vertical profile y^alpha.
///
/// Per band, cell values are laid out on the lattice of thirds of the tile
/// width, where every vertical line of both grids falls. Queries whose
/// x-endpoints lie on that lattice are resolved without interpolation.
class MassIndex {
public:
  MassIndex() = default;
  MassIndex(const Window& window, std::span<const double> cell_values, double alpha);

  const Window& window() const { return window_; }
  double alpha() const { return alpha_; }

  /// Integral over [x0, x1) x (y0, y1) of value(cell) * y^alpha.
  double rect(const GridCoord& x0, const GridCoord& x1, double y0, double y1) const;

  /// Horizontal integral of the band's cell values over (-inf, x), in units
  /// of a third of the band's tile width.
  long double band_prefix(int level, const GridCoord& x) const;
  double unit_width(int level) const;
  /// Integral of y^alpha across the whole band of this level.
  double band_profile(int level) const;
  double band_profile(int level, double y0, double y1) const;

private:
  Window window_{};
  double alpha_ = 0.0;
  std::vector<std::vector<double>> unit_values_;
  std::vector<std::vector<long double>> prefix_;
};

}  // namespace tentgrid
