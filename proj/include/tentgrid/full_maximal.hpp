#pragma once

#include <vector>

#include "tentgrid/measure.hpp"
#include "tentgrid/tile_function.hpp"
#include "tentgrid/weight.hpp"

namespace tentgrid {

/// Supremum of box ratios over every interval with endpoints in (1/R)Z that
/// meets the window, tabulated on the R-grid squares of the window box.
///
/// The square (r, c) is [c/R, (c+1)/R) x [r/R, (r+1)/R). A point lies in
/// Q_I for I = [a/R, (a+k)/R) iff its column is in [a, a+k) and its row is
/// below k, so the surrogate is constant on each square and the table is
/// exact at every point of the window box.
class FullMaximalTable {
public:
  FullMaximalTable(const Window& window, int log2_resolution);

  const Window& window() const { return window_; }
  int log2_resolution() const { return log2r_; }
  int columns() const { return cols_; }
  int rows() const { return rows_; }

  double at(int row, int col) const { return value_[static_cast<std::size_t>(row) * cols_ + col]; }
  double& at(int row, int col) { return value_[static_cast<std::size_t>(row) * cols_ + col]; }
  /// Value at a point of the window box; 0 outside it.
  double at(const Point& z) const;
  /// Center of square (row, col).
  Point center(int row, int col) const;
  double max_value() const;

private:
  Window window_;
  int log2r_;
  int cols_;
  int rows_;
  std::vector<double> value_;
};

/// Grid-restricted surrogate of the weighted maximal function M_omega f. The
/// resolution must resolve the band heights: log2_resolution >= 1 - leaf scale.
FullMaximalTable full_maximal(const TileFunction& f, const Weight& w, int log2_resolution);
/// Grid-restricted surrogate of K_mu(z) = sup mu(Q_I) / omega(Q_I).
FullMaximalTable full_k_mu(const PosMeasure& mu, const Weight& w, int log2_resolution);

namespace reference {

/// Direct enumeration of every admissible interval per square, with box
/// integrals from the prefix-sum index. Quadratic per square; small windows only.
FullMaximalTable full_maximal(const TileFunction& f, const Weight& w, int log2_resolution);

}  // namespace reference

}  // namespace tentgrid
