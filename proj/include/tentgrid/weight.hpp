#pragma once

#include <optional>
#include <span>
#include <vector>

#include "tentgrid/dyadic.hpp"
#include "tentgrid/mass_index.hpp"
#include "tentgrid/window.hpp"

namespace tentgrid {

/// A weight on the upper half-plane, seen through a window.
///
/// Two representations:
///  - power: c * y^alpha on all of H, with closed-form box integrals;
///  - tiled: a nonnegative density per tent tile, zero outside the tiles
///    (in particular on the bottom strip and outside the window box).
class Weight {
public:
  static Weight power(const Window& window, double alpha, double coef = 1.0);
  static Weight tiled(const Window& window, std::vector<double> densities);
  static Weight lebesgue(const Window& window) { return power(window, 0.0); }

  const Window& window() const { return window_; }
  bool is_power() const { return alpha_.has_value(); }
  /// Exponent of the power descriptor; throws for a tiled weight.
  double alpha() const;
  double coefficient() const { return coef_; }
  /// Per-tile densities; for power weights, the tent averages of c * y^alpha.
  std::span<const double> densities() const { return densities_; }
  /// The tiled weight with the same tile densities (identity for tiled weights).
  Weight model() const;

  /// Vertical profile exponent used for quadrature: alpha for power weights, 0 otherwise.
  double profile_alpha() const { return alpha_.value_or(0.0); }
  /// Factor multiplying y^profile_alpha on the given refined cell.
  double cell_coefficient(int cell) const;

  /// omega(Q_I).
  double box_mass(const dyadic::Interval& I) const;
  double box_mass(const dyadic::DyadicInterval& I) const { return box_mass(I.interval()); }
  /// omega(T_I).
  double tent_mass(const dyadic::Interval& I) const;
  /// omega([x0, x1) x (y0, y1)).
  double rect_mass(const GridCoord& x0, const GridCoord& x1, double y0, double y1) const;
  /// omega of one refined cell.
  double cell_mass(int cell) const { return cell_masses_[cell]; }
  std::span<const double> cell_masses() const { return cell_masses_; }
  /// omega of the tiled region of the window.
  double tiled_mass() const;

  /// Infimum of the weight over Q_I. For tiled weights the minimum density
  /// over tiles meeting Q_I in positive area; +inf if there are none.
  double inf_box(const dyadic::Interval& I) const;

  /// The weight omega^(1 - p'); requires p > 1 and, for tiled weights,
  /// strictly positive densities.
  Weight dual(double p) const;
  /// c * omega.
  Weight scaled(double c) const;

  /// omega-quadrature helper: index over the products value(cell) * coefficient(cell).
  MassIndex weighted_index(std::span<const double> cell_values) const;

private:
  static Weight make_power(const Window& window, double alpha, double coef);
  void cache_cell_masses();
  double compute_cell_mass(int cell) const;

  Window window_{};
  std::optional<double> alpha_;
  double coef_ = 1.0;
  std::vector<double> densities_;
  std::vector<double> cell_masses_;
  MassIndex index_;
};

/// The B_p term at one box, sigma being the dual weight of w; 0 on omega-null boxes.
double bp_term(const Weight& w, const Weight& sigma, double p, const dyadic::Interval& I);

struct BpResult {
  double value = 0.0;
  dyadic::Interval argmax{};
};

/// max over the family of (omega(Q_I)/|Q_I|) (sigma(Q_I)/|Q_I|)^(p-1), sigma the dual weight.
BpResult bp_constant(const Weight& w, double p, std::span<const dyadic::Interval> family);

/// Every dyadic interval of both grids meeting the window, from the window
/// scale down to the leaf scale.
std::vector<dyadic::Interval> default_box_family(const Window& window);
/// Standard grid intervals from the root down to the leaf scale, in tile order.
std::vector<dyadic::DyadicInterval> standard_family(const Window& window);

}  // namespace tentgrid
