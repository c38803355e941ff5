#pragma once

#include <span>
#include <vector>

#include "tentgrid/dyadic.hpp"
#include "tentgrid/mass_index.hpp"
#include "tentgrid/window.hpp"

namespace tentgrid {

struct Atom {
  Point z;
  double mass = 0.0;
};

/// A positive measure supported in the tiled region of a window: a finite
/// sum of point masses plus an optional per-tile density.
class PosMeasure {
public:
  static PosMeasure zero(const Window& window);
  static PosMeasure atoms(const Window& window, std::vector<Atom> atoms);
  static PosMeasure density(const Window& window, std::vector<double> tile_densities);

  const Window& window() const { return window_; }
  std::span<const Atom> atom_list() const { return atoms_; }
  /// Per-tile densities; empty when the measure has no density part.
  std::span<const double> densities() const { return densities_; }
  bool has_density() const { return !densities_.empty(); }
  /// Refined cell of each atom, parallel to atom_list().
  std::span<const int> atom_cells() const { return atom_cells_; }

  /// mu(Q_I).
  double box_mass(const dyadic::Interval& I) const;
  double box_mass(const dyadic::DyadicInterval& I) const { return box_mass(I.interval()); }
  /// Mass carried by each refined cell.
  std::vector<double> cell_masses() const;
  double total_mass() const;
  bool is_zero() const { return total_mass() == 0.0; }

  PosMeasure scaled(double c) const;

private:
  Window window_{};
  std::vector<Atom> atoms_;
  std::vector<int> atom_cells_;
  std::vector<double> densities_;
  MassIndex index_;
};

}  // namespace tentgrid
