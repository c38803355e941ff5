#include "tentgrid/measure.hpp"

#include <cmath>
#include <stdexcept>

namespace tentgrid {

PosMeasure PosMeasure::zero(const Window& window) {
  PosMeasure m;
  m.window_ = window;
  return m;
}

PosMeasure PosMeasure::atoms(const Window& window, std::vector<Atom> atoms) {
  PosMeasure m;
  m.window_ = window;
  m.atom_cells_.reserve(atoms.size());
  for (const Atom& a : atoms) {
    if (!(a.mass >= 0.0) || !std::isfinite(a.mass)) throw std::invalid_argument("atom masses must be finite and >= 0");
    auto cell = window.locate_cell(a.z);
    if (!cell) throw std::invalid_argument("atom outside the tiled region: (" + a.z.x.to_string() + ", " + a.z.y.to_string() + ")");
    m.atom_cells_.push_back(*cell);
  }
  m.atoms_ = std::move(atoms);
  return m;
}

PosMeasure PosMeasure::density(const Window& window, std::vector<double> tile_densities) {
  if (static_cast<int>(tile_densities.size()) != window.tile_count())
    throw std::invalid_argument("density measure: expected " + std::to_string(window.tile_count()) + " tile densities");
  for (double d : tile_densities)
    if (!(d >= 0.0) || !std::isfinite(d)) throw std::invalid_argument("measure densities must be finite and >= 0");
  PosMeasure m;
  m.window_ = window;
  std::vector<double> cells(2 * tile_densities.size());
  for (std::size_t t = 0; t < tile_densities.size(); ++t) cells[2 * t] = cells[2 * t + 1] = tile_densities[t];
  m.index_ = MassIndex(window, cells, 0.0);
  m.densities_ = std::move(tile_densities);
  return m;
}

double PosMeasure::box_mass(const dyadic::Interval& I) const {
  long double total = 0.0L;
  dyadic::Box box{I};
  for (const Atom& a : atoms_)
    if (box.contains(a.z)) total += a.mass;
  if (has_density()) total += index_.rect(I.lo, I.hi, 0.0, I.length().to_double());
  return static_cast<double>(total);
}

std::vector<double> PosMeasure::cell_masses() const {
  std::vector<double> out(window_.cell_count(), 0.0);
  if (has_density())
    for (int c = 0; c < window_.cell_count(); ++c) out[c] = densities_[c / 2] * window_.cell_area(c);
  for (std::size_t i = 0; i < atoms_.size(); ++i) out[atom_cells_[i]] += atoms_[i].mass;
  return out;
}

double PosMeasure::total_mass() const {
  long double total = 0.0L;
  for (double v : cell_masses()) total += v;
  return static_cast<double>(total);
}

PosMeasure PosMeasure::scaled(double c) const {
  if (!(c >= 0.0)) throw std::invalid_argument("measure scale factor must be >= 0");
  PosMeasure m = *this;
  for (Atom& a : m.atoms_) a.mass *= c;
  if (has_density()) {
    for (double& d : m.densities_) d *= c;
    std::vector<double> cells(2 * m.densities_.size());
    for (std::size_t t = 0; t < m.densities_.size(); ++t) cells[2 * t] = cells[2 * t + 1] = m.densities_[t];
    m.index_ = MassIndex(window_, cells, 0.0);
  }
  return m;
}

}  // namespace tentgrid
