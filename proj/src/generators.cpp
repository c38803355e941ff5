#include "tentgrid/generators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tentgrid/rng.hpp"

namespace tentgrid {

using dyadic::DyadicInterval;

Point tent_center(const DyadicInterval& I) {
  return {(I.left() + I.right()).mul_pow2(-1), GridCoord::dyadic(3, I.scale - 2)};
}

Weight gen_power_weight(double alpha, const Window& window) {
  return Weight::power(window, alpha);
}

Weight gen_perturbed_weight(double alpha, double noise, std::uint64_t seed, const Window& window) {
  if (!(noise >= 0.0)) throw std::invalid_argument("perturbation noise must be >= 0");
  Weight base = gen_power_weight(alpha, window);
  if (noise == 0.0) return base;
  Rng rng(seed);
  std::vector<double> dens(base.densities().begin(), base.densities().end());
  for (double& d : dens) d *= std::exp(rng.uniform(-noise, noise));
  return Weight::tiled(window, std::move(dens));
}

PosMeasure gen_saturating_measure(const Weight& w, double r) {
  if (!(r >= 1.0)) throw std::invalid_argument("saturating measure requires r >= 1");
  const Window& win = w.window();
  std::vector<double> box_pow(win.tile_count());
  for (int t = 0; t < win.tile_count(); ++t) box_pow[t] = std::pow(w.box_mass(win.tile_interval(t)), r);
  std::vector<Atom> atoms;
  atoms.reserve(win.tile_count());
  for (int t = 0; t < win.tile_count(); ++t) {
    double mass = box_pow[t];
    if (Window::level_of(t) < win.depth) mass -= box_pow[2 * t + 1] + box_pow[2 * t + 2];
    atoms.push_back({tent_center(win.tile_interval(t)), std::max(mass, 0.0)});
  }
  return PosMeasure::atoms(win, std::move(atoms));
}

PosMeasure gen_atom_measure(std::uint64_t seed, int count, const Window& window) {
  if (count < 0) throw std::invalid_argument("atom count must be >= 0");
  Rng rng(seed);
  std::vector<Atom> atoms;
  atoms.reserve(count);
  for (int i = 0; i < count; ++i) {
    int cell = static_cast<int>(rng.below(window.cell_count()));
    dyadic::Interval x = window.cell_x(cell);
    int s = window.cell_scale(cell);
    std::int64_t u = 2 * rng.range(0, 63) + 1;
    std::int64_t v = 2 * rng.range(0, 63) + 1;
    GridCoord px = x.lo + x.length().mul_pow2(-7) * u;
    GridCoord py = GridCoord::dyadic(128 + v, s - 8);
    atoms.push_back({{px, py}, 1.0 - rng.uniform()});
  }
  return PosMeasure::atoms(window, std::move(atoms));
}

PosMeasure gen_density_measure(std::uint64_t seed, const Window& window) {
  Rng rng(seed);
  std::vector<double> dens(window.tile_count());
  for (double& d : dens) d = 1.0 - rng.uniform();
  return PosMeasure::density(window, std::move(dens));
}

std::vector<double> gen_tile_values(std::uint64_t seed, const Window& window, const std::string& kind) {
  Rng rng(seed);
  std::vector<double> v(window.tile_count(), 0.0);
  if (kind == "uniform") {
    for (double& x : v) x = rng.uniform();
  } else if (kind == "lognormal") {
    for (double& x : v) x = std::exp(rng.uniform(-3.0, 3.0));
  } else if (kind == "spiky") {
    int spikes = 1 + static_cast<int>(rng.below(4));
    for (int i = 0; i < spikes; ++i) v[rng.below(v.size())] = std::exp(rng.uniform(0.0, 4.0));
  } else {
    throw std::invalid_argument("unknown tile value kind '" + kind + "'");
  }
  return v;
}

}  // namespace tentgrid
