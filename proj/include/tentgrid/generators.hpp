#pragma once

#include <cstdint>
#include <vector>

#include "tentgrid/measure.hpp"
#include "tentgrid/weight.hpp"

namespace tentgrid {

/// y^alpha with its closed-form descriptor; tile densities hold the tent averages.
Weight gen_power_weight(double alpha, const Window& window);
/// Tent averages of y^alpha, each multiplied by exp(u), u uniform in
/// [-noise, noise]. noise == 0 returns gen_power_weight.
Weight gen_perturbed_weight(double alpha, double noise, std::uint64_t seed, const Window& window);

/// Atoms at the tent centers of the standard tiles with
/// mu(Q_I) = omega(Q_I)^r for every tile I of the window.
PosMeasure gen_saturating_measure(const Weight& w, double r);
/// count atoms at random exact points of the tiled region, masses in (0, 1].
PosMeasure gen_atom_measure(std::uint64_t seed, int count, const Window& window);
/// Random per-tile densities in (0, 1].
PosMeasure gen_density_measure(std::uint64_t seed, const Window& window);

/// Random tile values; kind is one of "uniform", "spiky", "lognormal".
std::vector<double> gen_tile_values(std::uint64_t seed, const Window& window, const std::string& kind = "uniform");

/// Tent center of a dyadic interval: midpoint, at height 3|I|/4.
Point tent_center(const dyadic::DyadicInterval& I);

}  // namespace tentgrid
