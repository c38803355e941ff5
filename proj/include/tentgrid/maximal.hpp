#pragma once

#include <span>
#include <vector>

#include "tentgrid/dyadic.hpp"
#include "tentgrid/grid_tree.hpp"
#include "tentgrid/measure.hpp"
#include "tentgrid/tile_function.hpp"
#include "tentgrid/weight.hpp"

namespace tentgrid {

/// |f| omega integrated over each refined cell.
std::vector<double> weighted_cell_mass(const TileFunction& f, const Weight& w);

/// Dyadic weighted maximal function on grid beta, evaluated on the refined mesh.
TileFunction dyadic_weighted_maximal(const TileFunction& f, const Weight& w, dyadic::Beta beta);
TileFunction dyadic_weighted_maximal(const TileFunction& f, const Weight& w, const GridTree& tree);
/// Unweighted dyadic maximal function (Lebesgue measure on H).
TileFunction dyadic_maximal(const TileFunction& f, dyadic::Beta beta);

/// omega-average of f over the smallest dyadic box of grid beta containing each cell.
TileFunction local_average(const TileFunction& f, const Weight& w, dyadic::Beta beta);

/// sup of mu(Q_K) / omega(Q_K) over dyadic boxes of grid beta containing each cell.
TileFunction k_mu_dyadic(const PosMeasure& mu, const Weight& w, dyadic::Beta beta);

namespace reference {

/// Serial per-cell ancestor walk with box integrals from prefix sums; the
/// oracle for the tree kernels.
TileFunction dyadic_weighted_maximal(const TileFunction& f, const Weight& w, dyadic::Beta beta);
TileFunction k_mu_dyadic(const PosMeasure& mu, const Weight& w, dyadic::Beta beta);

}  // namespace reference

}  // namespace tentgrid
