#include "tentgrid/maximal.hpp"

#include <cmath>
#include <stdexcept>

namespace tentgrid {

std::vector<double> weighted_cell_mass(const TileFunction& f, const Weight& w) {
  if (!(f.window == w.window())) throw std::invalid_argument("function and weight live on different windows");
  std::vector<double> m(f.cells.size());
  for (std::size_t c = 0; c < m.size(); ++c) m[c] = std::fabs(f.cells[c]) * w.cell_mass(static_cast<int>(c));
  return m;
}

TileFunction dyadic_weighted_maximal(const TileFunction& f, const Weight& w, const GridTree& tree) {
  TreeSums sums = tree_sums(tree, weighted_cell_mass(f, w), w);
  return {f.window, sup_over_ancestors(tree, sums)};
}

TileFunction dyadic_weighted_maximal(const TileFunction& f, const Weight& w, dyadic::Beta beta) {
  return dyadic_weighted_maximal(f, w, GridTree(f.window, beta));
}

TileFunction dyadic_maximal(const TileFunction& f, dyadic::Beta beta) {
  return dyadic_weighted_maximal(f, Weight::lebesgue(f.window), beta);
}

TileFunction local_average(const TileFunction& f, const Weight& w, dyadic::Beta beta) {
  GridTree tree(f.window, beta);
  TreeSums sums = tree_sums(tree, weighted_cell_mass(f, w), w);
  return {f.window, own_box_ratio(tree, sums)};
}

TileFunction k_mu_dyadic(const PosMeasure& mu, const Weight& w, dyadic::Beta beta) {
  if (!(mu.window() == w.window())) throw std::invalid_argument("measure and weight live on different windows");
  GridTree tree(w.window(), beta);
  TreeSums sums = tree_sums(tree, mu.cell_masses(), w);
  return {w.window(), sup_over_ancestors(tree, sums)};
}

}  // namespace tentgrid
