#include <algorithm>
#include <cmath>
#include <functional>

#include "tentgrid/maximal.hpp"

namespace tentgrid::reference {

namespace {

// Walk from the cell's own box upwards until the box covers the window.
double walk(const Window& win, int cell, dyadic::Beta beta, const std::function<double(const dyadic::Interval&)>& num,
            const Weight& w) {
  const dyadic::Interval root = win.root_interval();
  int s = win.cell_scale(cell);
  dyadic::DyadicInterval K = dyadic::locate(win.cell_x(cell).lo, s, beta);
  double best = 0.0;
  while (true) {
    dyadic::Interval I = K.interval();
    double den = w.box_mass(I);
    if (den > 0.0) best = std::max(best, num(I) / den);
    if (I.contains(root)) break;
    K = K.parent();
  }
  return best;
}

}  // namespace

TileFunction dyadic_weighted_maximal(const TileFunction& f, const Weight& w, dyadic::Beta beta) {
  const Window& win = f.window;
  std::vector<double> absf(f.cells.size());
  for (std::size_t c = 0; c < absf.size(); ++c) absf[c] = std::fabs(f.cells[c]);
  MassIndex idx = w.weighted_index(absf);
  auto num = [&](const dyadic::Interval& I) { return idx.rect(I.lo, I.hi, 0.0, I.length().to_double()); };
  TileFunction out = TileFunction::zero(win);
  for (int c = 0; c < win.cell_count(); ++c) out.cells[c] = walk(win, c, beta, num, w);
  return out;
}

TileFunction k_mu_dyadic(const PosMeasure& mu, const Weight& w, dyadic::Beta beta) {
  const Window& win = w.window();
  auto num = [&](const dyadic::Interval& I) { return mu.box_mass(I); };
  TileFunction out = TileFunction::zero(win);
  for (int c = 0; c < win.cell_count(); ++c) out.cells[c] = walk(win, c, beta, num, w);
  return out;
}

}  // namespace tentgrid::reference
