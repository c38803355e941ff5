#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "tentgrid/generators.hpp"
#include "tentgrid/maximal.hpp"
#include "tentgrid/rng.hpp"

using namespace tentgrid;
using dyadic::Beta;
using dyadic::DyadicInterval;
using dyadic::Interval;

namespace {

void check_close(const TileFunction& a, const TileFunction& b, double tol) {
  REQUIRE(a.cells.size() == b.cells.size());
  for (std::size_t c = 0; c < a.cells.size(); ++c) {
    double scale = std::max({std::fabs(a.cells[c]), std::fabs(b.cells[c]), 1e-300});
    CHECK(std::fabs(a.cells[c] - b.cells[c]) <= tol * scale);
  }
}

std::vector<Weight> weight_battery(const Window& win) {
  return {Weight::lebesgue(win), Weight::power(win, 0.7), Weight::power(win, -0.6),
          gen_perturbed_weight(0.3, 1.0, 4, win), gen_power_weight(-0.4, win).model()};
}

}  // namespace

TEST_CASE("tree kernel matches the serial ancestor walk") {
  for (int depth : {2, 4, 6}) {
    Window win{depth % 3 - 1, depth};
    int i = 0;
    for (const Weight& w : weight_battery(win)) {
      TileFunction f = TileFunction::from_tiles(win, gen_tile_values(derive_seed(1, depth, i++), win, "lognormal"));
      for (Beta b : {Beta::Zero, Beta::Third})
        check_close(dyadic_weighted_maximal(f, w, b), reference::dyadic_weighted_maximal(f, w, b), 1e-12);
    }
  }
}

TEST_CASE("constant functions") {
  Window win{0, 5};
  Weight model = gen_perturbed_weight(0.5, 0.5, 3, win);
  for (Beta b : {Beta::Zero, Beta::Third}) {
    TileFunction m = dyadic_weighted_maximal(TileFunction::constant(win, -2.5), model, b);
    for (double v : m.cells) CHECK(v == doctest::Approx(2.5).epsilon(1e-12));
  }
  // with the analytic weight the strip below the leaf tiles dilutes the averages
  TileFunction m = dyadic_weighted_maximal(TileFunction::constant(win, 1.0), Weight::lebesgue(win), Beta::Zero);
  for (double v : m.cells) {
    CHECK(v < 1.0);
    CHECK(v >= 1.0 - std::ldexp(1.0, -win.depth - 1) - 1e-12);
  }
}

TEST_CASE("box indicators reach 1 on their box") {
  Window win{0, 6};
  Weight w = gen_perturbed_weight(0.2, 0.8, 9, win);
  std::vector<DyadicInterval> boxes = {{Beta::Zero, -2, 1}, {Beta::Third, -2, 1}, {Beta::Third, -4, 5}};
  for (const DyadicInterval& I : boxes) {
    TileFunction chi = TileFunction::box_indicator(win, I.interval());
    for (Beta b : {Beta::Zero, Beta::Third}) {
      TileFunction m = dyadic_weighted_maximal(chi, w, b);
      for (double v : m.cells) CHECK(v <= 1.0 + 1e-12);
    }
    TileFunction m = dyadic_weighted_maximal(chi, w, I.beta);
    for (int c : cells_in_box(win, I.interval())) CHECK(m.cells[c] == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("indicator of the left half box seen from the right tent") {
  // On H the value is |Q_[0,1/2)| / |Q_[0,1)| = 1/4. In the model the strip below
  // depth D is absent: (1/4)(1 - 2^-D) / (1 - 2^-(D+1)).
  for (int depth : {2, 6, 12}) {
    Window win{0, depth};
    Weight model = Weight::lebesgue(win).model();
    TileFunction chi = TileFunction::box_indicator(win, DyadicInterval{Beta::Zero, -1, 0}.interval());
    TileFunction m = dyadic_weighted_maximal(chi, model, Beta::Zero);
    double expect = 0.25 * (1.0 - std::ldexp(1.0, -depth)) / (1.0 - std::ldexp(1.0, -depth - 1));
    // tile 2 is T_[1/2, 1)
    CHECK(m.cells[4] == doctest::Approx(expect).epsilon(1e-12));
    CHECK(m.cells[5] == doctest::Approx(expect).epsilon(1e-12));
    CHECK(std::fabs(m.cells[4] - 0.25) <= std::ldexp(1.0, -depth));
  }
}

TEST_CASE("local average and K_mu") {
  Window win{0, 5};
  Weight w = gen_perturbed_weight(0.4, 0.6, 12, win);
  TileFunction f = TileFunction::from_tiles(win, gen_tile_values(5, win));
  for (Beta b : {Beta::Zero, Beta::Third}) {
    TileFunction avg = local_average(f, w, b);
    MassIndex idx = w.weighted_index(f.cells);
    for (int c = 0; c < win.cell_count(); c += 7) {
      DyadicInterval K = dyadic::locate(win.cell_x(c).lo, win.cell_scale(c), b);
      Interval I = K.interval();
      double expect = idx.rect(I.lo, I.hi, 0.0, I.length().to_double()) / w.box_mass(I);
      CHECK(avg.cells[c] == doctest::Approx(expect).epsilon(1e-12));
    }
    PosMeasure mu = gen_atom_measure(8, 25, win);
    check_close(k_mu_dyadic(mu, w, b), reference::k_mu_dyadic(mu, w, b), 1e-12);
    PosMeasure dens = gen_density_measure(2, win);
    check_close(k_mu_dyadic(dens, w, b), reference::k_mu_dyadic(dens, w, b), 1e-12);
  }
  // single atom at a tent center: K_d(z) = m / omega(Q_{smallest common ancestor})
  Weight one = Weight::lebesgue(win).model();
  DyadicInterval I0{Beta::Zero, -3, 2};
  PosMeasure atom = PosMeasure::atoms(win, {{tent_center(I0), 0.5}});
  TileFunction k = k_mu_dyadic(atom, one, Beta::Zero);
  int inside = 2 * Window::tile_index(3, 2);
  CHECK(k.cells[inside] == doctest::Approx(0.5 / one.box_mass(I0)));
  int sibling = 2 * Window::tile_index(3, 3);
  CHECK(k.cells[sibling] == doctest::Approx(0.5 / one.box_mass(I0.parent())));
  int far = 2 * Window::tile_index(1, 1);
  CHECK(k.cells[far] == doctest::Approx(0.5 / one.box_mass(win.root())));
  CHECK(k_mu_dyadic(PosMeasure::zero(win), one, Beta::Third).max_abs() == 0.0);
}
