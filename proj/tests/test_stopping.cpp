#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "tentgrid/generators.hpp"
#include "tentgrid/maximal.hpp"
#include "tentgrid/rng.hpp"
#include "tentgrid/stopping.hpp"

using namespace tentgrid;
using dyadic::Beta;
using dyadic::DyadicInterval;

namespace {

bool disjoint(const StoppingFamily& fam) {
  for (std::size_t i = 0; i < fam.boxes.size(); ++i)
    for (std::size_t j = i + 1; j < fam.boxes.size(); ++j)
      if (fam.boxes[i].interval.interval().intersects(fam.boxes[j].interval.interval())) return false;
  return true;
}

}  // namespace

TEST_CASE("stopping box examples") {
  Window win{0, 4};
  Weight leb = Weight::lebesgue(win);
  TileFunction chi = TileFunction::box_indicator(win, DyadicInterval{Beta::Zero, -1, 0}.interval());
  StoppingFamily fam = cz_stopping_boxes(chi, leb, 0.5, Beta::Zero);
  REQUIRE(fam.boxes.size() == 1);
  CHECK(fam.boxes[0].interval == DyadicInterval{Beta::Zero, -1, 0});
  CHECK_FALSE(fam.root_stopped());

  CHECK(cz_stopping_boxes(chi, leb, 1.0, Beta::Zero).boxes.empty());
  StoppingFamily low = cz_stopping_boxes(chi, leb, 0.01, Beta::Zero);
  REQUIRE(low.boxes.size() == 1);
  CHECK(low.root_stopped());
  CHECK(low.boxes[0].interval == win.root());
  CHECK_THROWS_AS(cz_stopping_boxes(chi, leb, 0.0, Beta::Zero), std::invalid_argument);
}

TEST_CASE("stopping families: structure and level-set identity") {
  Window win{0, 6};
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(derive_seed(31, seed));
    TileFunction f = TileFunction::from_tiles(win, gen_tile_values(rng.next(), win, seed % 2 ? "spiky" : "lognormal"));
    Weight w = seed % 3 == 0 ? Weight::lebesgue(win) : gen_perturbed_weight(0.3, 0.8, rng.next(), win);
    for (Beta b : {Beta::Zero, Beta::Third}) {
      TileFunction m = dyadic_weighted_maximal(f, w, b);
      double lambda = m.max_abs() * rng.uniform(0.01, 0.99);
      StoppingFamily fam = cz_stopping_boxes(f, w, lambda, b);
      CHECK(disjoint(fam));
      std::vector<char> cover = fam.covered_cells(win);
      for (int c = 0; c < win.cell_count(); ++c) CHECK((cover[c] != 0) == (m.cells[c] > lambda));
      for (const StoppingBox& box : fam.boxes) {
        CHECK(box.average > lambda);
        dyadic::DyadicInterval up = box.interval;
        GridTree tree(win, b);
        while (up.scale < tree.top_scale()) {
          up = up.parent();
          dyadic::Interval I = up.interval();
          MassIndex idx = w.weighted_index(f.abs().cells);
          CHECK(idx.rect(I.lo, I.hi, 0.0, I.length().to_double()) / w.box_mass(I) <= lambda);
        }
        if (w.is_power() && !box.root) CHECK(box.average <= 4.0 * lambda * (1 + 1e-12));
      }
    }
  }
}

TEST_CASE("level sets") {
  Window win{0, 5};
  Weight model = gen_power_weight(0.0, win).model();
  LevelSets flat = level_sets(TileFunction::constant(win, 3.0), model, 2.0, Beta::Zero);
  CHECK(flat.levels() == std::vector<int>{1});
  CHECK(level_sets(TileFunction::zero(win), model, 2.0, Beta::Zero).levels().empty());
  CHECK_THROWS_AS(level_sets(TileFunction::zero(win), model, 1.5, Beta::Zero), std::invalid_argument);

  std::vector<double> tiles(win.tile_count(), 1.0);
  for (int t = win.tile_count() / 2; t < win.tile_count(); ++t) tiles[t] = 9.0;
  TileFunction f = TileFunction::from_tiles(win, tiles);
  for (Beta b : {Beta::Zero, Beta::Third}) {
    TileFunction m = dyadic_weighted_maximal(f, model, b);
    LevelSets ls = level_sets(f, model, 3.0, b);
    for (int c = 0; c < win.cell_count(); ++c) {
      int k = ls.level[c];
      CHECK(std::pow(3.0, k) < m.cells[c]);
      CHECK(m.cells[c] <= std::pow(3.0, k + 1));
    }
    for (int k : ls.levels()) {
      std::vector<char> cover = cz_stopping_boxes(f, model, std::pow(3.0, k), b).covered_cells(win);
      for (int c = 0; c < win.cell_count(); ++c)
        if (ls.level[c] == k) CHECK(cover[c]);
    }
  }
}

TEST_CASE("square cells") {
  Window win{0, 3};
  SquareCells sq(win, 5);
  std::vector<int> cells;
  sq.cells(0, 0, cells);  // strip row: leaf band
  CHECK(cells == std::vector<int>{2 * Window::tile_index(3, 0)});
  sq.cells(20, 10, cells);  // y in (20/32, 21/32): top band; x in [10/32, 11/32) straddles 1/3
  CHECK(cells == std::vector<int>{0, 1});
}

TEST_CASE("weak 68-inclusion") {
  Window win{0, 6};
  TileFunction chi = TileFunction::box_indicator(win, DyadicInterval{Beta::Zero, -2, 1}.interval());
  std::vector<double> lambdas = {0.05, 0.1, 0.2, 0.4, 0.8};
  Inclusion68Result r = weak_inclusion_68(chi, lambdas, 8);
  CHECK(r.holds);
  CHECK(r.violations == 0);
  CHECK(r.checks > 0);
  CHECK(r.min_margin > 1.0);
  std::vector<double> high = {2.0};
  Inclusion68Result v = weak_inclusion_68(chi, high, 8);
  CHECK(v.holds);
  CHECK(v.checks == 0);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    TileFunction f = TileFunction::from_tiles(win, gen_tile_values(derive_seed(41, seed), win, "spiky"));
    std::vector<double> ls;
    for (int i = 1; i <= 10; ++i) ls.push_back(f.max_abs() * std::pow(0.6, i));
    Inclusion68Result two = weak_inclusion_two_grid(f, ls, 8);
    CHECK(two.holds);
    CHECK(two.min_margin > 1.0);
  }
}

TEST_CASE("standard-grid inclusion fails across a grid line") {
  // mass just left of x = 1/2; points just right of it only see the root among
  // the standard boxes, while a small arbitrary box straddling 1/2 is heavy
  Window win{0, 6};
  std::vector<double> tiles(win.tile_count(), 0.0);
  tiles[Window::tile_index(6, 31)] = 25.0 / 6.0;
  TileFunction f = TileFunction::from_tiles(win, tiles);
  std::vector<double> ls = {1.5};
  Inclusion68Result r = weak_inclusion_68(f, ls, 8);
  CHECK_FALSE(r.holds);
  REQUIRE(r.witness.has_value());
  CHECK(r.witness->full_value > 1.5);
  CHECK(r.witness->dyadic_value <= 1.5 / 68.0);
  CHECK(weak_inclusion_two_grid(f, ls, 8).holds);
}

TEST_CASE("Doob ratios") {
  Window win{0, 6};
  Weight model = gen_perturbed_weight(0.3, 0.5, 2, win);
  CHECK(doob_norm_ratio(TileFunction::constant(win, 1.0), model, 2.0, Beta::Zero) == doctest::Approx(1.0));
  CHECK_THROWS_AS(doob_norm_ratio(TileFunction::zero(win), model, 2.0, Beta::Zero), std::invalid_argument);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    TileFunction f = TileFunction::from_tiles(win, gen_tile_values(derive_seed(5, seed), win, "spiky"));
    for (Beta b : {Beta::Zero, Beta::Third}) {
      CHECK(doob_norm_ratio(f, model, 2.0, b) <= 2.0 * (1 + 1e-9));
      CHECK(doob_norm_ratio(f, Weight::power(win, 0.5), 2.0, b) <= 2.0 * (1 + 1e-9));
    }
  }
  // single spike against direct quadrature of the reference maximal function
  std::vector<double> tiles(win.tile_count(), 0.0);
  tiles[Window::tile_index(4, 5)] = 3.0;
  TileFunction spike = TileFunction::from_tiles(win, tiles);
  Weight w = Weight::power(win, -0.5);
  TileFunction m = reference::dyadic_weighted_maximal(spike, w, Beta::Third);
  double lhs = 0.0;
  for (int c = 0; c < win.cell_count(); ++c) lhs += m.cells[c] * m.cells[c] * w.cell_mass(c);
  for (int c = 2 * ((1 << win.depth) - 1); c < win.cell_count(); ++c) {
    dyadic::Interval x = win.cell_x(c);
    lhs += m.cells[c] * m.cells[c] * w.rect_mass(x.lo, x.hi, 0.0, std::ldexp(1.0, win.leaf_scale() - 1));
  }
  double rhs = 9.0 * w.tent_mass(DyadicInterval{Beta::Zero, -4, 5}.interval());
  CHECK(doob_norm_ratio(spike, w, 2.0, Beta::Third) == doctest::Approx(std::sqrt(lhs / rhs)).epsilon(1e-12));
}

TEST_CASE("two-grid domination") {
  Window win{0, 5};
  Weight leb = Weight::lebesgue(win);
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    TileFunction f = TileFunction::from_tiles(win, gen_tile_values(derive_seed(6, seed), win, "spiky"));
    CHECK(three_grid_domination_check(f, leb, 7).max_ratio <= 36.0);
  }
  // inside the box of an indicator both sides see the value 1
  TileFunction chi = TileFunction::box_indicator(win, DyadicInterval{Beta::Zero, -1, 0}.interval());
  Weight model = leb.model();
  FullMaximalTable full = full_maximal(chi, model, 7);
  TileFunction m0 = dyadic_weighted_maximal(chi, model, Beta::Zero);
  for (int c = 0; c < win.cell_count(); ++c)
    if (win.cell_x(c).hi <= GridCoord::dyadic(1, -1) && win.cell_y_hi(c) <= 0.5)
      CHECK(full.at(win.cell_center(c)) <= m0.cells[c] * (1 + 1e-12));
}
