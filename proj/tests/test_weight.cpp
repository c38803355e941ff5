#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "tentgrid/generators.hpp"
#include "tentgrid/rng.hpp"
#include "tentgrid/tile_function.hpp"
#include "tentgrid/weight.hpp"

using namespace tentgrid;
using dyadic::Beta;
using dyadic::DyadicInterval;
using dyadic::Interval;

namespace {

Interval unit_at(std::int64_t m, int scale) { return DyadicInterval{Beta::Zero, scale, m}.interval(); }

bool rel_close(double a, double b, double tol) { return std::fabs(a - b) <= tol * std::max({std::fabs(a), std::fabs(b), 1e-300}); }

// Oracle: omega(Q_I) by summing the masses of the refined cells inside the box.
double box_mass_by_cells(const Weight& w, const Interval& I) {
  double s = 0.0;
  for (int c : cells_in_box(w.window(), I)) s += w.cell_mass(c);
  return s;
}

}  // namespace

TEST_CASE("box mass closed forms") {
  Window win{0, 6};
  CHECK(Weight::lebesgue(win).box_mass(unit_at(0, 0)) == doctest::Approx(1.0));
  CHECK(Weight::power(win, 1.0).box_mass(unit_at(0, 0)) == doctest::Approx(0.5));
  CHECK(Weight::lebesgue(win).box_mass(unit_at(0, -1)) == doctest::Approx(0.25));
  CHECK(Weight::power(win, 0.5).tent_mass(unit_at(0, 0)) ==
        doctest::Approx((1.0 - std::pow(0.5, 1.5)) / 1.5));
  CHECK_THROWS_AS(Weight::power(win, -1.0), std::invalid_argument);
}

TEST_CASE("tiled box masses: additivity and cell oracle") {
  Window win{1, 7};
  Weight w = gen_perturbed_weight(0.3, 0.8, 5, win);
  for (const DyadicInterval& I : standard_family(win)) {
    double whole = w.box_mass(I);
    CHECK(rel_close(whole, box_mass_by_cells(w, I.interval()), 1e-12));
    if (I.scale > win.leaf_scale()) {
      auto [a, b] = I.children();
      CHECK(rel_close(whole, w.box_mass(a) + w.box_mass(b) + w.tent_mass(I.interval()), 1e-12));
    } else {
      CHECK(rel_close(whole, w.tent_mass(I.interval()), 1e-12));
    }
  }
  // boxes of the shifted grid are resolved too
  for (const Interval& I : default_box_family(win)) {
    if (!win.root_interval().contains(I)) continue;
    CHECK(rel_close(w.box_mass(I), box_mass_by_cells(w, I), 1e-12));
  }
}

TEST_CASE("dual weights") {
  Window win{0, 3};
  Weight one = Weight::lebesgue(win).dual(3.0);
  CHECK(one.is_power());
  CHECK(one.alpha() == 0.0);
  CHECK(Weight::power(win, 0.5).dual(2.0).alpha() == doctest::Approx(-0.5));
  std::vector<double> d(win.tile_count(), 4.0);
  Weight four = Weight::tiled(win, d);
  CHECK(four.dual(2.0).densities()[0] == doctest::Approx(0.25));
  CHECK_THROWS_AS(four.dual(1.0), std::invalid_argument);
  d[3] = 0.0;
  CHECK_THROWS_AS(Weight::tiled(win, d).dual(2.0), std::invalid_argument);
}

TEST_CASE("B_p constant of power weights") {
  Window win{0, 6};
  auto family = default_box_family(win);
  CHECK(bp_constant(Weight::lebesgue(win), 2.0, family).value == doctest::Approx(1.0));
  CHECK(bp_constant(Weight::power(win, 0.5), 2.0, family).value == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
  CHECK(bp_constant(Weight::power(win, 0.9), 2.0, family).value == doctest::Approx(1.0 / 0.19).epsilon(1e-12));
  // general p: (1/(1+a)) (1/(1+a(1-p')))^(p-1)
  double a = 0.3, p = 1.5;
  double expect = (1.0 / (1.0 + a)) * std::pow(1.0 / (1.0 + a * (1.0 - 3.0)), p - 1.0);
  CHECK(bp_constant(Weight::power(win, a), p, family).value == doctest::Approx(expect).epsilon(1e-12));

  double base = bp_constant(Weight::power(win, 0.5), 2.0, family).value;
  for (int L = -2; L <= 2; ++L) {
    Window w2{L, 5};
    CHECK(std::fabs(bp_constant(Weight::power(w2, 0.5), 2.0, default_box_family(w2)).value - base) <= 1e-12 * base);
  }
  CHECK_THROWS_AS(bp_constant(Weight::lebesgue(win), 2.0, std::vector<Interval>{}), std::invalid_argument);
}

TEST_CASE("inf over a box") {
  Window win{0, 4};
  CHECK(Weight::lebesgue(win).inf_box(unit_at(0, 0)) == 1.0);
  CHECK(Weight::power(win, 0.5).inf_box(unit_at(0, 0)) == 0.0);
  Window small{0, 1};
  Weight two = Weight::tiled(small, {1.0, 3.0, 3.0});
  CHECK(two.inf_box(unit_at(0, 0)) == 1.0);
  // the box over the right half only meets the right leaf tile
  CHECK(two.inf_box(unit_at(1, -1)) == 3.0);
}

TEST_CASE("weight generators") {
  Window win{0, 5};
  CHECK_THROWS_AS(gen_power_weight(-1.0, win), std::invalid_argument);
  Weight flat = gen_power_weight(0.0, win);
  for (double d : flat.densities()) CHECK(d == doctest::Approx(1.0));
  Weight a = gen_perturbed_weight(0.5, 0.3, 7, win);
  Weight b = gen_perturbed_weight(0.5, 0.3, 7, win);
  CHECK(std::vector<double>(a.densities().begin(), a.densities().end()) ==
        std::vector<double>(b.densities().begin(), b.densities().end()));
  Weight c = gen_perturbed_weight(0.5, 0.0, 7, win);
  CHECK(c.is_power());
  CHECK(c.alpha() == 0.5);
  Weight base = gen_power_weight(0.5, win);
  for (int t = 0; t < win.tile_count(); ++t) {
    double r = a.densities()[t] / base.densities()[t];
    CHECK(r >= std::exp(-0.3) * (1 - 1e-15));
    CHECK(r <= std::exp(0.3) * (1 + 1e-15));
  }
}

TEST_CASE("saturating measure") {
  Window win{0, 2};
  Weight one = Weight::lebesgue(win);
  PosMeasure m1 = gen_saturating_measure(one, 1.0);
  CHECK(m1.box_mass(unit_at(0, 0)) == doctest::Approx(1.0));
  CHECK(m1.box_mass(unit_at(0, -1)) == doctest::Approx(0.25));
  PosMeasure m2 = gen_saturating_measure(one, 2.0);
  CHECK(m2.atom_list()[0].mass == doctest::Approx(7.0 / 8.0));
  CHECK_THROWS_AS(gen_saturating_measure(one, 0.5), std::invalid_argument);

  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    Window big{2, 7};
    Weight w = gen_perturbed_weight(0.4, 1.0, seed, big);
    for (double r : {1.0, 1.5, 2.0}) {
      PosMeasure mu = gen_saturating_measure(w, r);
      for (const auto& I : standard_family(big))
        CHECK(rel_close(mu.box_mass(I), std::pow(w.box_mass(I), r), 1e-9));
    }
  }
}

TEST_CASE("atom and density measures") {
  Window win{0, 5};
  CHECK(gen_atom_measure(3, 0, win).is_zero());
  PosMeasure a = gen_atom_measure(3, 40, win);
  PosMeasure b = gen_atom_measure(3, 40, win);
  REQUIRE(a.atom_list().size() == 40);
  double drawn = 0.0;
  for (std::size_t i = 0; i < 40; ++i) {
    CHECK(a.atom_list()[i].z == b.atom_list()[i].z);
    CHECK(a.atom_list()[i].mass == b.atom_list()[i].mass);
    CHECK(a.atom_list()[i].mass > 0.0);
    drawn += a.atom_list()[i].mass;
  }
  CHECK(a.total_mass() == doctest::Approx(drawn));
  CHECK(a.box_mass(win.root_interval()) == doctest::Approx(drawn));
  PosMeasure d = gen_density_measure(9, win);
  double cells = 0.0;
  for (double v : d.cell_masses()) cells += v;
  CHECK(d.box_mass(win.root_interval()) == doctest::Approx(cells));
}

TEST_CASE("box mass is at most 2^p [w]_Bp times the tent mass") {
  Window win{0, 8};
  auto family = default_box_family(win);
  for (double p : {1.5, 2.0, 3.0}) {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      Weight w = gen_perturbed_weight(0.5 * (p - 1.0), 0.7, derive_seed(11, seed), win);
      double bp = bp_constant(w, p, family).value;
      for (const auto& I : standard_family(win))
        CHECK(w.box_mass(I) <= std::pow(2.0, p) * bp * w.tent_mass(I.interval()) * (1 + 1e-9));
    }
  }
}
