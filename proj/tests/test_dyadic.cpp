#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "tentgrid/dyadic.hpp"
#include "tentgrid/window.hpp"

using namespace tentgrid;
using namespace tentgrid::dyadic;

namespace {

GridCoord q(double v) {
  // test-only helper for short dyadic literals (exact for values with few binary digits)
  return GridCoord::from_parts(static_cast<std::int64_t>(v * 3.0 * 1024.0), 10);
}

// Oracle: scan m around a floating-point guess until the grid formula's interval contains x.
DyadicInterval locate_by_scan(const GridCoord& x, int j, Beta beta) {
  auto guess = static_cast<std::int64_t>(std::floor(std::ldexp(x.to_double(), -j)));
  for (std::int64_t m = guess - 3; m <= guess + 3; ++m) {
    auto [l, r] = interval_endpoints(beta, j, m);
    if (l <= x && x < r) return {beta, j, m};
  }
  FAIL("scan exhausted");
  return {};
}

// Oracle: shortest interval over both grids and all scales that contains I.
DyadicInterval envelope_by_enumeration(const Interval& I) {
  for (int j = -30; j <= 30; ++j) {
    for (Beta beta : {Beta::Zero, Beta::Third}) {
      auto lo = I.lo.floor_grid_index(j, grid_shift(beta, j));
      for (std::int64_t m = lo - 2; m <= lo + 2; ++m) {
        DyadicInterval k{beta, j, m};
        if (k.interval().contains(I)) return k;
      }
    }
  }
  FAIL("enumeration exhausted");
  return {};
}

Interval random_interval(std::mt19937_64& rng) {
  constexpr int k = 30;
  const double unit = 3.0 * static_cast<double>(std::int64_t{1} << k);
  std::uniform_int_distribution<std::int64_t> pos(-3 * (std::int64_t{1} << 50), 3 * (std::int64_t{1} << 50));
  std::uniform_real_distribution<double> loglen(-20.0, 20.0);
  std::int64_t a = pos(rng);
  auto len = static_cast<std::int64_t>(std::llround(std::exp2(loglen(rng)) * unit));
  len = std::max<std::int64_t>(len, 1);
  return {GridCoord::from_parts(a, k), GridCoord::from_parts(a + len, k)};
}

}  // namespace

TEST_CASE("interval_endpoints examples") {
  auto [l0, r0] = interval_endpoints(Beta::Zero, 0, 0);
  CHECK(l0 == GridCoord::from_int(0));
  CHECK(r0 == GridCoord::from_int(1));
  auto [l1, r1] = interval_endpoints(Beta::Third, 0, 0);
  CHECK(l1 == GridCoord::from_parts(1, 0));
  CHECK(r1 == GridCoord::from_parts(4, 0));
  auto [l2, r2] = interval_endpoints(Beta::Third, 1, 0);
  CHECK(l2 == GridCoord::from_parts(-2, 0));
  CHECK(r2 == GridCoord::from_parts(4, 0));
  CHECK(DyadicInterval{Beta::Third, 1, 0}.contains(DyadicInterval{Beta::Third, 0, 0}));
}

TEST_CASE("locate examples and scan oracle") {
  CHECK(locate(q(0.7), 0, Beta::Zero) == DyadicInterval{Beta::Zero, 0, 0});
  // 0.2 is not a grid coordinate; 205/1024 ~ 0.2002 sits in the same cell
  DyadicInterval d = locate(q(205.0 / 1024.0), 0, Beta::Third);
  CHECK(d.left() == GridCoord::from_parts(-2, 0));
  CHECK(d.right() == GridCoord::from_parts(1, 0));
  CHECK(locate(GridCoord::from_parts(1, 0), 0, Beta::Third) == DyadicInterval{Beta::Third, 0, 0});

  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::int64_t> num(-3000 * 64, 3000 * 64);
  std::uniform_int_distribution<int> j(-4, 6);
  for (int i = 0; i < 3000; ++i) {
    GridCoord x = GridCoord::from_parts(num(rng), 6);
    int jj = j(rng);
    for (Beta beta : {Beta::Zero, Beta::Third}) {
      CHECK(locate(x, jj, beta) == locate_by_scan(x, jj, beta));
    }
  }
}

TEST_CASE("children partition the parent; same-grid intervals nest or are disjoint") {
  for (Beta beta : {Beta::Zero, Beta::Third}) {
    // exhaustive over a depth-10 window below scale 0
    std::vector<DyadicInterval> all;
    for (int d = 0; d <= 10; ++d) {
      int j = -d;
      auto lo = locate(GridCoord::from_int(0), j, beta).index;
      auto hi = locate(GridCoord::from_int(1), j, beta).index;
      for (std::int64_t m = lo; m <= hi; ++m) all.push_back({beta, j, m});
    }
    for (const auto& I : all) {
      auto [lft, rgt] = I.children();
      CHECK(lft.left() == I.left());
      CHECK(lft.right() == rgt.left());
      CHECK(rgt.right() == I.right());
      CHECK(lft.parent() == I);
      CHECK(rgt.parent() == I);
    }
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    for (int i = 0; i < 20000; ++i) {
      Interval a = all[pick(rng)].interval();
      Interval b = all[pick(rng)].interval();
      bool nested = a.contains(b) || b.contains(a);
      bool disjoint = !a.intersects(b);
      CHECK((nested || disjoint));
    }
  }
}

TEST_CASE("cover_two examples") {
  auto unit = cover_two({GridCoord::from_int(0), GridCoord::from_int(1)});
  REQUIRE(unit.size() == 1);
  CHECK(unit[0] == DyadicInterval{Beta::Zero, 0, 0});

  // [0.3, 0.9) fits in [0, 1), the parent of both candidate halves
  auto a = cover_two({q(0.3), q(0.9)});
  REQUIRE(a.size() == 1);
  CHECK(a[0] == DyadicInterval{Beta::Zero, 0, 0});

  // [2.25, 3.25): |I| = 1, k0 = 3, both halves share the parent [2, 4)
  auto b = cover_two({q(2.25), q(3.25)});
  REQUIRE(b.size() == 1);
  CHECK(b[0].interval() == Interval{GridCoord::from_int(2), GridCoord::from_int(4)});

  // [0.75, 1.25) straddles 1 at every scale above 1/4
  auto c = cover_two({q(0.75), q(1.25)});
  REQUIRE(c.size() == 2);
  CHECK(c[0].interval() == Interval{q(0.0), q(1.0)});
  CHECK(c[1].interval() == Interval{q(1.0), q(2.0)});

  // [1.5, 2.75): |I| = 1.25, t = 0, k0 = 2, a < (k0-1) -> l0 = 1
  auto d = cover_two({q(1.5), q(2.75)});
  REQUIRE(d.size() == 2);
  CHECK(d[0].interval() == Interval{q(0.0), q(2.0)});
  CHECK(d[1].interval() == Interval{q(2.0), q(4.0)});

  // the |I| = 1 case with non-integer a: [k, k+1) with k = [a] does not cover
  Interval shifted{q(0.5), q(1.5)};
  CHECK_FALSE(DyadicInterval{Beta::Zero, 0, 0}.interval().contains(shifted));
  auto e = cover_two(shifted);
  REQUIRE(e.size() == 1);
  CHECK(e[0].interval() == Interval{q(0.0), q(2.0)});

  CHECK_THROWS_AS(cover_two({q(1.0), q(1.0)}), std::invalid_argument);
}

TEST_CASE("cover_two properties on random intervals") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 20000; ++i) {
    Interval I = random_interval(rng);
    auto out = cover_two(I);
    REQUIRE(!out.empty());
    REQUIRE(out.size() <= 2);
    CHECK(out.front().left() <= I.lo);
    CHECK(I.hi <= out.back().right());
    if (out.size() == 2) {
      CHECK(out[0].right() == out[1].left());
      CHECK(out[0].scale == out[1].scale);
    }
    GridCoord len = out[0].length();
    CHECK(I.length() < len);
    CHECK(len <= I.length() + I.length());
    CHECK(cover_two(I) == out);
  }
}

TEST_CASE("envelope_6x examples") {
  CHECK(envelope_6x({q(0.0), q(1.0)}) == DyadicInterval{Beta::Zero, 0, 0});

  // [0.9, 1.1) (on the 1/1024 lattice): D^{1/3} at scale -1 gives [5/6, 4/3)
  Interval b{q(922.0 / 1024.0), q(1126.0 / 1024.0)};
  DyadicInterval kb = envelope_6x(b);
  CHECK(kb.beta == Beta::Third);
  CHECK(kb.left() == GridCoord::from_parts(5, 1));
  CHECK(kb.right() == GridCoord::from_parts(4, 0));
  CHECK(kb == envelope_by_enumeration(b));

  // [0.1, 0.2): D^{1/3} at scale -3 gives [1/12, 5/24)
  Interval c{q(102.0 / 1024.0), q(205.0 / 1024.0)};
  DyadicInterval kc = envelope_6x(c);
  CHECK(kc.scale == -3);
  CHECK(kc.left() == GridCoord::from_parts(1, 2));
  CHECK(kc == envelope_by_enumeration(c));
}

TEST_CASE("envelope_6x matches enumeration and respects the 6x bound") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 5000; ++i) {
    Interval I = random_interval(rng);
    DyadicInterval k = envelope_6x(I);
    CHECK(k.interval().contains(I));
    GridCoord six = I.length() + I.length() + I.length();
    CHECK(k.length() <= six + six);
    DyadicInterval ref = envelope_by_enumeration(I);
    CHECK(k.scale == ref.scale);
  }
}

TEST_CASE("smallest_box_containing") {
  Point z1{q(0.3), q(0.6)};
  CHECK(smallest_box_containing(z1, Beta::Zero) == DyadicInterval{Beta::Zero, 0, 0});
  Point z2{q(0.3), q(0.2)};
  CHECK(smallest_box_containing(z2, Beta::Zero).interval() == Interval{q(0.25), q(0.5)});
  Point z3{q(0.5), q(0.25)};
  CHECK(smallest_box_containing(z3, Beta::Zero).interval() == Interval{q(0.5), q(1.0)});
  for (const Point& z : {z1, z2, z3}) {
    DyadicInterval I = smallest_box_containing(z, Beta::Third);
    CHECK(Box{I.interval()}.contains(z));
    auto [l, r] = I.children();
    CHECK_FALSE(Box{l.interval()}.contains(z));
    CHECK_FALSE(Box{r.interval()}.contains(z));
  }
  CHECK_THROWS_AS(smallest_box_containing({q(0.3), q(0.0)}, Beta::Zero), std::invalid_argument);
}

TEST_CASE("ancestors") {
  auto chain = ancestors({Beta::Zero, -2, 0}, 0);
  REQUIRE(chain.size() == 3);
  CHECK(chain[0].interval() == Interval{q(0.0), q(0.25)});
  CHECK(chain[1].interval() == Interval{q(0.0), q(0.5)});
  CHECK(chain[2].interval() == Interval{q(0.0), q(1.0)});
  auto third = ancestors({Beta::Third, 0, 0}, 1);
  REQUIRE(third.size() == 2);
  CHECK(third[1].interval() == Interval{GridCoord::from_parts(-2, 0), GridCoord::from_parts(4, 0)});
  CHECK(ancestors({Beta::Zero, 0, 0}, 0).size() == 1);
}

TEST_CASE("box and tent membership") {
  Interval I{q(0.0), q(1.0)};
  CHECK(Box{I}.contains({q(0.5), q(0.99)}));
  CHECK_FALSE(Box{I}.contains({q(1.0), q(0.5)}));
  CHECK_FALSE(Box{I}.contains({q(0.5), q(1.0)}));
  CHECK(Tent{I}.contains({q(0.0), q(0.75)}));
  CHECK_FALSE(Tent{I}.contains({q(0.0), q(0.5)}));
  CHECK(Box{I}.area() == 1.0);
  CHECK(Tent{I}.area() == 0.5);
}

TEST_CASE("tents of a window tile it above the bottom strip") {
  // exact identity in units of (leaf width)^2 / 2
  for (int D : {0, 3, 8}) {
    Window w{0, D};
    std::int64_t half_units = 0;  // each tent at level d has area 4^(D-d)/2 leaf^2
    for (int d = 0; d <= D; ++d) half_units += (std::int64_t{1} << d) * (std::int64_t{1} << (2 * (D - d)));
    // window area 4^D leaf^2 = 2 * 4^D half units; strip = 2^D * 1/2 leaf^2 = 2^D half units
    CHECK(half_units == 2 * (std::int64_t{1} << (2 * D)) - (std::int64_t{1} << D));

    // pairwise disjointness: sample points hit exactly one tent
    std::mt19937_64 rng(29);
    std::uniform_int_distribution<std::int64_t> xs(0, (std::int64_t{3} << 20) - 1);
    std::uniform_int_distribution<std::int64_t> ys(1, (std::int64_t{3} << 20) - 1);
    for (int i = 0; i < 500; ++i) {
      Point z{GridCoord::from_parts(xs(rng), 20), GridCoord::from_parts(ys(rng), 20)};
      int hits = 0;
      for (int t = 0; t < w.tile_count(); ++t)
        if (Tent{w.tile_interval(t).interval()}.contains(z)) ++hits;
      bool above_strip = GridCoord::dyadic(1, w.leaf_scale() - 1) < z.y;
      bool on_line = z.y.is_power_of_two();
      if (!on_line) CHECK(hits == (above_strip ? 1 : 0));
      CHECK(hits <= 1);
    }
  }
}
