#include "tentgrid/dyadic.hpp"

#include <stdexcept>

namespace tentgrid::dyadic {

std::string to_string(Beta b) { return b == Beta::Zero ? "0" : "1/3"; }

Beta parse_beta(const std::string& s) {
  if (s == "0") return Beta::Zero;
  if (s == "1/3") return Beta::Third;
  throw std::invalid_argument("beta must be \"0\" or \"1/3\", got '" + s + "'");
}

int grid_shift(Beta beta, int scale) {
  if (beta == Beta::Zero) return 0;
  return (scale % 2 == 0) ? 1 : -1;
}

std::pair<GridCoord, GridCoord> interval_endpoints(Beta beta, int scale, std::int64_t index) {
  GridCoord left = GridCoord::from_parts(3 * index + grid_shift(beta, scale), 0).mul_pow2(scale);
  return {left, left + GridCoord::dyadic(1, scale)};
}

GridCoord DyadicInterval::left() const { return interval_endpoints(beta, scale, index).first; }

GridCoord DyadicInterval::right() const { return interval_endpoints(beta, scale, index).second; }

DyadicInterval DyadicInterval::parent() const { return locate(left(), scale + 1, beta); }

std::pair<DyadicInterval, DyadicInterval> DyadicInterval::children() const {
  GridCoord l = left();
  return {locate(l, scale - 1, beta), locate(l + GridCoord::dyadic(1, scale - 1), scale - 1, beta)};
}

bool Box::contains(const Point& z) const {
  return base.contains(z.x) && z.y.is_positive() && z.y < base.length();
}

double Box::area() const {
  long double len = base.length().to_long_double();
  return static_cast<double>(len * len);
}

bool Tent::contains(const Point& z) const {
  GridCoord len = base.length();
  return base.contains(z.x) && len.mul_pow2(-1) < z.y && z.y < len;
}

double Tent::area() const {
  long double len = base.length().to_long_double();
  return static_cast<double>(len * len / 2.0L);
}

DyadicInterval locate(const GridCoord& x, int scale, Beta beta) {
  return {beta, scale, x.floor_grid_index(scale, grid_shift(beta, scale))};
}

std::vector<DyadicInterval> cover_two(const Interval& I) {
  if (!(I.lo < I.hi)) throw std::invalid_argument("cover_two: degenerate interval");
  const GridCoord len = I.length();
  const int t = len.floor_log2();  // 2^t <= |I| < 2^(t+1)

  if (len.is_power_of_two()) {
    DyadicInterval d = locate(I.lo, t, Beta::Zero);
    if (d.left() == I.lo) return {d};
  }

  // k0 = max{l : a < l 2^t <= b}
  const std::int64_t k0 = I.hi.floor_grid_index(t, 0);
  auto at = [&](std::int64_t l) { return GridCoord::dyadic(l, t); };

  std::vector<DyadicInterval> out;
  if (at(k0 - 1) <= I.lo) {
    // I lies in [(k0-1)2^t, (k0+1)2^t); lift both halves to scale t+1.
    DyadicInterval h1 = locate(at(k0 - 1), t + 1, Beta::Zero);
    DyadicInterval h2 = locate(at(k0), t + 1, Beta::Zero);
    out.push_back(h1);
    if (!(h2 == h1)) out.push_back(h2);
  } else {
    // a in [(k0-2)2^t, (k0-1)2^t): pair split at l0 2^(t+1) with k0 = 2 l0 or 2 l0 + 1.
    std::int64_t l0 = (k0 >= 0) ? k0 / 2 : -((-k0 + 1) / 2);
    out.push_back({Beta::Zero, t + 1, l0 - 1});
    out.push_back({Beta::Zero, t + 1, l0});
  }

  // Drop a member that misses I entirely (possible when b sits on a grid line).
  std::vector<DyadicInterval> kept;
  for (const auto& d : out)
    if (d.interval().intersects(I)) kept.push_back(d);
  return kept;
}

DyadicInterval envelope_6x(const Interval& I) {
  if (!(I.lo < I.hi)) throw std::invalid_argument("envelope_6x: degenerate interval");
  const GridCoord len = I.length();
  const GridCoord three_len = len + len + len;
  int j = len.floor_log2();
  if (!len.is_power_of_two()) ++j;
  for (; GridCoord::dyadic(1, j - 1) <= three_len; ++j) {
    for (Beta beta : {Beta::Zero, Beta::Third}) {
      DyadicInterval k = locate(I.lo, j, beta);
      if (I.hi <= k.right()) return k;
    }
  }
  throw std::logic_error("envelope_6x: no enclosing interval within 6|I| (search exhausted)");
}

DyadicInterval smallest_box_containing(const Point& z, Beta beta) {
  if (!z.y.is_positive()) throw std::invalid_argument("smallest_box_containing: Im z must be positive");
  // least 2^j strictly greater than y
  int j = z.y.floor_log2() + 1;
  return locate(z.x, j, beta);
}

std::vector<DyadicInterval> ancestors(const DyadicInterval& I, int top_scale) {
  std::vector<DyadicInterval> out{I};
  while (out.back().scale < top_scale) out.push_back(out.back().parent());
  return out;
}

}  // namespace tentgrid::dyadic
