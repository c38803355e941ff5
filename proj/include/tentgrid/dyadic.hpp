#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tentgrid/grid_coord.hpp"

namespace tentgrid::dyadic {

/// Shift of a dyadic grid: beta = 0 (standard) or beta = 1/3.
enum class Beta : std::uint8_t { Zero = 0, Third = 1 };

std::string to_string(Beta b);
Beta parse_beta(const std::string& s);

/// Half-open interval [lo, hi) with exact endpoints.
struct Interval {
  GridCoord lo;
  GridCoord hi;

  GridCoord length() const { return hi - lo; }
  bool contains(const GridCoord& x) const { return lo <= x && x < hi; }
  bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
  bool intersects(const Interval& o) const { return lo < o.hi && o.lo < hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// The interval 2^j([0,1) + m + (-1)^j beta) of the grid D^beta.
struct DyadicInterval {
  Beta beta = Beta::Zero;
  int scale = 0;
  std::int64_t index = 0;

  GridCoord left() const;
  GridCoord right() const;
  GridCoord length() const { return GridCoord::dyadic(1, scale); }
  Interval interval() const { return {left(), right()}; }
  bool contains(const GridCoord& x) const { return interval().contains(x); }
  bool contains(const DyadicInterval& o) const { return interval().contains(o.interval()); }

  DyadicInterval parent() const;
  /// Left half I^- and right half I^+.
  std::pair<DyadicInterval, DyadicInterval> children() const;

  friend bool operator==(const DyadicInterval&, const DyadicInterval&) = default;
  friend auto operator<=>(const DyadicInterval&, const DyadicInterval&) = default;
};

/// Carleson box Q_I = {x + iy : x in I, 0 < y < |I|}.
struct Box {
  Interval base;
  bool contains(const Point& z) const;
  double area() const;
};

/// Upper half T_I = {x + iy : x in I, |I|/2 < y < |I|}.
struct Tent {
  Interval base;
  bool contains(const Point& z) const;
  double area() const;
};

/// Sign (-1)^j * 3 * beta in {-1, 0, 1}.
int grid_shift(Beta beta, int scale);

std::pair<GridCoord, GridCoord> interval_endpoints(Beta beta, int scale, std::int64_t index);

/// The scale-j interval of D^beta containing x.
DyadicInterval locate(const GridCoord& x, int scale, Beta beta);

/// At most two adjacent intervals of D^0 of common length L covering I,
/// with |I| < L <= 2|I|. A dyadic input is returned unchanged.
std::vector<DyadicInterval> cover_two(const Interval& I);

/// Shortest K in D^0 or D^{1/3} with I contained in K and |K| <= 6|I|.
DyadicInterval envelope_6x(const Interval& I);

/// Smallest dyadic Carleson box of D^beta containing z (Im z > 0).
DyadicInterval smallest_box_containing(const Point& z, Beta beta);

/// I and its ancestors up to and including scale top_scale, by increasing scale.
std::vector<DyadicInterval> ancestors(const DyadicInterval& I, int top_scale);

}  // namespace tentgrid::dyadic
