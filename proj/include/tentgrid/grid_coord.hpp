#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace tentgrid {

/// Exact rational coordinate of the form num / (3 * 2^k), k >= 0.
///
/// Every endpoint of both shifted dyadic grids is representable. The
/// representation is canonical: k is minimal, so equal values have equal
/// fields.
class GridCoord {
public:
  constexpr GridCoord() = default;

  /// num / (3 * 2^k)
  static GridCoord from_parts(std::int64_t num, int log2_den);
  static GridCoord from_int(std::int64_t n);
  /// n * 2^e
  static GridCoord dyadic(std::int64_t n, int e);
  /// Parses "n/(3*2^k)", a plain integer or a dyadic-style "n/(2^k)".
  static GridCoord parse(std::string_view text);

  std::int64_t num() const { return num_; }
  int log2_den() const { return k_; }

  GridCoord operator+(const GridCoord& o) const;
  GridCoord operator-(const GridCoord& o) const;
  GridCoord operator-() const { return from_parts(-num_, k_); }
  GridCoord operator*(std::int64_t n) const { return from_parts(num_ * n, k_); }
  /// this * 2^e
  GridCoord mul_pow2(int e) const;

  friend bool operator==(const GridCoord&, const GridCoord&) = default;
  std::strong_ordering operator<=>(const GridCoord& o) const;

  bool is_positive() const { return num_ > 0; }
  double to_double() const;
  long double to_long_double() const;
  std::string to_string() const;

  /// floor((this / 2^j) - s / 3) for s in {-1, 0, 1}; the grid-index
  /// inversion used by locate().
  std::int64_t floor_grid_index(int j, int s) const;

  /// Split this / 2^e into an integer part and a fractional remainder in [0, 1).
  std::int64_t floor_div_pow2(int e, double* frac = nullptr) const;

  /// The unique t with 2^t <= this < 2^(t+1); requires a positive value.
  int floor_log2() const;
  /// True iff the value equals 2^t for some integer t.
  bool is_power_of_two() const;

private:
  std::int64_t num_ = 0;
  int k_ = 0;
};

/// A point x + iy of the upper half-plane with exact coordinates.
struct Point {
  GridCoord x;
  GridCoord y;
  friend bool operator==(const Point&, const Point&) = default;
};

}  // namespace tentgrid
