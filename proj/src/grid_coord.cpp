#include "tentgrid/grid_coord.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace tentgrid {

namespace {

using i128 = __int128;

int bit_length(i128 v) {
  if (v < 0) v = -v;
  int n = 0;
  while (v != 0) {
    v >>= 1;
    ++n;
  }
  return n;
}

i128 shl_checked(i128 v, int s) {
  if (v == 0 || s == 0) return v;
  if (bit_length(v) + s > 125) throw std::overflow_error("GridCoord: shift overflow");
  return v * (static_cast<i128>(1) << s);
}

i128 floor_div(i128 n, i128 d) {
  i128 q = n / d;
  if ((n % d != 0) && ((n < 0) != (d < 0))) --q;
  return q;
}

GridCoord normalize(i128 num, int k) {
  if (num == 0) return GridCoord::from_parts(0, 0);
  while (k > 0 && (num % 2) == 0) {
    num /= 2;
    --k;
  }
  if (num > INT64_MAX || num < -INT64_MAX) throw std::overflow_error("GridCoord: numerator overflow");
  return GridCoord::from_parts(static_cast<std::int64_t>(num), k);
}

}  // namespace

GridCoord GridCoord::from_parts(std::int64_t num, int log2_den) {
  GridCoord g;
  if (num == 0) return g;
  if (log2_den < 0) {
    i128 n = shl_checked(num, -log2_den);
    if (n > INT64_MAX || n < -INT64_MAX) throw std::overflow_error("GridCoord: numerator overflow");
    num = static_cast<std::int64_t>(n);
    log2_den = 0;
  }
  while (log2_den > 0 && (num % 2) == 0) {
    num /= 2;
    --log2_den;
  }
  g.num_ = num;
  g.k_ = log2_den;
  return g;
}

GridCoord GridCoord::from_int(std::int64_t n) { return from_parts(3 * n, 0); }

GridCoord GridCoord::dyadic(std::int64_t n, int e) { return from_parts(3 * n, -e); }

GridCoord GridCoord::parse(std::string_view text) {
  auto to_i64 = [&](std::string_view s) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
      throw std::invalid_argument("GridCoord: bad number '" + std::string(s) + "'");
    return v;
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return from_int(to_i64(text));
  std::int64_t n = to_i64(text.substr(0, slash));
  std::string_view den = text.substr(slash + 1);
  if (den.size() < 2 || den.front() != '(' || den.back() != ')')
    throw std::invalid_argument("GridCoord: bad denominator '" + std::string(text) + "'");
  den = den.substr(1, den.size() - 2);
  bool has_three = false;
  if (den.starts_with("3*")) {
    has_three = true;
    den.remove_prefix(2);
  }
  if (!den.starts_with("2^")) throw std::invalid_argument("GridCoord: bad denominator '" + std::string(text) + "'");
  auto k = static_cast<int>(to_i64(den.substr(2)));
  if (k < 0) throw std::invalid_argument("GridCoord: negative exponent");
  if (has_three) return from_parts(n, k);
  return from_parts(3 * n, k);
}

GridCoord GridCoord::operator+(const GridCoord& o) const {
  int k = std::max(k_, o.k_);
  i128 a = shl_checked(num_, k - k_);
  i128 b = shl_checked(o.num_, k - o.k_);
  return normalize(a + b, k);
}

GridCoord GridCoord::operator-(const GridCoord& o) const { return *this + (-o); }

GridCoord GridCoord::mul_pow2(int e) const {
  if (num_ == 0) return *this;
  if (e >= 0) {
    if (e <= k_) return from_parts(num_, k_ - e);
    i128 n = shl_checked(num_, e - k_);
    return normalize(n, 0);
  }
  return from_parts(num_, k_ - e);
}

std::strong_ordering GridCoord::operator<=>(const GridCoord& o) const {
  int k = std::max(k_, o.k_);
  i128 a = shl_checked(num_, k - k_);
  i128 b = shl_checked(o.num_, k - o.k_);
  if (a < b) return std::strong_ordering::less;
  if (a > b) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

double GridCoord::to_double() const { return static_cast<double>(to_long_double()); }

long double GridCoord::to_long_double() const {
  return std::ldexp(static_cast<long double>(num_) / 3.0L, -k_);
}

std::string GridCoord::to_string() const {
  return std::to_string(num_) + "/(3*2^" + std::to_string(k_) + ")";
}

std::int64_t GridCoord::floor_grid_index(int j, int s) const {
  int e = k_ + j;
  i128 n;
  i128 d;
  if (e >= 0) {
    n = static_cast<i128>(num_) - shl_checked(s, e);
    d = shl_checked(3, e);
  } else {
    n = shl_checked(num_, -e) - s;
    d = 3;
  }
  i128 q = floor_div(n, d);
  if (q > INT64_MAX || q < INT64_MIN) throw std::overflow_error("GridCoord: index overflow");
  return static_cast<std::int64_t>(q);
}

std::int64_t GridCoord::floor_div_pow2(int e, double* frac) const {
  int ee = k_ + e;
  i128 n = num_;
  i128 d = 3;
  if (ee >= 0) {
    d = shl_checked(3, ee);
  } else {
    n = shl_checked(num_, -ee);
  }
  i128 q = floor_div(n, d);
  if (frac != nullptr) {
    i128 r = n - q * d;
    *frac = static_cast<double>(static_cast<long double>(r) / static_cast<long double>(d));
  }
  return static_cast<std::int64_t>(q);
}

int GridCoord::floor_log2() const {
  if (num_ <= 0) throw std::domain_error("GridCoord::floor_log2: value must be positive");
  // find the largest u with 3 * 2^u <= num; then t = u - k
  int b = bit_length(num_) - 1;
  int u = b - 2;
  auto fits = [&](int uu) {
    if (uu >= 0) return shl_checked(3, uu) <= static_cast<i128>(num_);
    return static_cast<i128>(3) <= shl_checked(num_, -uu);
  };
  while (fits(u + 1)) ++u;
  while (!fits(u)) --u;
  return u - k_;
}

bool GridCoord::is_power_of_two() const {
  if (num_ <= 0 || num_ % 3 != 0) return false;
  return std::has_single_bit(static_cast<std::uint64_t>(num_ / 3));
}

}  // namespace tentgrid
