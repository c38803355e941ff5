#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace tentgrid {

/// Exponent bundle (p, q) with the derived conjugate p' and the exponent
/// s = p / (p - q) of the q < p regime.
struct ExponentConfig {
  double p = 2.0;
  double q = 2.0;

  static ExponentConfig make(double p, double q) {
    if (!(p >= 1.0) || !(q >= 1.0) || !std::isfinite(p) || !std::isfinite(q))
      throw std::invalid_argument("exponents must satisfy 1 <= p, q < inf");
    return {p, q};
  }

  /// p / (p - 1); +inf when p == 1.
  double p_prime() const {
    return p == 1.0 ? std::numeric_limits<double>::infinity() : p / (p - 1.0);
  }

  bool has_s() const { return q < p; }
  double s() const {
    if (!has_s()) throw std::domain_error("s = p/(p-q) requires q < p");
    return p / (p - q);
  }
};

/// Conjugate exponent of t > 1.
inline double conjugate(double t) { return t / (t - 1.0); }

}  // namespace tentgrid
