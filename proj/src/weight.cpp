#include "tentgrid/weight.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tentgrid {

using dyadic::Beta;
using dyadic::DyadicInterval;
using dyadic::Interval;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> tile_to_cells(std::span<const double> tiles) {
  std::vector<double> cells(2 * tiles.size());
  for (std::size_t t = 0; t < tiles.size(); ++t) cells[2 * t] = cells[2 * t + 1] = tiles[t];
  return cells;
}

}  // namespace

Weight Weight::power(const Window& window, double alpha, double coef) {
  if (!(alpha > -1.0)) throw std::invalid_argument("power weight requires alpha > -1");
  if (!(coef > 0.0) || !std::isfinite(coef)) throw std::invalid_argument("power weight coefficient must be positive");
  return make_power(window, alpha, coef);
}

Weight Weight::make_power(const Window& window, double alpha, double coef) {
  Weight w;
  w.window_ = window;
  w.alpha_ = alpha;
  w.coef_ = coef;
  w.densities_.resize(window.tile_count());
  for (int t = 0; t < window.tile_count(); ++t) {
    int s = window.scale_of_level(Window::level_of(t));
    double lo = std::ldexp(1.0, s - 1);
    w.densities_[t] = coef * power_profile_integral(lo, 2.0 * lo, alpha) / lo;
  }
  w.cache_cell_masses();
  return w;
}

Weight Weight::model() const { return alpha_ ? tiled(window_, densities_) : *this; }

Weight Weight::tiled(const Window& window, std::vector<double> densities) {
  if (static_cast<int>(densities.size()) != window.tile_count())
    throw std::invalid_argument("tiled weight: expected " + std::to_string(window.tile_count()) + " tile densities");
  bool positive = false;
  for (double d : densities) {
    if (!(d >= 0.0) || !std::isfinite(d)) throw std::invalid_argument("tiled weight: densities must be finite and >= 0");
    positive = positive || d > 0.0;
  }
  if (!positive) throw std::invalid_argument("tiled weight: total mass must be positive");
  Weight w;
  w.window_ = window;
  w.densities_ = std::move(densities);
  w.index_ = MassIndex(window, tile_to_cells(w.densities_), 0.0);
  w.cache_cell_masses();
  return w;
}

double Weight::alpha() const {
  if (!alpha_) throw std::logic_error("tiled weight has no power descriptor");
  return *alpha_;
}

double Weight::cell_coefficient(int cell) const {
  return alpha_ ? coef_ : densities_[cell / 2];
}

double Weight::box_mass(const Interval& I) const {
  double len = I.length().to_double();
  if (len <= 0.0) return 0.0;
  if (alpha_) {
    if (*alpha_ <= -1.0) return kInf;
    return coef_ * std::pow(len, *alpha_ + 2.0) / (*alpha_ + 1.0);
  }
  return index_.rect(I.lo, I.hi, 0.0, len);
}

double Weight::tent_mass(const Interval& I) const {
  double len = I.length().to_double();
  if (len <= 0.0) return 0.0;
  if (alpha_) return coef_ * len * power_profile_integral(len / 2.0, len, *alpha_);
  return index_.rect(I.lo, I.hi, len / 2.0, len);
}

double Weight::rect_mass(const GridCoord& x0, const GridCoord& x1, double y0, double y1) const {
  if (!(x0 < x1) || !(y1 > y0)) return 0.0;
  if (alpha_) {
    if (*alpha_ <= -1.0 && y0 <= 0.0) return kInf;
    return coef_ * (x1 - x0).to_double() * power_profile_integral(std::max(y0, 0.0), y1, *alpha_);
  }
  return index_.rect(x0, x1, y0, y1);
}

void Weight::cache_cell_masses() {
  cell_masses_.resize(window_.cell_count());
  for (int c = 0; c < window_.cell_count(); ++c) cell_masses_[c] = compute_cell_mass(c);
}

double Weight::compute_cell_mass(int cell) const {
  double width = window_.cell_x(cell).length().to_double();
  if (alpha_)
    return coef_ * width * power_profile_integral(window_.cell_y_lo(cell), window_.cell_y_hi(cell), *alpha_);
  return densities_[cell / 2] * window_.cell_area(cell);
}

double Weight::tiled_mass() const {
  long double total = 0.0L;
  for (double m : cell_masses_) total += m;
  return static_cast<double>(total);
}

double Weight::inf_box(const Interval& I) const {
  double len = I.length().to_double();
  if (alpha_) {
    if (*alpha_ > 0.0) return 0.0;
    if (*alpha_ == 0.0) return coef_;
    return coef_ * std::pow(len, *alpha_);
  }
  double best = kInf;
  Interval root = window_.root_interval();
  if (!I.intersects(root)) return best;
  for (int d = 0; d <= window_.depth; ++d) {
    int s = window_.scale_of_level(d);
    if (!(std::ldexp(1.0, s - 1) < len)) continue;
    std::int64_t last = (std::int64_t{1} << d) - 1;
    std::int64_t m0 = std::max<std::int64_t>(0, I.lo.floor_div_pow2(s));
    double frac = 0.0;
    std::int64_t hi_floor = I.hi.floor_div_pow2(s, &frac);
    std::int64_t m1 = std::min<std::int64_t>(last, frac > 0.0 ? hi_floor : hi_floor - 1);
    for (std::int64_t m = m0; m <= m1; ++m) {
      DyadicInterval t{Beta::Zero, s, m};
      if (t.interval().intersects(I)) best = std::min(best, densities_[Window::tile_index(d, m)]);
    }
  }
  return best;
}

Weight Weight::dual(double p) const {
  if (!(p > 1.0)) throw std::invalid_argument("dual weight requires p > 1; use inf_box for p = 1");
  double e = 1.0 - p / (p - 1.0);
  if (alpha_) return make_power(window_, *alpha_ * e, std::pow(coef_, e));
  std::vector<double> dens(densities_.size());
  for (std::size_t t = 0; t < dens.size(); ++t) {
    if (!(densities_[t] > 0.0)) throw std::invalid_argument("dual weight: zero tile density makes the dual infinite");
    dens[t] = std::pow(densities_[t], e);
  }
  return tiled(window_, std::move(dens));
}

Weight Weight::scaled(double c) const {
  if (!(c > 0.0)) throw std::invalid_argument("weight scale factor must be positive");
  if (alpha_) return make_power(window_, *alpha_, coef_ * c);
  std::vector<double> dens = densities_;
  for (double& d : dens) d *= c;
  return tiled(window_, std::move(dens));
}

MassIndex Weight::weighted_index(std::span<const double> cell_values) const {
  std::vector<double> v(cell_values.begin(), cell_values.end());
  for (std::size_t c = 0; c < v.size(); ++c) v[c] *= cell_coefficient(static_cast<int>(c));
  return MassIndex(window_, v, profile_alpha());
}

double bp_term(const Weight& w, const Weight& sigma, double p, const Interval& I) {
  double wq = w.box_mass(I);
  if (!(wq > 0.0)) return 0.0;
  double area = dyadic::Box{I}.area();
  return (wq / area) * std::pow(sigma.box_mass(I) / area, p - 1.0);
}

BpResult bp_constant(const Weight& w, double p, std::span<const Interval> family) {
  if (family.empty()) throw std::invalid_argument("bp_constant: empty box family");
  Weight sigma = w.dual(p);
  BpResult r{-1.0, family.front()};
  for (const Interval& I : family) {
    double v = bp_term(w, sigma, p, I);
    if (v > r.value) r = {v, I};
  }
  return r;
}

std::vector<DyadicInterval> standard_family(const Window& window) {
  std::vector<DyadicInterval> out;
  out.reserve(window.tile_count());
  for (int t = 0; t < window.tile_count(); ++t) out.push_back(window.tile_interval(t));
  return out;
}

std::vector<Interval> default_box_family(const Window& window) {
  std::vector<Interval> out;
  Interval root = window.root_interval();
  for (int s = window.top_scale; s >= window.leaf_scale(); --s) {
    for (Beta b : {Beta::Zero, Beta::Third}) {
      DyadicInterval J = dyadic::locate(root.lo, s, b);
      for (; J.left() < root.hi; ++J.index) out.push_back(J.interval());
    }
  }
  return out;
}

}  // namespace tentgrid
