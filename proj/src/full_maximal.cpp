#include "tentgrid/full_maximal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tentgrid {

namespace {

// Integrals over [a/R, b/R) x (0, k/R) of a refined-cell density in O(1):
// per band, the full-height integral over (-inf, c/R) for every column
// boundary c, accumulated from the leaf band upwards.
class GridBoxIntegrator {
public:
  GridBoxIntegrator(const MassIndex& idx, int cols, int log2r, int max_k) : cols_(cols) {
    const Window& win = idx.window();
    const int bands = win.depth + 1;
    band_.assign(bands, std::vector<long double>(cols + 1, 0.0L));
    cum_.assign(bands + 1, std::vector<long double>(cols + 1, 0.0L));
    for (int b = 0; b < bands; ++b) {
      int level = win.depth - b;
      long double scale = static_cast<long double>(idx.unit_width(level)) * idx.band_profile(level);
      for (int c = 0; c <= cols; ++c) band_[b][c] = idx.band_prefix(level, GridCoord::dyadic(c, -log2r)) * scale;
      for (int c = 0; c <= cols; ++c) cum_[b + 1][c] = cum_[b][c] + band_[b][c];
    }
    full_.resize(max_k + 1);
    partial_.resize(max_k + 1);
    frac_.resize(max_k + 1);
    for (int k = 0; k <= max_k; ++k) {
      double h = std::ldexp(static_cast<double>(k), -log2r);
      int nfull = 0;
      while (nfull < bands && std::ldexp(1.0, win.leaf_scale() + nfull) <= h) ++nfull;
      full_[k] = nfull;
      partial_[k] = nfull < bands ? nfull : -1;
      if (partial_[k] >= 0) {
        int level = win.depth - nfull;
        double whole = idx.band_profile(level);
        frac_[k] = whole > 0.0 ? idx.band_profile(level, 0.0, h) / whole : 0.0;
      }
    }
  }

  // a and b already clamped to [0, cols].
  double operator()(int a, int b, int k) const {
    long double v = cum_[full_[k]][b] - cum_[full_[k]][a];
    if (partial_[k] >= 0 && frac_[k] > 0.0) v += frac_[k] * (band_[partial_[k]][b] - band_[partial_[k]][a]);
    return static_cast<double>(v);
  }

private:
  int cols_;
  std::vector<std::vector<long double>> band_;
  std::vector<std::vector<long double>> cum_;
  std::vector<int> full_;
  std::vector<int> partial_;
  std::vector<double> frac_;
};

// mu of atoms in [a/R, b/R) x (0, k/R) from a 2D prefix table.
class AtomGrid {
public:
  AtomGrid(const PosMeasure& mu, int cols, int rows, int log2r) : cols_(cols), rows_(rows) {
    sum_.assign(static_cast<std::size_t>(rows + 1) * (cols + 1), 0.0L);
    std::vector<long double> cell(static_cast<std::size_t>(rows) * cols, 0.0L);
    for (const Atom& a : mu.atom_list()) {
      std::int64_t c = a.z.x.floor_div_pow2(-log2r);
      std::int64_t r = a.z.y.floor_div_pow2(-log2r);
      if (c < 0 || c >= cols || r < 0 || r >= rows) throw std::logic_error("atom outside the window box");
      cell[static_cast<std::size_t>(r) * cols + c] += a.mass;
    }
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c)
        at(r + 1, c + 1) = cell[static_cast<std::size_t>(r) * cols + c] + at(r, c + 1) + at(r + 1, c) - at(r, c);
  }

  double operator()(int a, int b, int k) const {
    int h = std::min(k, rows_);
    return static_cast<double>(at(h, b) - at(h, a));
  }

private:
  long double& at(int r, int c) { return sum_[static_cast<std::size_t>(r) * (cols_ + 1) + c]; }
  long double at(int r, int c) const { return sum_[static_cast<std::size_t>(r) * (cols_ + 1) + c]; }
  int cols_;
  int rows_;
  std::vector<long double> sum_;
};

void check_resolution(const Window& w, int log2r) {
  if (log2r < 1 - w.leaf_scale()) throw std::invalid_argument("resolution too coarse for the window's leaf scale");
  if (w.top_scale + log2r > 11) throw std::invalid_argument("resolution too fine: at most 2^11 columns");
}

// Sup over admissible intervals, per square. num(lo, hi, k) and den(lo, hi, k)
// receive the interval [a, a+k) clamped to the window columns.
template <class Num, class Den>
void fill_table(FullMaximalTable& t, const Num& num, const Den& den) {
  const int C = t.columns();
  const int H = t.rows();
  std::vector<double> best(static_cast<std::size_t>(H + 1) * C, 0.0);
#pragma omp parallel for schedule(dynamic, 4)
  for (int k = 1; k <= H + 1; ++k) {
    const int n = C + k - 1;  // starts a = 1-k .. C-1
    std::vector<double> ratio(n);
    for (int i = 0; i < n; ++i) {
      int a = i + 1 - k;
      int lo = std::max(a, 0), hi = std::min(a + k, C);
      double d = den(lo, hi, k);
      double v = d > 0.0 ? num(lo, hi, k) / d : 0.0;
      ratio[i] = v;
    }
    // column c is covered by starts i in [c, c + k - 1]
    std::vector<int> dq(n);
    int head = 0, tail = 0;
    double* out = &best[static_cast<std::size_t>(k - 1) * C];
    for (int i = 0; i < n; ++i) {
      while (tail > head && ratio[dq[tail - 1]] <= ratio[i]) --tail;
      dq[tail++] = i;
      int c = i - (k - 1);
      if (c < 0) continue;
      while (dq[head] < c) ++head;
      out[c] = ratio[dq[head]];
    }
  }
  // row r needs lengths k >= r + 1
  std::vector<double> run(best.begin() + static_cast<std::ptrdiff_t>(H) * C, best.end());
  for (int r = H - 1; r >= 0; --r) {
    const double* b = &best[static_cast<std::size_t>(r) * C];
    for (int c = 0; c < C; ++c) {
      run[c] = std::max(run[c], b[c]);
      t.at(r, c) = run[c];
    }
  }
}

template <class Num>
void fill_with_weight(FullMaximalTable& t, const Num& num, const Weight& w) {
  const int log2r = t.log2_resolution();
  if (w.is_power()) {
    const double a = w.alpha(), coef = w.coefficient();
    auto den = [&](int, int, int k) {
      double len = std::ldexp(static_cast<double>(k), -log2r);
      return coef * std::pow(len, a + 2.0) / (a + 1.0);
    };
    fill_table(t, num, den);
  } else {
    std::vector<double> ones(w.window().cell_count(), 1.0);
    GridBoxIntegrator den(w.weighted_index(ones), t.columns(), log2r, t.rows() + 1);
    fill_table(t, num, den);
  }
}

}  // namespace

FullMaximalTable::FullMaximalTable(const Window& window, int log2_resolution)
    : window_(window), log2r_(log2_resolution) {
  check_resolution(window, log2_resolution);
  cols_ = 1 << (window.top_scale + log2_resolution);
  rows_ = cols_;
  value_.assign(static_cast<std::size_t>(rows_) * cols_, 0.0);
}

double FullMaximalTable::at(const Point& z) const {
  std::int64_t c = z.x.floor_div_pow2(-log2r_);
  std::int64_t r = z.y.floor_div_pow2(-log2r_);
  if (!z.y.is_positive() || c < 0 || c >= cols_ || r >= rows_) return 0.0;
  return at(static_cast<int>(r), static_cast<int>(c));
}

Point FullMaximalTable::center(int row, int col) const {
  return {GridCoord::dyadic(2 * col + 1, -log2r_ - 1), GridCoord::dyadic(2 * row + 1, -log2r_ - 1)};
}

double FullMaximalTable::max_value() const {
  double m = 0.0;
  for (double v : value_) m = std::max(m, v);
  return m;
}

FullMaximalTable full_maximal(const TileFunction& f, const Weight& w, int log2_resolution) {
  FullMaximalTable t(f.window, log2_resolution);
  std::vector<double> absf(f.cells.size());
  for (std::size_t c = 0; c < absf.size(); ++c) absf[c] = std::fabs(f.cells[c]);
  GridBoxIntegrator num(w.weighted_index(absf), t.columns(), log2_resolution, t.rows() + 1);
  fill_with_weight(t, num, w);
  return t;
}

FullMaximalTable full_k_mu(const PosMeasure& mu, const Weight& w, int log2_resolution) {
  FullMaximalTable t(w.window(), log2_resolution);
  AtomGrid atoms(mu, t.columns(), t.rows(), log2_resolution);
  if (mu.has_density()) {
    std::vector<double> dens(w.window().cell_count());
    for (int c = 0; c < w.window().cell_count(); ++c) dens[c] = mu.densities()[c / 2];
    GridBoxIntegrator cont(MassIndex(w.window(), dens, 0.0), t.columns(), log2_resolution, t.rows() + 1);
    auto num = [&](int lo, int hi, int k) { return atoms(lo, hi, k) + cont(lo, hi, k); };
    fill_with_weight(t, num, w);
  } else {
    fill_with_weight(t, atoms, w);
  }
  return t;
}

namespace reference {

FullMaximalTable full_maximal(const TileFunction& f, const Weight& w, int log2_resolution) {
  FullMaximalTable t(f.window, log2_resolution);
  std::vector<double> absf(f.cells.size());
  for (std::size_t c = 0; c < absf.size(); ++c) absf[c] = std::fabs(f.cells[c]);
  MassIndex idx = w.weighted_index(absf);
  const int C = t.columns(), H = t.rows();
  for (int r = 0; r < H; ++r) {
    for (int c = 0; c < C; ++c) {
      double best = 0.0;
      for (int k = r + 1; k <= 2 * H + 2; ++k) {
        for (int a = c - k + 1; a <= c; ++a) {
          dyadic::Interval I{GridCoord::dyadic(a, -log2_resolution), GridCoord::dyadic(a + k, -log2_resolution)};
          double den = w.box_mass(I);
          if (den > 0.0) best = std::max(best, idx.rect(I.lo, I.hi, 0.0, I.length().to_double()) / den);
        }
      }
      t.at(r, c) = best;
    }
  }
  return t;
}

}  // namespace reference

}  // namespace tentgrid
