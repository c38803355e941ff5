#include "tentgrid/stopping.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "tentgrid/maximal.hpp"

namespace tentgrid {

using dyadic::Beta;

std::vector<char> StoppingFamily::covered_cells(const Window& w) const {
  std::vector<char> out(w.cell_count(), 0);
  for (const StoppingBox& b : boxes)
    for (int c : cells_in_box(w, b.interval.interval())) out[c] = 1;
  return out;
}

StoppingFamily cz_stopping_boxes(const GridTree& tree, const TreeSums& sums, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("stopping threshold must be positive");
  StoppingFamily fam;
  fam.lambda = lambda;
  fam.beta = tree.beta();
  // blocked: the node or one of its ancestors already stopped
  std::vector<char> blocked(tree.node_count(), 0);
  for (int l = 0; l < tree.level_count(); ++l) {
    for (int i = 0; i < tree.level_size(l); ++i) {
      int id = tree.node_id(l, i);
      if (l > 0 && blocked[tree.node_id(l - 1, tree.parent(l, i))]) {
        blocked[id] = 1;
        continue;
      }
      if (sums.valid(id) && sums.ratio(id) > lambda) {
        blocked[id] = 1;
        fam.boxes.push_back({tree.node_interval(l, i), sums.ratio(id), l == 0});
      }
    }
  }
  return fam;
}

StoppingFamily cz_stopping_boxes(const TileFunction& f, const Weight& w, double lambda, Beta beta) {
  GridTree tree(f.window, beta);
  return cz_stopping_boxes(tree, tree_sums(tree, weighted_cell_mass(f, w), w), lambda);
}

std::vector<int> LevelSets::levels() const {
  std::vector<int> out;
  for (int k : level)
    if (k != kNone) out.push_back(k);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

LevelSets level_sets(const TileFunction& maximal, double a) {
  if (!(a >= 2.0)) throw std::invalid_argument("level sets require a >= 2");
  LevelSets ls;
  ls.a = a;
  ls.level.assign(maximal.cells.size(), LevelSets::kNone);
  for (std::size_t c = 0; c < maximal.cells.size(); ++c) {
    double m = maximal.cells[c];
    if (!(m > 0.0)) continue;
    int k = static_cast<int>(std::floor(std::log(m) / std::log(a)));
    while (std::pow(a, k) >= m) --k;
    while (std::pow(a, k + 1) < m) ++k;
    ls.level[c] = k;
  }
  return ls;
}

LevelSets level_sets(const TileFunction& f, const Weight& w, double a, Beta beta) {
  if (!(a >= 2.0)) throw std::invalid_argument("level sets require a >= 2");
  return level_sets(dyadic_weighted_maximal(f, w, beta), a);
}

SquareCells::SquareCells(const Window& w, int log2_resolution) : window_(w), log2r_(log2_resolution) {
  cell_lo_.resize(w.depth + 1);
  for (int d = 0; d <= w.depth; ++d) {
    int first = 2 * ((1 << d) - 1);
    for (int i = 0; i < (2 << d); ++i) cell_lo_[d].push_back(w.cell_x(first + i).lo.to_double());
  }
}

int SquareCells::band_level(int row) const {
  int s = static_cast<int>(std::bit_width(static_cast<unsigned>(row))) - log2r_;
  s = std::max(s, window_.leaf_scale());
  return window_.top_scale - s;
}

void SquareCells::cells(int row, int col, std::vector<int>& out) const {
  out.clear();
  int d = band_level(row);
  const auto& lo = cell_lo_[d];
  double x0 = std::ldexp(static_cast<double>(col), -log2r_);
  double x1 = std::ldexp(static_cast<double>(col + 1), -log2r_);
  auto it = std::upper_bound(lo.begin(), lo.end(), x0);
  std::size_t i = static_cast<std::size_t>(it - lo.begin()) - 1;
  int first = 2 * ((1 << d) - 1);
  for (; i < lo.size() && lo[i] < x1; ++i) out.push_back(first + static_cast<int>(i));
}

Inclusion68Result weak_inclusion(const FullMaximalTable& full, const TileFunction& dyadic_max,
                                 std::span<const double> lambdas, double factor) {
  std::vector<double> lam(lambdas.begin(), lambdas.end());
  std::sort(lam.begin(), lam.end());
  for (double l : lam)
    if (!(l > 0.0)) throw std::invalid_argument("thresholds must be positive");
  Inclusion68Result res;
  res.min_margin = std::numeric_limits<double>::infinity();
  SquareCells squares(full.window(), full.log2_resolution());
  std::vector<int> cells;
  for (int r = 0; r < full.rows(); ++r) {
    for (int c = 0; c < full.columns(); ++c) {
      double v = full.at(r, c);
      auto it = std::lower_bound(lam.begin(), lam.end(), v);  // first lambda >= v
      if (it == lam.begin()) continue;
      double lambda = *(it - 1);  // the hardest threshold below v
      res.checks += it - lam.begin();
      squares.cells(r, c, cells);
      double md = std::numeric_limits<double>::infinity();
      for (int cell : cells) md = std::min(md, dyadic_max.cells[cell]);
      res.min_margin = std::min(res.min_margin, md * factor / lambda);
      if (!(md > lambda / factor)) {
        ++res.violations;
        res.holds = false;
        if (!res.witness) res.witness = Inclusion68Witness{lambda, r, c, v, md};
      }
    }
  }
  return res;
}

Inclusion68Result weak_inclusion_68(const TileFunction& f, std::span<const double> lambdas, int log2_resolution) {
  Weight leb = Weight::lebesgue(f.window);
  return weak_inclusion(full_maximal(f, leb, log2_resolution), dyadic_weighted_maximal(f, leb, Beta::Zero), lambdas, 68.0);
}

Inclusion68Result weak_inclusion_two_grid(const TileFunction& f, std::span<const double> lambdas, int log2_resolution) {
  Weight leb = Weight::lebesgue(f.window);
  TileFunction m = dyadic_weighted_maximal(f, leb, Beta::Zero);
  TileFunction m1 = dyadic_weighted_maximal(f, leb, Beta::Third);
  for (std::size_t c = 0; c < m.cells.size(); ++c) m.cells[c] = std::max(m.cells[c], m1.cells[c]);
  return weak_inclusion(full_maximal(f, leb, log2_resolution), m, lambdas, 36.0);
}

double maximal_norm(const TileFunction& maximal, const Weight& w, double p) {
  const Window& win = maximal.window;
  long double total = 0.0L;
  for (int c = 0; c < win.cell_count(); ++c) {
    double v = std::fabs(maximal.cells[c]);
    if (v > 0.0) total += std::pow(v, p) * w.cell_mass(c);
  }
  const double strip = std::ldexp(1.0, win.leaf_scale() - 1);
  const int first_leaf = 2 * ((1 << win.depth) - 1);
  for (int c = first_leaf; c < win.cell_count(); ++c) {
    double v = std::fabs(maximal.cells[c]);
    if (v == 0.0) continue;
    dyadic::Interval x = win.cell_x(c);
    total += std::pow(v, p) * w.rect_mass(x.lo, x.hi, 0.0, strip);
  }
  return std::pow(static_cast<double>(total), 1.0 / p);
}

double doob_norm_ratio(const TileFunction& f, const Weight& w, double p, Beta beta) {
  if (!(p > 1.0)) throw std::invalid_argument("doob_norm_ratio requires p > 1");
  double nf = f.norm(w, p);
  if (!(nf > 0.0)) throw std::invalid_argument("doob_norm_ratio: f vanishes");
  return maximal_norm(dyadic_weighted_maximal(f, w, beta), w, p) / nf;
}

DominationResult three_grid_domination_check(const TileFunction& f, const Weight& w, int log2_resolution) {
  FullMaximalTable full = full_maximal(f, w, log2_resolution);
  TileFunction m0 = dyadic_weighted_maximal(f, w, Beta::Zero);
  TileFunction m1 = dyadic_weighted_maximal(f, w, Beta::Third);
  SquareCells squares(f.window, log2_resolution);
  DominationResult res;
  std::vector<int> cells;
  for (int r = 0; r < full.rows(); ++r) {
    for (int c = 0; c < full.columns(); ++c) {
      double v = full.at(r, c);
      if (!(v > 0.0)) continue;
      squares.cells(r, c, cells);
      double den = std::numeric_limits<double>::infinity();
      for (int cell : cells) den = std::min(den, m0.cells[cell] + m1.cells[cell]);
      double ratio = den > 0.0 ? v / den : std::numeric_limits<double>::infinity();
      if (ratio > res.max_ratio) res = {ratio, r, c};
    }
  }
  return res;
}

}  // namespace tentgrid
