#include "tentgrid/grid_tree.hpp"

#include <algorithm>
#include <stdexcept>

namespace tentgrid {

using dyadic::Beta;
using dyadic::DyadicInterval;

namespace {

void build_csr(int n, const std::vector<int>& owner, std::vector<int>& begin, std::vector<int>& items,
               const std::vector<int>& ids) {
  begin.assign(n + 1, 0);
  for (int o : owner) ++begin[o + 1];
  for (int i = 0; i < n; ++i) begin[i + 1] += begin[i];
  items.assign(owner.size(), 0);
  std::vector<int> fill(begin.begin(), begin.end() - 1);
  for (std::size_t k = 0; k < owner.size(); ++k) items[fill[owner[k]]++] = ids[k];
}

}  // namespace

GridTree::GridTree(const Window& window, Beta beta) : window_(window), beta_(beta) {
  const dyadic::Interval root = window.root_interval();
  top_scale_ = window.top_scale;
  while (dyadic::locate(root.lo, top_scale_, beta).right() < root.hi) ++top_scale_;

  const int nlevels = top_scale_ - window.leaf_scale() + 1;
  levels_.resize(nlevels);
  node_offset_.assign(nlevels + 1, 0);
  for (int l = 0; l < nlevels; ++l) {
    Level& lv = levels_[l];
    lv.scale = top_scale_ - l;
    lv.first_index = dyadic::locate(root.lo, lv.scale, beta).index;
    DyadicInterval last = dyadic::locate(root.hi, lv.scale, beta);
    std::int64_t last_index = last.left() < root.hi ? last.index : last.index - 1;
    int size = static_cast<int>(last_index - lv.first_index + 1);
    lv.parent.assign(size, -1);
    if (l > 0) {
      for (int i = 0; i < size; ++i) {
        DyadicInterval p = DyadicInterval{beta, lv.scale, lv.first_index + i}.parent();
        lv.parent[i] = static_cast<int>(p.index - levels_[l - 1].first_index);
      }
    }
    node_offset_[l + 1] = node_offset_[l] + size;
  }

  for (int l = 0; l + 1 < nlevels; ++l) {
    const auto& lower = levels_[l + 1].parent;
    std::vector<int> ids(lower.size());
    for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<int>(i);
    build_csr(level_size(l), lower, levels_[l].child_begin, levels_[l].children, ids);
  }
  levels_.back().child_begin.assign(level_size(nlevels - 1) + 1, 0);

  cell_level_.resize(window.cell_count());
  cell_node_.resize(window.cell_count());
  std::vector<std::vector<int>> owner(nlevels), ids(nlevels);
  for (int c = 0; c < window.cell_count(); ++c) {
    int s = window.cell_scale(c);
    int l = level_of_scale(s);
    dyadic::Interval x = window.cell_x(c);
    DyadicInterval K = dyadic::locate(x.lo, s, beta);
    if (!K.interval().contains(x)) throw std::logic_error("GridTree: refined cell straddles a grid line");
    int i = static_cast<int>(K.index - levels_[l].first_index);
    cell_level_[c] = l;
    cell_node_[c] = i;
    owner[l].push_back(i);
    ids[l].push_back(c);
  }
  for (int l = 0; l < nlevels; ++l) build_csr(level_size(l), owner[l], levels_[l].cell_begin, levels_[l].cells, ids[l]);
}

int GridTree::level_of_node(int id) const {
  auto it = std::upper_bound(node_offset_.begin(), node_offset_.end(), id);
  return static_cast<int>(it - node_offset_.begin()) - 1;
}

DyadicInterval GridTree::node_interval(int level, int i) const {
  return {beta_, levels_[level].scale, levels_[level].first_index + i};
}

DyadicInterval GridTree::node_interval(int id) const {
  int l = level_of_node(id);
  return node_interval(l, id - node_offset_[l]);
}

std::span<const int> GridTree::children(int level, int i) const {
  const Level& lv = levels_[level];
  return {lv.children.data() + lv.child_begin[i], lv.children.data() + lv.child_begin[i + 1]};
}

std::span<const int> GridTree::own_cells(int level, int i) const {
  const Level& lv = levels_[level];
  return {lv.cells.data() + lv.cell_begin[i], lv.cells.data() + lv.cell_begin[i + 1]};
}

std::vector<double> aggregate_cells(const GridTree& tree, std::span<const double> cell_mass) {
  std::vector<double> sum(tree.node_count(), 0.0);
  for (int l = tree.level_count() - 1; l >= 0; --l) {
    const int n = tree.level_size(l);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
      double acc = 0.0;
      for (int c : tree.own_cells(l, i)) acc += cell_mass[c];
      if (l + 1 < tree.level_count())
        for (int ch : tree.children(l, i)) acc += sum[tree.node_id(l + 1, ch)];
      sum[tree.node_id(l, i)] = acc;
    }
  }
  return sum;
}

TreeSums tree_sums(const GridTree& tree, std::span<const double> cell_mass, const Weight& w) {
  TreeSums s;
  s.num = aggregate_cells(tree, cell_mass);
  if (w.is_power()) {
    s.den.resize(tree.node_count());
#pragma omp parallel for schedule(static)
    for (int id = 0; id < tree.node_count(); ++id) s.den[id] = w.box_mass(tree.node_interval(id));
  } else {
    s.den = aggregate_cells(tree, w.cell_masses());
  }
  return s;
}

std::vector<double> sup_over_ancestors(const GridTree& tree, const TreeSums& sums) {
  std::vector<double> best(tree.node_count(), 0.0);
  for (int l = 0; l < tree.level_count(); ++l) {
    const int n = tree.level_size(l);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
      int id = tree.node_id(l, i);
      double b = l > 0 ? best[tree.node_id(l - 1, tree.parent(l, i))] : 0.0;
      if (sums.valid(id)) b = std::max(b, sums.ratio(id));
      best[id] = b;
    }
  }
  const int cells = tree.window().cell_count();
  std::vector<double> out(cells);
#pragma omp parallel for schedule(static)
  for (int c = 0; c < cells; ++c) out[c] = best[tree.node_id(tree.cell_level(c), tree.cell_node(c))];
  return out;
}

std::vector<double> own_box_ratio(const GridTree& tree, const TreeSums& sums) {
  const int cells = tree.window().cell_count();
  std::vector<double> out(cells);
#pragma omp parallel for schedule(static)
  for (int c = 0; c < cells; ++c) out[c] = sums.ratio(tree.node_id(tree.cell_level(c), tree.cell_node(c)));
  return out;
}

}  // namespace tentgrid
