#pragma once

#include <span>
#include <vector>

#include "tentgrid/dyadic.hpp"
#include "tentgrid/weight.hpp"
#include "tentgrid/window.hpp"

namespace tentgrid {

/// The intervals of one grid that meet the window, from the smallest scale
/// at which a single interval covers the window down to the leaf scale.
///
/// Level 0 is the top. Boxes above the top only add weight without adding
/// any of the window's mass, so for every average computed here nothing
/// above the top matters. Refined cells are attached to the node of their
/// own band; a cell lies in Q_K exactly when K is that node or one of its
/// ancestors.
class GridTree {
public:
  GridTree(const Window& window, dyadic::Beta beta);

  const Window& window() const { return window_; }
  dyadic::Beta beta() const { return beta_; }
  int top_scale() const { return top_scale_; }
  int level_count() const { return static_cast<int>(levels_.size()); }
  int level_of_scale(int scale) const { return top_scale_ - scale; }
  int level_size(int level) const { return static_cast<int>(levels_[level].parent.size()); }
  int node_count() const { return node_offset_.back(); }
  /// Flat node id of node i of a level; flat ids run top-down, left to right.
  int node_id(int level, int i) const { return node_offset_[level] + i; }
  int level_of_node(int id) const;

  dyadic::DyadicInterval node_interval(int level, int i) const;
  dyadic::DyadicInterval node_interval(int id) const;
  /// Index in level - 1 of the parent; -1 at level 0.
  int parent(int level, int i) const { return levels_[level].parent[i]; }
  std::span<const int> children(int level, int i) const;
  /// Refined cells of the node's own band inside its box.
  std::span<const int> own_cells(int level, int i) const;

  /// Level and in-level index of the node that owns the cell.
  int cell_level(int cell) const { return cell_level_[cell]; }
  int cell_node(int cell) const { return cell_node_[cell]; }

private:
  struct Level {
    int scale = 0;
    std::int64_t first_index = 0;
    std::vector<int> parent;
    std::vector<int> child_begin;  // CSR into children
    std::vector<int> children;
    std::vector<int> cell_begin;  // CSR into cells
    std::vector<int> cells;
  };

  Window window_;
  dyadic::Beta beta_;
  int top_scale_ = 0;
  std::vector<Level> levels_;
  std::vector<int> node_offset_;
  std::vector<int> cell_level_;
  std::vector<int> cell_node_;
};

/// Per-node box integrals on a GridTree: num(K) = integral of a cell mass
/// vector over Q_K, den(K) = omega(Q_K).
struct TreeSums {
  std::vector<double> num;  // by flat node id
  std::vector<double> den;

  double ratio(int id) const { return den[id] > 0.0 ? num[id] / den[id] : 0.0; }
  bool valid(int id) const { return den[id] > 0.0; }
};

/// Bottom-up aggregation of cell masses. Deterministic: every node sums its
/// own cells and then its children in a fixed order, whatever the thread count.
std::vector<double> aggregate_cells(const GridTree& tree, std::span<const double> cell_mass);

TreeSums tree_sums(const GridTree& tree, std::span<const double> cell_mass, const Weight& w);

/// For each cell, the max of num/den over the boxes containing it (boxes
/// with den == 0 skipped; 0 when none qualify).
std::vector<double> sup_over_ancestors(const GridTree& tree, const TreeSums& sums);
/// For each cell, num/den of the smallest box containing it.
std::vector<double> own_box_ratio(const GridTree& tree, const TreeSums& sums);

}  // namespace tentgrid
