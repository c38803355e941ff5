#pragma once

#include <climits>
#include <optional>
#include <span>
#include <vector>

#include "tentgrid/dyadic.hpp"
#include "tentgrid/full_maximal.hpp"
#include "tentgrid/grid_tree.hpp"
#include "tentgrid/tile_function.hpp"
#include "tentgrid/weight.hpp"

namespace tentgrid {

struct StoppingBox {
  dyadic::DyadicInterval interval;
  double average = 0.0;
  /// The box is the top of the window's tree, where stopping is forced by truncation.
  bool root = false;
};

/// Maximal dyadic boxes of one grid whose omega-average of |f| exceeds lambda.
struct StoppingFamily {
  double lambda = 0.0;
  dyadic::Beta beta = dyadic::Beta::Zero;
  std::vector<StoppingBox> boxes;

  bool root_stopped() const { return !boxes.empty() && boxes.front().root; }
  /// Cells of the window covered by the union of the boxes.
  std::vector<char> covered_cells(const Window& w) const;
};

StoppingFamily cz_stopping_boxes(const TileFunction& f, const Weight& w, double lambda, dyadic::Beta beta);
StoppingFamily cz_stopping_boxes(const GridTree& tree, const TreeSums& sums, double lambda);

/// Omega_k = {a^k < M f <= a^(k+1)} for M the dyadic weighted maximal function.
struct LevelSets {
  static constexpr int kNone = INT_MIN;
  double a = 2.0;
  std::vector<int> level;  // per cell; kNone where M f = 0
  std::vector<int> levels() const;  // distinct k, ascending
};

LevelSets level_sets(const TileFunction& f, const Weight& w, double a, dyadic::Beta beta);
LevelSets level_sets(const TileFunction& maximal, double a);

/// Refined cells of the window met by the R-grid square (row, col). Rows in
/// the strip below the leaf band map to the leaf band, where every dyadic
/// maximal function takes the same values.
class SquareCells {
public:
  SquareCells(const Window& w, int log2_resolution);
  /// Appends the cells met by the square to out (cleared first).
  void cells(int row, int col, std::vector<int>& out) const;
  int band_level(int row) const;

private:
  Window window_;
  int log2r_;
  std::vector<std::vector<double>> cell_lo_;  // per level, x-sorted left endpoints
};

struct Inclusion68Witness {
  double lambda = 0.0;
  int row = 0;
  int col = 0;
  double full_value = 0.0;
  double dyadic_value = 0.0;
};

struct Inclusion68Result {
  bool holds = true;
  long long checks = 0;
  long long violations = 0;
  /// min of D / (lambda / factor) over all points with M_R f > lambda; +inf when vacuous.
  double min_margin = 0.0;
  std::optional<Inclusion68Witness> witness;
};

/// Checks {M_R f > lambda} subset {D > lambda/factor} at every point of the
/// window box, for every lambda of the list, where D is a refined-cell function.
Inclusion68Result weak_inclusion(const FullMaximalTable& full, const TileFunction& dyadic_max,
                                 std::span<const double> lambdas, double factor);

/// {M_R f > lambda} subset {M_d f > lambda/68}, unweighted, standard grid only.
Inclusion68Result weak_inclusion_68(const TileFunction& f, std::span<const double> lambdas, int log2_resolution);
/// {M_R f > lambda} subset {max(M^0_d f, M^{1/3}_d f) > lambda/36}, unweighted.
Inclusion68Result weak_inclusion_two_grid(const TileFunction& f, std::span<const double> lambdas, int log2_resolution);

/// Weighted L^p norm of a maximal function over the window box: the tiled
/// cells plus the strip below the leaf band, where dyadic maximal functions
/// equal their leaf-band values.
double maximal_norm(const TileFunction& maximal, const Weight& w, double p);

/// ||M^beta_{d,omega} f||_{p,omega} / ||f||_{p,omega}.
double doob_norm_ratio(const TileFunction& f, const Weight& w, double p, dyadic::Beta beta);

struct DominationResult {
  double max_ratio = 0.0;
  int row = -1;
  int col = -1;
};

/// max over R-grid squares of M_R f / (M^0_{d,omega} f + M^{1/3}_{d,omega} f),
/// the denominator minimized over the square.
DominationResult three_grid_domination_check(const TileFunction& f, const Weight& w, int log2_resolution);

}  // namespace tentgrid
