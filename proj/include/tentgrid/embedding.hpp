#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tentgrid/dyadic.hpp"
#include "tentgrid/exponents.hpp"
#include "tentgrid/full_maximal.hpp"
#include "tentgrid/grid_tree.hpp"
#include "tentgrid/instance.hpp"
#include "tentgrid/measure.hpp"
#include "tentgrid/tile_function.hpp"
#include "tentgrid/weight.hpp"

namespace tentgrid {

/// Which realization of the maximal operator an embedding quantity uses.
enum class MaximalKind { Dyadic, Full };

struct OperatorChoice {
  MaximalKind kind = MaximalKind::Full;
  dyadic::Beta beta = dyadic::Beta::Zero;  // dyadic only
  int log2_resolution = 8;                 // full only
};

/// Supremum of a box functional over a finite family.
struct BoxSup {
  double value = 0.0;
  std::optional<dyadic::Interval> argmax;
  /// Boxes skipped because their omega-mass vanishes.
  int null_boxes = 0;
};

/// mu of every R-grid square of the window box, row-major like FullMaximalTable.
std::vector<double> square_measure(const PosMeasure& mu, int log2_resolution);
/// omega of every R-grid square of the window box.
std::vector<double> square_weight(const Weight& w, int log2_resolution);

/// max over the family of mu(Q_I) / omega(Q_I)^(q/p); requires p <= q.
BoxSup thm1_testing_constant(const PosMeasure& mu, const Weight& w, const ExponentConfig& pq,
                             std::span<const dyadic::Interval> family);

/// (integral of (M f)^q dmu)^(1/q) / ||f||_{p,omega}.
double embedding_ratio(const TileFunction& f, const PosMeasure& mu, const Weight& w, const ExponentConfig& pq,
                       const OperatorChoice& op);

/// (integral of K_mu^s omega)^(1/s), s = p/(p-q); requires q < p. The full
/// choice integrates the square table, the dyadic choice the refined cells
/// plus the strip.
double k_mu_norm(const PosMeasure& mu, const Weight& w, const ExponentConfig& pq, const OperatorChoice& op);

/// max over squares of K_mu / (K^0_{d,mu} + K^{1/3}_{d,mu}), the denominator
/// minimized over the square.
double k_mu_envelope_factor(const PosMeasure& mu, const Weight& w, int log2_resolution);

/// g = sum over atoms of mass chi_{Q_xi} / omega(Q_xi), Q_xi the smallest box
/// of grid beta containing the atom. Atomic measures only.
TileFunction g_function(const PosMeasure& mu, const Weight& w, dyadic::Beta beta);

/// max over refined cells with K^beta_{d,mu} > 0 of (K^beta_{d,mu} - M^beta_{d,omega} g) / K^beta_{d,mu};
/// at most 0 in exact arithmetic for tiled weights.
double g_domination_violation(const PosMeasure& mu, const Weight& w, dyadic::Beta beta);

/// max over refined cells of |K_{d,omega} f|^(1/q) - M_{d,omega}((M_{d,omega} f)^(1/q)),
/// relative to the left side, K_{d,omega} f being the average over the
/// smallest box of the grid. At most 0 in exact arithmetic for tiled weights.
double km_inequality_violation(const TileFunction& f, const Weight& w, double q, dyadic::Beta beta);

/// |Q_I|^(-q/p) (sigma(Q_I)/|Q_I|)^(q/p') mu(Q_I), sigma = omega^(1-p'); for
/// p = 1 the middle factor is (inf over Q_I of omega)^(-q). 0 when mu(Q_I) = 0.
double thm3_b_term(const PosMeasure& mu, const Weight& w, const ExponentConfig& pq, const dyadic::Interval& I);
BoxSup thm3_b_constant(const PosMeasure& mu, const Weight& w, const ExponentConfig& pq,
                       std::span<const dyadic::Interval> family);

/// chi_{Q_I} omega^(1-p') for p > 1; for p = 1 the indicator of the refined
/// cell of Q_I of least density. Tiled weights only.
TileFunction thm3_extremal(const Weight& w, double p, const dyadic::Interval& I);

/// ((1/|Q_I|) int_{Q_I} |f|)^q mu(Q_I) / (int_{Q_I} |f|^p omega)^(q/p); 0 when f
/// vanishes on Q_I, and an error when only the right side does.
double thm3_c_ratio(const TileFunction& f, const dyadic::Interval& I, const PosMeasure& mu, const Weight& w,
                    const ExponentConfig& pq);

/// lambda^q mu({M f > lambda}) / ||f||^q_{p,omega} for the unweighted M, in
/// two realizations.
struct WeakTerm {
  double lambda = 0.0;
  /// {M_R f > lambda} sampled on the R-grid squares.
  double full = 0.0;
  /// The union over both grids of the stopping boxes at lambda/36, which contains {M_R f > lambda}.
  double pipeline = 0.0;
  /// max of thm3_c_ratio over those stopping boxes (0 when there are none).
  double c_ratio_max = 0.0;
  int stopping_boxes = 0;
  int root_stops = 0;
};

/// Measure-side data shared by the weak-type probes of one instance.
struct WeakTypeContext {
  WeakTypeContext(const PosMeasure& mu, const Weight& w, const ExponentConfig& pq, int log2_resolution);

  PosMeasure mu;
  Weight w;
  ExponentConfig pq;
  int log2_resolution;
  std::vector<double> square_mu;
  std::vector<double> cell_mu;
};

/// Evaluates weak-type terms of one f at many thresholds, reusing its tables.
class WeakTypeProbe {
public:
  WeakTypeProbe(const TileFunction& f, const WeakTypeContext& ctx);
  WeakTerm term(double lambda) const;
  const FullMaximalTable& table() const { return table_; }

private:
  const WeakTypeContext* ctx_;
  TileFunction f_;
  FullMaximalTable table_;
  std::vector<GridTree> trees_;
  std::vector<TreeSums> sums_;
  double norm_q_ = 0.0;
};

struct WeakTypeResult {
  double full = 0.0;
  double pipeline = 0.0;
  /// max over (f, lambda) of pipeline / c_ratio_max, the factor of the
  /// stopping-box argument, and the same for the sampled level set.
  double factor = 0.0;
  double full_factor = 0.0;
  int function_index = -1;
  double lambda = 0.0;
};

WeakTypeResult weak_type_constant(std::span<const TileFunction> fs, std::span<const double> lambdas,
                                  const PosMeasure& mu, const Weight& w, const ExponentConfig& pq,
                                  int log2_resolution);

struct AssertionRecord {
  std::string name;
  /// Hard assertions are exact inequalities; the rest are factors judged against caps.
  bool hard = true;
  bool passed = true;
  double value = 0.0;
  double bound = 0.0;
  std::string witness;
};

struct EmbeddingVerdict {
  std::string mode;
  double bp_constant = 0.0;
  double testing_constant = 0.0;
  double embedding_ratio_max = 0.0;
  double weak_constant_max = 0.0;
  double weak_pipeline_max = 0.0;
  double k_mu_norm = 0.0;
  double thm3_b_constant = 0.0;
  /// Sufficiency comparability factor of the mode (capped, never hard).
  double sufficiency_factor = 0.0;
  /// Two-grid envelope factor of K_mu (thm2) or weak-type factor (thm3).
  double envelope_factor = 0.0;
  int null_boxes = 0;
  int truncation_events = 0;
  std::vector<AssertionRecord> assertions;

  bool hard_pass() const;
  /// True when every assertion judged against a cap holds.
  bool capped_pass() const;
};

struct VerdictOptions {
  int log2_resolution = 8;
  int random_functions = 6;
  int thresholds = 8;
  std::uint64_t function_seed = 0;
};

/// Runs the constants and checks of one theorem ("thm1", "thm2" or "thm3") on an instance.
EmbeddingVerdict verdict(const Instance& inst, const std::string& mode, const VerdictOptions& opt = {});

}  // namespace tentgrid
