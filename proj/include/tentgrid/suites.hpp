#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tentgrid/embedding.hpp"
#include "tentgrid/instance.hpp"
#include "tentgrid/instance_io.hpp"

namespace tentgrid::suites {

/// A configuration or cap table is missing, unreadable or malformed.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Frozen empirical caps for the sufficiency factors, keyed by assertion name.
struct CapsTable {
  std::map<std::string, double> caps;

  double at(const std::string& name) const;
  static CapsTable from_json(const io::json& j);
  static CapsTable load(const std::filesystem::path& path);
};

/// Recipe for one generated instance.
struct InstanceSpec {
  Window window{0, 6};
  /// "power" (analytic y^alpha) or "perturbed" (tiled, log-uniform noise per tile).
  std::string weight = "perturbed";
  double alpha = 0.5;
  double noise = 0.3;
  /// "zero", "saturating", "atoms" or "density".
  std::string measure = "saturating";
  int atoms = 40;
  ExponentConfig exponents{};
};

InstanceSpec instance_spec_from_json(const io::json& j);
Instance make_instance(const InstanceSpec& spec, std::uint64_t seed);

struct SuiteConfig {
  /// grids, lemmas, thm1, thm2, thm3 or all.
  std::string suite = "all";
  int instances = 10;
  std::uint64_t seed = 0;
  Window window{0, 6};
  /// Exponent pairs per theorem suite; instances cycle through them.
  std::map<std::string, std::vector<ExponentConfig>> exponents;
  std::string weight = "perturbed";
  double noise = 0.3;
  /// Measure recipe of the theorem suites; "mixed" cycles through the kinds.
  std::string measure = "mixed";
  int atoms = 40;
  /// Random intervals per grids instance.
  int intervals = 10000;
  /// Random functions per lemmas instance in the inclusion checks.
  int functions = 4;
  /// Thresholds per function in the inclusion checks.
  int thresholds = 20;
  /// log2 of the grid resolution of the inclusion checks.
  int inclusion_resolution = 10;
  /// Depth of the window of the box-versus-tent check.
  int tent_depth = 8;
  /// Checks of the lemmas suite to run (see lemma_checks()); empty runs all of them.
  std::vector<std::string> checks;
  int log2_resolution = 8;
  VerdictOptions verdict{};
  std::optional<CapsTable> caps;
  /// Report directory named by the configuration, if any.
  std::optional<std::filesystem::path> out;
};

/// The suites a name expands to, in run order.
std::vector<std::string> expand_suite(const std::string& name);
bool needs_caps(const std::string& suite);
/// Names of the checks of the lemmas suite.
const std::vector<std::string>& lemma_checks();

/// Parses a configuration document; relative cap-file paths resolve against base_dir.
SuiteConfig config_from_json(const io::json& j, const std::filesystem::path& base_dir);
SuiteConfig load_config(const std::filesystem::path& path);
/// Throws ConfigError when the configuration cannot run (unknown suite, missing caps, bad sizes).
void validate(const SuiteConfig& cfg);

struct InstanceReport {
  std::string suite;
  int index = 0;
  Instance instance;
  EmbeddingVerdict verdict;
  /// Input functions of failed assertions, keyed by assertion name, for replay.
  std::map<std::string, TileFunction> witness_functions;
};

struct SuiteResult {
  std::vector<InstanceReport> reports;  // by suite order, then instance index
  bool hard_pass() const;
  bool capped_pass() const;
  /// 0 when every hard and capped assertion holds, 1 otherwise.
  int exit_code() const;
};

/// One instance of one suite; pure function of the configuration and the index.
InstanceReport run_instance(const SuiteConfig& cfg, const std::string& suite, int index);
/// Runs every instance of the configured suites (in parallel) in a deterministic order.
SuiteResult run_suite(const SuiteConfig& cfg);

/// Writes verdicts/<suite>-<index>.json, summary.csv and failures.json under out.
void write_reports(const SuiteResult& result, const std::filesystem::path& out);

}  // namespace tentgrid::suites
