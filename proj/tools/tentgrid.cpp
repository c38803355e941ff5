#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "tentgrid/full_maximal.hpp"
#include "tentgrid/generators.hpp"
#include "tentgrid/instance_io.hpp"
#include "tentgrid/maximal.hpp"
#include "tentgrid/rng.hpp"
#include "tentgrid/suites.hpp"

namespace fs = std::filesystem;
using namespace tentgrid;

namespace {

constexpr int kUsageError = 2;

struct GenArgs {
  std::string config;
  std::optional<std::string> kind, measure, window, function_kind;
  std::optional<double> alpha, noise, p, q;
  std::optional<int> atoms;
  std::uint64_t seed = 0;
  std::string out = ".";
};

struct EvalArgs {
  std::string config;
  std::string op = "dyadic";
  std::string beta = "0";
  std::optional<int> resolution;
  std::optional<std::string> function_kind;
  std::uint64_t seed = 0;
  std::string out = ".";
};

struct RunArgs {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> suite;
  std::optional<std::string> out;
};

Window parse_window(const std::string& text) {
  auto comma = text.find(',');
  if (comma == std::string::npos) throw std::invalid_argument("--window expects L,D");
  return Window{std::stoi(text.substr(0, comma)), std::stoi(text.substr(comma + 1))};
}

int cmd_gen(const GenArgs& a) {
  suites::InstanceSpec spec;
  if (!a.config.empty()) spec = suites::instance_spec_from_json(io::read_json_file(a.config));
  if (a.kind) spec.weight = *a.kind;
  if (a.alpha) spec.alpha = *a.alpha;
  if (a.noise) spec.noise = *a.noise;
  if (a.measure) spec.measure = *a.measure;
  if (a.atoms) spec.atoms = *a.atoms;
  if (a.window) spec.window = parse_window(*a.window);
  if (a.p || a.q) spec.exponents = ExponentConfig::make(a.p.value_or(spec.exponents.p), a.q.value_or(spec.exponents.q));
  Instance inst = suites::make_instance(spec, a.seed);
  std::optional<TileFunction> f;
  if (a.function_kind)
    f = TileFunction::from_tiles(inst.window, gen_tile_values(derive_seed(a.seed, 0, 6), inst.window, *a.function_kind));
  fs::path out = fs::path(a.out) / "instance.json";
  io::write_text_file(out, io::to_json(inst, f ? &*f : nullptr).dump(2) + "\n");
  std::cout << out.string() << "\n";
  return 0;
}

int cmd_eval(const EvalArgs& a) {
  io::InstanceFile file = io::instance_from_json(io::read_json_file(a.config));
  const Instance& inst = file.instance;
  const dyadic::Beta beta = dyadic::parse_beta(a.beta);
  const int res = a.resolution.value_or(std::max(8, 1 - inst.window.leaf_scale()));

  auto function = [&]() -> TileFunction {
    if (file.function) return *file.function;
    if (a.function_kind)
      return TileFunction::from_tiles(inst.window, gen_tile_values(a.seed, inst.window, *a.function_kind));
    throw std::invalid_argument("operator " + a.op + " needs a function in the instance file or --function");
  };

  std::string csv;
  std::string name = a.op;
  if (a.op == "dyadic") {
    csv = io::dump_cells(dyadic_weighted_maximal(function(), inst.weight, beta));
  } else if (a.op == "local") {
    csv = io::dump_cells(local_average(function(), inst.weight, beta));
  } else if (a.op == "kmu") {
    csv = io::dump_cells(k_mu_dyadic(inst.measure, inst.weight, beta));
  } else if (a.op == "function") {
    csv = io::dump_cells(function());
  } else if (a.op == "full") {
    csv = io::dump_table(full_maximal(function(), inst.weight, res));
  } else if (a.op == "kmu-full") {
    csv = io::dump_table(full_k_mu(inst.measure, inst.weight, res));
  } else {
    throw std::invalid_argument("unknown operator: " + a.op);
  }
  bool gridded = a.op == "dyadic" || a.op == "local" || a.op == "kmu";
  if (gridded) name += a.beta == "0" ? "-beta0" : "-beta13";
  fs::path out = fs::path(a.out) / (name + ".csv");
  io::write_text_file(out, csv);
  std::cout << out.string() << "\n";
  return 0;
}

int cmd_run(const RunArgs& a) {
  suites::SuiteConfig cfg = suites::load_config(a.config);
  if (a.seed) cfg.seed = *a.seed;
  if (a.suite) cfg.suite = *a.suite;
  suites::validate(cfg);
  suites::SuiteResult result = suites::run_suite(cfg);
  suites::write_reports(result, a.out ? fs::path(*a.out) : cfg.out.value_or("tentgrid-out"));

  std::map<std::string, std::pair<int, int>> tally;  // suite -> (instances, failing)
  for (const auto& r : result.reports) {
    auto& t = tally[r.suite];
    ++t.first;
    if (!r.verdict.hard_pass() || !r.verdict.capped_pass()) ++t.second;
  }
  for (const auto& [suite, t] : tally)
    std::cout << suite << ": " << t.first - t.second << "/" << t.first << " instances pass\n";
  std::cout << "hard " << (result.hard_pass() ? "pass" : "FAIL") << ", capped "
            << (result.capped_pass() ? "pass" : "FAIL") << "\n";
  return result.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted maximal functions and Carleson embeddings on dyadic tent grids"};
  app.require_subcommand(1);

  GenArgs gen;
  CLI::App* g = app.add_subcommand("gen", "Generate an instance file");
  g->add_option("--config", gen.config, "Instance spec JSON (flags override its fields)");
  g->add_option("--kind", gen.kind, "Weight kind: power or perturbed");
  g->add_option("--alpha", gen.alpha, "Power exponent, > -1");
  g->add_option("--noise", gen.noise, "Log-amplitude of the tile perturbation");
  g->add_option("--measure", gen.measure, "zero, saturating, atoms or density");
  g->add_option("--atoms", gen.atoms, "Atom count of an atomic measure");
  g->add_option("--p", gen.p, "Exponent p");
  g->add_option("--q", gen.q, "Exponent q");
  g->add_option("--window", gen.window, "Window as L,D");
  g->add_option("--function", gen.function_kind, "Attach a random function: uniform, lognormal or spiky");
  g->add_option("--seed", gen.seed, "Instance seed");
  g->add_option("--out", gen.out, "Output directory");

  EvalArgs ev;
  CLI::App* e = app.add_subcommand("eval", "Evaluate an operator on an instance and dump CSV");
  e->add_option("--config", ev.config, "Instance file")->required();
  e->add_option("--operator", ev.op, "dyadic, local, kmu, function, full or kmu-full");
  e->add_option("--beta", ev.beta, "Grid shift: 0 or 1/3");
  e->add_option("--resolution", ev.resolution, "log2 of the full-operator grid resolution");
  e->add_option("--function", ev.function_kind, "Random function kind when the file carries none");
  e->add_option("--seed", ev.seed, "Seed of the random function");
  e->add_option("--out", ev.out, "Output directory");

  RunArgs run;
  CLI::App* r = app.add_subcommand("run", "Run a suite and write reports");
  r->add_option("--config", run.config, "Suite configuration JSON")->required();
  r->add_option("--seed", run.seed, "Override the master seed");
  r->add_option("--suite", run.suite, "Override the suite: grids, lemmas, thm1, thm2, thm3 or all");
  r->add_option("--out", run.out, "Output directory (default: the config's \"out\", else tentgrid-out)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& err) {
    return app.exit(err);
  } catch (const CLI::ParseError& err) {
    app.exit(err);
    return kUsageError;
  }

  try {
    if (*g) return cmd_gen(gen);
    if (*e) return cmd_eval(ev);
    if (*r) return cmd_run(run);
  } catch (const suites::ConfigError& err) {
    std::cerr << "config error: " << err.what() << "\n";
    return kUsageError;
  } catch (const io::SchemaError& err) {
    std::cerr << "schema error: " << err.what() << "\n";
    return kUsageError;
  } catch (const std::invalid_argument& err) {
    std::cerr << "invalid input: " << err.what() << "\n";
    return kUsageError;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return kUsageError;
}
