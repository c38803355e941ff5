#include "tentgrid/suites.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <sstream>

#include "tentgrid/dyadic.hpp"
#include "tentgrid/full_maximal.hpp"
#include "tentgrid/generators.hpp"
#include "tentgrid/maximal.hpp"
#include "tentgrid/rng.hpp"
#include "tentgrid/stopping.hpp"

namespace tentgrid::suites {

using dyadic::Beta;
using dyadic::DyadicInterval;
using dyadic::Interval;
namespace fs = std::filesystem;

// ---------------------------------------------------------------- caps

double CapsTable::at(const std::string& name) const {
  auto it = caps.find(name);
  if (it == caps.end()) throw ConfigError("cap table has no entry for " + name);
  return it->second;
}

CapsTable CapsTable::from_json(const io::json& j) {
  if (!j.is_object()) throw ConfigError("cap table must be a JSON object");
  CapsTable t;
  for (const auto& [name, v] : j.items()) {
    if (!v.is_number()) throw ConfigError("cap " + name + " is not a number");
    double x = v.get<double>();
    if (!std::isfinite(x) || x < 0.0) throw ConfigError("cap " + name + " must be finite and nonnegative");
    t.caps[name] = x;
  }
  return t;
}

CapsTable CapsTable::load(const fs::path& path) {
  try {
    return from_json(io::read_json_file(path));
  } catch (const io::SchemaError& e) {
    throw ConfigError(std::string("cap table: ") + e.what());
  }
}

// ---------------------------------------------------------------- instances

namespace {

Window window_from_json(const io::json& j) {
  Window w{j.at("top_scale").get<int>(), j.at("depth").get<int>()};
  if (w.depth < 1 || w.depth > 12) throw ConfigError("window depth must be in [1, 12]");
  if (w.top_scale < -30 || w.top_scale > 30) throw ConfigError("window top scale must be in [-30, 30]");
  return w;
}

ExponentConfig exponents_from_json(const io::json& j) {
  double p, q;
  if (j.is_array()) {
    if (j.size() != 2) throw ConfigError("an exponent pair is [p, q]");
    p = j[0].get<double>();
    q = j[1].get<double>();
  } else {
    p = j.at("p").get<double>();
    q = j.at("q").get<double>();
  }
  try {
    return ExponentConfig::make(p, q);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

const std::vector<std::string>& measure_kinds() {
  static const std::vector<std::string> k = {"zero", "saturating", "atoms", "density"};
  return k;
}

template <class F>
auto config_guard(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const io::json::exception& e) {
    throw ConfigError(std::string("configuration: ") + e.what());
  }
}

}  // namespace

InstanceSpec instance_spec_from_json(const io::json& j) {
  return config_guard([&] {
    InstanceSpec s;
    if (j.contains("window")) s.window = window_from_json(j.at("window"));
    s.weight = j.value("weight", s.weight);
    s.alpha = j.value("alpha", s.alpha);
    s.noise = j.value("noise", s.noise);
    s.measure = j.value("measure", s.measure);
    s.atoms = j.value("atoms", s.atoms);
    if (j.contains("exponents")) s.exponents = exponents_from_json(j.at("exponents"));
    return s;
  });
}

Instance make_instance(const InstanceSpec& spec, std::uint64_t seed) {
  if (!(spec.alpha > -1.0)) throw std::invalid_argument("power exponent must satisfy alpha > -1");
  Instance inst;
  inst.seed = seed;
  inst.window = spec.window;
  inst.exponents = spec.exponents;
  if (spec.weight == "power") {
    inst.weight = gen_power_weight(spec.alpha, spec.window);
  } else if (spec.weight == "perturbed") {
    inst.weight = gen_perturbed_weight(spec.alpha, spec.noise, derive_seed(seed, 0, 1), spec.window);
  } else {
    throw std::invalid_argument("unknown weight kind: " + spec.weight);
  }
  if (spec.measure == "zero") {
    inst.measure = PosMeasure::zero(spec.window);
  } else if (spec.measure == "saturating") {
    inst.measure = gen_saturating_measure(inst.weight.model(), spec.exponents.q / spec.exponents.p);
  } else if (spec.measure == "atoms") {
    if (spec.atoms < 1) throw std::invalid_argument("atom count must be positive");
    inst.measure = gen_atom_measure(derive_seed(seed, 0, 2), spec.atoms, spec.window);
  } else if (spec.measure == "density") {
    inst.measure = gen_density_measure(derive_seed(seed, 0, 3), spec.window);
  } else {
    throw std::invalid_argument("unknown measure kind: " + spec.measure);
  }
  std::ostringstream label;
  label << spec.weight << "(alpha=" << io::format_double(spec.alpha);
  if (spec.weight == "perturbed") label << " noise=" << io::format_double(spec.noise);
  label << ") " << spec.measure;
  inst.label = label.str();
  return inst;
}

// ---------------------------------------------------------------- configuration

std::vector<std::string> expand_suite(const std::string& name) {
  static const std::vector<std::string> all = {"grids", "lemmas", "thm1", "thm2", "thm3"};
  if (name == "all") return all;
  if (std::find(all.begin(), all.end(), name) != all.end()) return {name};
  throw ConfigError("unknown suite: " + name);
}

bool needs_caps(const std::string& suite) { return suite != "grids"; }

const std::vector<std::string>& lemma_checks() {
  static const std::vector<std::string> names = {"box_tent", "bp", "inclusion", "stopping", "doob", "domination"};
  return names;
}

namespace {

std::map<std::string, std::vector<ExponentConfig>> default_exponents() {
  return {
      {"thm1", {ExponentConfig::make(2, 2), ExponentConfig::make(2, 3), ExponentConfig::make(1.5, 2)}},
      {"thm2", {ExponentConfig::make(2, 1), ExponentConfig::make(3, 1.5), ExponentConfig::make(4, 2)}},
      {"thm3",
       {ExponentConfig::make(1, 1), ExponentConfig::make(1, 2), ExponentConfig::make(2, 2),
        ExponentConfig::make(1.5, 3)}},
  };
}

std::vector<ExponentConfig> exponent_list(const io::json& j) {
  if (!j.is_array() || j.empty()) throw ConfigError("an exponent list is a nonempty array of pairs");
  std::vector<ExponentConfig> out;
  for (const io::json& e : j) out.push_back(exponents_from_json(e));
  return out;
}

}  // namespace

SuiteConfig config_from_json(const io::json& j, const fs::path& base_dir) {
  return config_guard([&] {
    if (!j.is_object()) throw ConfigError("a configuration is a JSON object");
    SuiteConfig c;
    c.suite = j.value("suite", c.suite);
    c.instances = j.value("instances", c.instances);
    c.seed = j.value("seed", c.seed);
    if (j.contains("window")) c.window = window_from_json(j.at("window"));
    c.exponents = default_exponents();
    if (j.contains("exponents")) {
      const io::json& e = j.at("exponents");
      if (e.is_object()) {
        for (const auto& [name, list] : e.items()) c.exponents[name] = exponent_list(list);
      } else {
        for (const std::string& s : expand_suite(c.suite))
          if (c.exponents.count(s)) c.exponents[s] = exponent_list(e);
      }
    }
    c.weight = j.value("weight", c.weight);
    c.noise = j.value("noise", c.noise);
    c.measure = j.value("measure", c.measure);
    c.atoms = j.value("atoms", c.atoms);
    c.intervals = j.value("intervals", c.intervals);
    c.functions = j.value("functions", c.functions);
    c.thresholds = j.value("thresholds", c.thresholds);
    c.inclusion_resolution = j.value("inclusion_resolution", c.inclusion_resolution);
    c.tent_depth = j.value("tent_depth", c.tent_depth);
    c.log2_resolution = j.value("log2_resolution", c.log2_resolution);
    c.checks = j.value("checks", c.checks);
    if (j.contains("out")) c.out = fs::path(j.at("out").get<std::string>());
    if (j.contains("verdict")) {
      const io::json& v = j.at("verdict");
      c.verdict.random_functions = v.value("random_functions", c.verdict.random_functions);
      c.verdict.thresholds = v.value("thresholds", c.verdict.thresholds);
    }
    c.verdict.log2_resolution = c.log2_resolution;
    if (j.contains("caps") && j.contains("caps_file")) throw ConfigError("give either caps or caps_file, not both");
    if (j.contains("caps")) c.caps = CapsTable::from_json(j.at("caps"));
    if (j.contains("caps_file")) {
      fs::path p = j.at("caps_file").get<std::string>();
      if (p.is_relative()) p = base_dir / p;
      c.caps = CapsTable::load(p);
    }
    return c;
  });
}

SuiteConfig load_config(const fs::path& path) {
  io::json j;
  try {
    j = io::read_json_file(path);
  } catch (const io::SchemaError& e) {
    throw ConfigError(e.what());
  }
  return config_from_json(j, path.has_parent_path() ? path.parent_path() : fs::path("."));
}

void validate(const SuiteConfig& cfg) {
  std::vector<std::string> suites = expand_suite(cfg.suite);
  if (cfg.instances < 0) throw ConfigError("instance count must be nonnegative");
  if (cfg.intervals < 0 || cfg.functions < 0 || cfg.thresholds < 1) throw ConfigError("battery sizes must be positive");
  if (cfg.log2_resolution < 1 - cfg.window.leaf_scale() || cfg.log2_resolution + cfg.window.top_scale > 11)
    throw ConfigError("log2_resolution must resolve the leaf band and keep at most 2^11 columns");
  if (cfg.inclusion_resolution < 7 || cfg.inclusion_resolution > 11)
    throw ConfigError("inclusion_resolution must be in [7, 11]");
  for (const std::string& name : cfg.checks)
    if (std::find(lemma_checks().begin(), lemma_checks().end(), name) == lemma_checks().end())
      throw ConfigError("unknown lemma check: " + name);
  if (cfg.tent_depth < 1 || cfg.tent_depth > 12) throw ConfigError("tent_depth must be in [1, 12]");
  if (cfg.weight != "power" && cfg.weight != "perturbed") throw ConfigError("unknown weight kind: " + cfg.weight);
  if (!(cfg.noise >= 0.0)) throw ConfigError("noise must be nonnegative");
  if (cfg.measure != "mixed" &&
      std::find(measure_kinds().begin(), measure_kinds().end(), cfg.measure) == measure_kinds().end())
    throw ConfigError("unknown measure kind: " + cfg.measure);
  for (const std::string& s : suites) {
    if (needs_caps(s) && !cfg.caps) throw ConfigError("suite " + s + " needs a cap table (caps or caps_file)");
    auto it = cfg.exponents.find(s);
    if (it == cfg.exponents.end()) continue;
    if (it->second.empty()) throw ConfigError("suite " + s + " has no exponent pairs");
    for (const ExponentConfig& e : it->second) {
      if (s == "thm1" && e.p > e.q) throw ConfigError("thm1 exponents need p <= q");
      if (s == "thm2" && !(e.q < e.p)) throw ConfigError("thm2 exponents need q < p");
      if (s == "thm3" && e.q < e.p) throw ConfigError("thm3 exponents need p <= q");
      if (s == "thm2" && cfg.measure == "saturating") throw ConfigError("the saturating measure needs q >= p");
    }
  }
  if (cfg.caps) {
    const bool domination =
        cfg.checks.empty() || std::find(cfg.checks.begin(), cfg.checks.end(), "domination") != cfg.checks.end();
    for (const std::string& s : suites) {
      if (s == "lemmas" && domination) cfg.caps->at("domination.power");
      if (s.rfind("thm", 0) == 0) cfg.caps->at(s + ".sufficiency");
    }
  }
}

// ---------------------------------------------------------------- batteries

namespace {

std::uint64_t suite_stream(const std::string& suite) {
  static const std::vector<std::string> order = {"grids", "lemmas", "thm1", "thm2", "thm3"};
  return static_cast<std::uint64_t>(std::find(order.begin(), order.end(), suite) - order.begin()) + 1;
}

std::string describe(const Interval& I) { return "[" + I.lo.to_string() + ", " + I.hi.to_string() + ")"; }

std::string describe(const DyadicInterval& I) {
  return "{beta " + dyadic::to_string(I.beta) + ", scale " + std::to_string(I.scale) + ", index " +
         std::to_string(I.index) + "}";
}

/// Running maximum of a checked quantity with the witness of its worst case.
struct Worst {
  double value = 0.0;
  std::string witness;
  void offer(double v, const std::string& w) {
    if (v > value || (std::isnan(v) && !std::isnan(value))) {
      value = v;
      witness = w;
    }
  }
};

AssertionRecord hard_record(const std::string& name, const Worst& w, double bound) {
  AssertionRecord r;
  r.name = name;
  r.hard = true;
  r.value = w.value;
  r.bound = bound;
  r.passed = !(w.value > bound) && !std::isnan(w.value);
  r.witness = w.witness;
  return r;
}

AssertionRecord capped_record(const std::string& name, double value, double cap) {
  AssertionRecord r;
  r.name = name;
  r.hard = false;
  r.value = value;
  r.bound = cap;
  r.passed = !(value > cap) && !std::isnan(value);
  return r;
}

const char* function_kind(std::uint64_t k) {
  static const char* kinds[] = {"uniform", "lognormal", "spiky"};
  return kinds[k % 3];
}

TileFunction random_function(const Window& win, std::uint64_t seed, std::uint64_t k) {
  return TileFunction::from_tiles(win, gen_tile_values(seed, win, function_kind(k)));
}

Interval random_interval(Rng& rng) {
  constexpr int kBits = 30;
  const std::int64_t span = std::int64_t{3} << 51;
  const std::int64_t lo_num = rng.range(-span, span);
  const double t = rng.uniform(-20.0, 20.0);
  const auto len_num = static_cast<std::int64_t>(std::llround(3.0 * std::ldexp(std::exp2(t), kBits)));
  GridCoord lo = GridCoord::from_parts(lo_num, kBits);
  return {lo, lo + GridCoord::from_parts(std::max<std::int64_t>(len_num, 1), kBits)};
}

/// Empty when the cover satisfies containment, adjacency and the length bounds.
std::string cover_violation(const Interval& I, const std::vector<DyadicInterval>& cover) {
  const GridCoord len = I.length();
  if (cover.empty() || cover.size() > 2) return "cover has " + std::to_string(cover.size()) + " members";
  for (const DyadicInterval& d : cover)
    if (d.beta != Beta::Zero) return "cover member off the standard grid";
  if (cover.size() == 1) {
    const DyadicInterval& d = cover[0];
    if (d.interval() == I) return {};
    if (!d.interval().contains(I)) return "single member does not contain the interval";
    if (!(len < d.length() && d.length() <= len + len)) return "single member length out of (|I|, 2|I|]";
    return {};
  }
  const DyadicInterval& a = cover[0];
  const DyadicInterval& b = cover[1];
  if (a.scale != b.scale) return "members differ in length";
  if (!(a.right() == b.left())) return "members are not adjacent";
  if (!(a.left() <= I.lo && I.hi <= b.right())) return "union does not contain the interval";
  if (!(len < a.length() && a.length() <= len + len)) return "member length out of (|I|, 2|I|]";
  return {};
}

void run_grids(const SuiteConfig& cfg, InstanceReport& rep) {
  Rng rng(rep.instance.seed);
  long long cover_bad = 0;
  Worst cover_w;
  Worst env;
  for (int n = 0; n < cfg.intervals; ++n) {
    Interval I = random_interval(rng);
    std::string bad = cover_violation(I, dyadic::cover_two(I));
    if (!bad.empty()) {
      ++cover_bad;
      cover_w.offer(static_cast<double>(cover_bad), describe(I) + ": " + bad);
    }
    DyadicInterval K = dyadic::envelope_6x(I);
    double ratio = K.contains(I.lo) && I.hi <= K.right()
                       ? K.length().to_double() / I.length().to_double()
                       : std::numeric_limits<double>::infinity();
    env.offer(ratio, describe(I) + " -> " + describe(K));
  }
  rep.verdict.assertions.push_back(hard_record("grids.cover_two", cover_w, 0.0));
  rep.verdict.assertions.push_back(hard_record("grids.envelope_6x", env, 6.0));
}

std::vector<double> geometric_thresholds(double top, int count) {
  std::vector<double> ls;
  for (int k = 0; k < count; ++k) ls.push_back(top * 0.95 * std::pow(0.72, k));
  return ls;
}

std::string inclusion_witness(const Inclusion68Result& r, std::uint64_t k) {
  if (!r.witness) return {};
  std::ostringstream os;
  os << "function " << k << " (" << function_kind(k) << "), lambda " << io::format_double(r.witness->lambda)
     << ", square (" << r.witness->row << ", " << r.witness->col << "), full " << io::format_double(r.witness->full_value)
     << ", dyadic " << io::format_double(r.witness->dyadic_value);
  return os.str();
}

void run_lemmas(const SuiteConfig& cfg, InstanceReport& rep) {
  const std::uint64_t seed = rep.instance.seed;
  const int i = rep.index;
  auto& out = rep.verdict.assertions;
  auto want = [&](const char* name) {
    return cfg.checks.empty() || std::find(cfg.checks.begin(), cfg.checks.end(), name) != cfg.checks.end();
  };

  // omega(Q_I) <= 2^p [omega]_{B_p} omega(T_I) over the standard boxes
  if (want("box_tent")) {
    Rng rng(derive_seed(seed, 0, 12));
    Window win{0, cfg.tent_depth};
    auto family = default_box_family(win);
    auto boxes = standard_family(win);
    Worst worst;
    for (double p : {1.5, 2.0, 3.0}) {
      const double a_grid = -1.0 + p * ((i % 10) + 0.5) / 10.0;
      const double a_rand = -1.0 + p * rng.uniform(0.05, 0.95);
      std::vector<std::pair<std::string, Weight>> ws;
      ws.emplace_back("power alpha=" + io::format_double(a_grid), gen_power_weight(a_grid, win));
      ws.emplace_back("perturbed alpha=" + io::format_double(a_rand),
                      gen_perturbed_weight(a_rand, std::max(cfg.noise, 0.3), derive_seed(seed, 1, 9), win));
      for (const auto& [name, w] : ws) {
        const double bp = bp_constant(w, p, family).value;
        for (const DyadicInterval& I : boxes) {
          double r = w.box_mass(I) / (std::pow(2.0, p) * bp * w.tent_mass(I.interval()));
          worst.offer(r, name + " p=" + io::format_double(p) + " box " + describe(I));
        }
      }
    }
    out.push_back(hard_record("lemmas.box_tent", worst, 1.0 + 1e-9));
  }

  // closed form 1/(1 - alpha^2) of the B_2 constant of y^alpha, and its scale invariance
  if (want("bp")) {
    Rng rng(derive_seed(seed, 1, 12));
    static const double alphas[] = {-0.9, -0.5, 0.0, 0.5, 0.9};
    const double a = alphas[i % 5];
    const double expect = 1.0 / (1.0 - a * a);
    Worst closed, scale;
    const Window base{0, cfg.window.depth};
    const double b0 = bp_constant(Weight::power(base, a), 2.0, default_box_family(base)).value;
    closed.offer(std::fabs(b0 - expect) / expect, "alpha=" + io::format_double(a) + " value " + io::format_double(b0));
    for (int L = -2; L <= 2; ++L) {
      Window w{L, cfg.window.depth};
      double b = bp_constant(Weight::power(w, a), 2.0, default_box_family(w)).value;
      scale.offer(std::fabs(b - b0) / b0, "alpha=" + io::format_double(a) + " top scale " + std::to_string(L));
    }
    out.push_back(hard_record("lemmas.bp_closed_form", closed, 1e-6));
    out.push_back(hard_record("lemmas.bp_scale_invariance", scale, 1e-12));
  }

  // level-set inclusions against the unweighted full-interval surrogate
  if (want("inclusion")) {
    Rng rng(derive_seed(seed, 2, 12));
    const Window win = cfg.window;
    const Weight leb = Weight::lebesgue(win);
    Worst v68, v36;
    std::optional<TileFunction> bad68, bad36;
    for (int k = 0; k < cfg.functions; ++k) {
      const auto kk = static_cast<std::uint64_t>(i * cfg.functions + k);
      TileFunction f = random_function(win, derive_seed(seed, k, 10), kk);
      std::vector<double> ls = geometric_thresholds(f.max_abs(), cfg.thresholds);
      FullMaximalTable full = full_maximal(f, leb, cfg.inclusion_resolution);
      TileFunction m0 = dyadic_maximal(f, Beta::Zero);
      TileFunction both = m0;
      TileFunction m3 = dyadic_maximal(f, Beta::Third);
      for (int c = 0; c < win.cell_count(); ++c) both.cells[c] = std::max(m0.cells[c], m3.cells[c]);
      Inclusion68Result r68 = weak_inclusion(full, m0, ls, 68.0);
      Inclusion68Result r36 = weak_inclusion(full, both, ls, 36.0);
      if (r68.violations > 0 && !bad68) bad68 = f;
      if (r36.violations > 0 && !bad36) bad36 = f;
      if (r68.violations > 0) v68.offer(v68.value + r68.violations, inclusion_witness(r68, kk));
      if (r36.violations > 0) v36.offer(v36.value + r36.violations, inclusion_witness(r36, kk));
    }
    out.push_back(hard_record("lemmas.inclusion_68", v68, 0.0));
    out.push_back(hard_record("lemmas.inclusion_two_grid", v36, 0.0));
    if (bad68) rep.witness_functions.emplace("lemmas.inclusion_68", *bad68);
    if (bad36) rep.witness_functions.emplace("lemmas.inclusion_two_grid", *bad36);
  }

  // stopping boxes: disjoint, covering exactly the level set, averages in (lambda, 4 lambda]
  if (want("stopping")) {
    Rng rng(derive_seed(seed, 3, 12));
    const Window win = cfg.window;
    const Weight leb = Weight::lebesgue(win);
    TileFunction f = random_function(win, derive_seed(seed, 0, 11), static_cast<std::uint64_t>(i));
    Worst bad;
    long long count = 0;
    for (Beta b : {Beta::Zero, Beta::Third}) {
      TileFunction m = dyadic_weighted_maximal(f, leb, b);
      for (int t = 0; t < 3; ++t) {
        const double lambda = m.max_abs() * rng.uniform(0.02, 0.98);
        StoppingFamily fam = cz_stopping_boxes(f, leb, lambda, b);
        std::string what = "beta " + dyadic::to_string(b) + " lambda " + io::format_double(lambda) + ": ";
        auto fail = [&](const std::string& why) { bad.offer(static_cast<double>(++count), what + why); };
        for (std::size_t x = 0; x < fam.boxes.size(); ++x)
          for (std::size_t y = x + 1; y < fam.boxes.size(); ++y)
            if (fam.boxes[x].interval.interval().intersects(fam.boxes[y].interval.interval()))
              fail("boxes " + describe(fam.boxes[x].interval) + " and " + describe(fam.boxes[y].interval) + " overlap");
        std::vector<char> cover = fam.covered_cells(win);
        for (int c = 0; c < win.cell_count(); ++c)
          if ((cover[c] != 0) != (m.cells[c] > lambda)) fail("cell " + std::to_string(c) + " differs from the level set");
        for (const StoppingBox& box : fam.boxes) {
          if (!(box.average > lambda)) fail("box " + describe(box.interval) + " average not above lambda");
          if (!box.root && box.average > 4.0 * lambda)
            fail("box " + describe(box.interval) + " average " + io::format_double(box.average) + " above 4 lambda");
        }
      }
    }
    out.push_back(hard_record("lemmas.stopping_structure", bad, 0.0));
    if (bad.value > 0.0) rep.witness_functions.emplace("lemmas.stopping_structure", f);
  }

  // ||M_{d,omega} f||_p <= p' ||f||_p on both grids
  if (want("doob")) {
    Rng rng(derive_seed(seed, 4, 12));
    static const double ps[] = {1.5, 2.0, 4.0};
    const double p = ps[i % 3];
    const Window win = cfg.window;
    const double a = -1.0 + p * rng.uniform(0.05, 0.95);
    std::vector<std::pair<std::string, Weight>> ws;
    ws.emplace_back("power alpha=" + io::format_double(a), gen_power_weight(a, win));
    ws.emplace_back("perturbed alpha=" + io::format_double(a),
                    gen_perturbed_weight(a, std::max(cfg.noise, 0.3), derive_seed(seed, 2, 9), win));
    TileFunction f = random_function(win, derive_seed(seed, 1, 11), static_cast<std::uint64_t>(i + 1));
    Worst worst;
    for (const auto& [name, w] : ws)
      for (Beta b : {Beta::Zero, Beta::Third})
        worst.offer(doob_norm_ratio(f, w, p, b) / (p / (p - 1.0)),
                    name + " p=" + io::format_double(p) + " beta " + dyadic::to_string(b));
    out.push_back(hard_record("lemmas.doob", worst, 1.0 + 1e-9));
  }

  // full-interval maximal function against the sum of the two dyadic ones
  if (want("domination")) {
    Rng rng(derive_seed(seed, 5, 12));
    const Window win = cfg.window;
    TileFunction f = random_function(win, derive_seed(seed, 2, 11), static_cast<std::uint64_t>(i + 2));
    DominationResult leb = three_grid_domination_check(f, Weight::lebesgue(win), cfg.log2_resolution);
    Worst w;
    w.offer(leb.max_ratio, "square (" + std::to_string(leb.row) + ", " + std::to_string(leb.col) + ")");
    out.push_back(hard_record("lemmas.domination_lebesgue", w, 36.0));
    if (w.value > 36.0) rep.witness_functions.emplace("lemmas.domination_lebesgue", f);
    const double a = rng.uniform(-0.5, 0.5);
    DominationResult pw = three_grid_domination_check(f, Weight::power(win, a), cfg.log2_resolution);
    AssertionRecord r = capped_record("domination.power", pw.max_ratio, cfg.caps->at("domination.power"));
    r.witness = "alpha=" + io::format_double(a) + " square (" + std::to_string(pw.row) + ", " + std::to_string(pw.col) + ")";
    out.push_back(r);
  }
}

InstanceSpec theorem_spec(const SuiteConfig& cfg, const std::string& suite, int index, Rng& rng) {
  InstanceSpec s;
  s.window = cfg.window;
  s.weight = cfg.weight;
  s.noise = cfg.noise;
  s.atoms = cfg.atoms;
  const auto& list = cfg.exponents.at(suite);
  s.exponents = list[static_cast<std::size_t>(index) % list.size()];
  const double p = s.exponents.p;
  s.alpha = rng.uniform(-0.5, 0.5 * (p - 1.0));
  if (cfg.measure == "mixed") {
    static const char* kinds[] = {"saturating", "atoms", "density", "saturating"};
    s.measure = kinds[index % 4];
    if (suite == "thm2" && s.measure == "saturating") s.measure = "atoms";
  } else {
    s.measure = cfg.measure;
  }
  return s;
}

}  // namespace

InstanceReport run_instance(const SuiteConfig& cfg, const std::string& suite, int index) {
  InstanceReport rep;
  rep.suite = suite;
  rep.index = index;
  const std::uint64_t seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(index), suite_stream(suite));
  if (suite == "grids" || suite == "lemmas") {
    rep.instance.seed = seed;
    rep.instance.window = cfg.window;
    rep.instance.weight = Weight::lebesgue(cfg.window);
    rep.instance.measure = PosMeasure::zero(cfg.window);
    rep.instance.label = suite;
    rep.verdict.mode = suite;
    if (suite == "grids") run_grids(cfg, rep);
    else run_lemmas(cfg, rep);
    return rep;
  }
  Rng rng(derive_seed(seed, 0, 4));
  rep.instance = make_instance(theorem_spec(cfg, suite, index, rng), seed);
  VerdictOptions opt = cfg.verdict;
  opt.log2_resolution = cfg.log2_resolution;
  opt.function_seed = derive_seed(seed, 0, 5);
  rep.verdict = verdict(rep.instance, suite, opt);
  rep.verdict.assertions.push_back(
      capped_record(suite + ".sufficiency", rep.verdict.sufficiency_factor, cfg.caps->at(suite + ".sufficiency")));
  return rep;
}

bool SuiteResult::hard_pass() const {
  return std::all_of(reports.begin(), reports.end(), [](const InstanceReport& r) { return r.verdict.hard_pass(); });
}

bool SuiteResult::capped_pass() const {
  return std::all_of(reports.begin(), reports.end(), [](const InstanceReport& r) { return r.verdict.capped_pass(); });
}

int SuiteResult::exit_code() const { return hard_pass() && capped_pass() ? 0 : 1; }

SuiteResult run_suite(const SuiteConfig& cfg) {
  validate(cfg);
  std::vector<std::pair<std::string, int>> jobs;
  for (const std::string& s : expand_suite(cfg.suite))
    for (int i = 0; i < cfg.instances; ++i) jobs.emplace_back(s, i);

  SuiteResult result;
  result.reports.resize(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  const auto n = static_cast<long long>(jobs.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long long j = 0; j < n; ++j) {
    try {
      result.reports[j] = run_instance(cfg, jobs[j].first, jobs[j].second);
    } catch (...) {
      errors[j] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return result;
}

void write_reports(const SuiteResult& result, const fs::path& out) {
  std::string csv = "suite,index," + io::summary_header() + "\n";
  io::json failures = io::json::array();
  for (const InstanceReport& r : result.reports) {
    io::write_text_file(out / "verdicts" / (r.suite + "-" + std::to_string(r.index) + ".json"),
                        io::to_json(r.verdict, r.instance).dump(2) + "\n");
    csv += r.suite + "," + std::to_string(r.index) + "," + io::summary_row(r.verdict, r.instance) + "\n";
    for (const AssertionRecord& a : r.verdict.assertions) {
      if (a.passed) continue;
      auto fn = r.witness_functions.find(a.name);
      failures.push_back({{"suite", r.suite},
                          {"index", r.index},
                          {"seed", r.instance.seed},
                          {"name", a.name},
                          {"hard", a.hard},
                          {"value", io::number(a.value)},
                          {"bound", io::number(a.bound)},
                          {"witness", a.witness},
                          {"replay", io::to_json(r.instance, fn == r.witness_functions.end() ? nullptr : &fn->second)}});
    }
  }
  io::write_text_file(out / "summary.csv", csv);
  io::write_text_file(out / "failures.json", failures.dump(2) + "\n");
}

}  // namespace tentgrid::suites
