#include "tentgrid/instance_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace tentgrid::io {

using dyadic::Beta;

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

json number(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

double number_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string& s = j.get_ref<const std::string&>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw SchemaError("expected a number, got " + j.dump());
}

json to_json(const GridCoord& x) { return x.to_string(); }

GridCoord coord_from_json(const json& j) {
  if (j.is_number_integer()) return GridCoord::from_int(j.get<std::int64_t>());
  if (!j.is_string()) throw SchemaError("coordinates are exact strings, got " + j.dump());
  try {
    return GridCoord::parse(j.get_ref<const std::string&>());
  } catch (const std::invalid_argument& e) {
    throw SchemaError(e.what());
  }
}

json to_json(const dyadic::DyadicInterval& I) {
  return {{"beta", dyadic::to_string(I.beta)}, {"scale", I.scale}, {"index", I.index}};
}

namespace {

template <class F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw SchemaError(std::string(what) + ": " + e.what());
  }
}

Beta beta_from_json(const json& j) {
  if (!j.is_string()) throw SchemaError("beta must be \"0\" or \"1/3\"");
  try {
    return dyadic::parse_beta(j.get_ref<const std::string&>());
  } catch (const std::invalid_argument& e) {
    throw SchemaError(e.what());
  }
}

std::vector<double> tiles_from_json(const json& j, const Window& win) {
  if (!j.is_array()) throw SchemaError("tiles must be an array");
  if (static_cast<int>(j.size()) != win.tile_count())
    throw SchemaError("expected " + std::to_string(win.tile_count()) + " tile values, got " + std::to_string(j.size()));
  std::vector<double> v;
  v.reserve(j.size());
  for (const json& x : j) v.push_back(number_from_json(x));
  return v;
}

json tiles_to_json(std::span<const double> v) {
  json a = json::array();
  for (double x : v) a.push_back(number(x));
  return a;
}

json weight_to_json(const Weight& w) {
  if (w.is_power()) return {{"kind", "power"}, {"alpha", w.alpha()}, {"coefficient", w.coefficient()}};
  return {{"kind", "tiled"}, {"tiles", tiles_to_json(w.densities())}};
}

Weight weight_from_json(const json& j, const Window& win) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "power") return Weight::power(win, j.at("alpha").get<double>(), j.value("coefficient", 1.0));
  if (kind == "tiled") return Weight::tiled(win, tiles_from_json(j.at("tiles"), win));
  throw SchemaError("unknown weight kind: " + kind);
}

json measure_to_json(const PosMeasure& mu) {
  if (mu.has_density()) return {{"kind", "density"}, {"tiles", tiles_to_json(mu.densities())}};
  if (mu.atom_list().empty()) return {{"kind", "zero"}};
  json atoms = json::array();
  for (const Atom& a : mu.atom_list()) atoms.push_back({{"x", to_json(a.z.x)}, {"y", to_json(a.z.y)}, {"mass", a.mass}});
  return {{"kind", "atoms"}, {"atoms", atoms}};
}

PosMeasure measure_from_json(const json& j, const Window& win) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "zero") return PosMeasure::zero(win);
  if (kind == "density") return PosMeasure::density(win, tiles_from_json(j.at("tiles"), win));
  if (kind == "atoms") {
    std::vector<Atom> atoms;
    for (const json& a : j.at("atoms"))
      atoms.push_back({{coord_from_json(a.at("x")), coord_from_json(a.at("y"))}, number_from_json(a.at("mass"))});
    return PosMeasure::atoms(win, std::move(atoms));
  }
  throw SchemaError("unknown measure kind: " + kind);
}

}  // namespace

dyadic::DyadicInterval dyadic_interval_from_json(const json& j) {
  return guarded("dyadic interval", [&] {
    return dyadic::DyadicInterval{beta_from_json(j.at("beta")), j.at("scale").get<int>(),
                                  j.at("index").get<std::int64_t>()};
  });
}

json to_json(const dyadic::Interval& I) { return {{"lo", to_json(I.lo)}, {"hi", to_json(I.hi)}}; }

dyadic::Interval interval_from_json(const json& j) {
  return guarded("interval", [&] {
    dyadic::Interval I{coord_from_json(j.at("lo")), coord_from_json(j.at("hi"))};
    if (!(I.lo < I.hi)) throw SchemaError("interval must satisfy lo < hi");
    return I;
  });
}

json to_json(const Instance& inst, const TileFunction* function) {
  json j = {
      {"seed", inst.seed},
      {"label", inst.label},
      {"window", {{"top_scale", inst.window.top_scale}, {"depth", inst.window.depth}}},
      {"weight", weight_to_json(inst.weight)},
      {"measure", measure_to_json(inst.measure)},
      {"exponents", {{"p", inst.exponents.p}, {"q", inst.exponents.q}}},
  };
  if (function) {
    json cells = json::array();
    for (double v : function->cells) cells.push_back(number(v));
    j["function"] = {{"cells", cells}};
  }
  return j;
}

InstanceFile instance_from_json(const json& j) {
  return guarded("instance", [&] {
    if (!j.is_object()) throw SchemaError("an instance is a JSON object");
    InstanceFile out;
    Instance& inst = out.instance;
    inst.seed = j.value("seed", std::uint64_t{0});
    inst.label = j.value("label", std::string{});
    const json& w = j.at("window");
    inst.window = Window{w.at("top_scale").get<int>(), w.at("depth").get<int>()};
    if (inst.window.depth < 0 || inst.window.depth > 20) throw SchemaError("window depth must be in [0, 20]");
    inst.weight = weight_from_json(j.at("weight"), inst.window);
    inst.measure = measure_from_json(j.at("measure"), inst.window);
    const json& e = j.at("exponents");
    inst.exponents = ExponentConfig::make(e.at("p").get<double>(), e.at("q").get<double>());
    if (j.contains("function")) {
      const json& f = j.at("function");
      TileFunction fn = TileFunction::zero(inst.window);
      if (f.contains("tiles")) {
        fn = TileFunction::from_tiles(inst.window, tiles_from_json(f.at("tiles"), inst.window));
      } else {
        const json& cells = f.at("cells");
        if (static_cast<int>(cells.size()) != inst.window.cell_count()) throw SchemaError("wrong number of cell values");
        for (std::size_t c = 0; c < cells.size(); ++c) fn.cells[c] = number_from_json(cells[c]);
      }
      out.function = std::move(fn);
    }
    return out;
  });
}

json to_json(const EmbeddingVerdict& v, const Instance& inst) {
  json asserts = json::array();
  for (const AssertionRecord& a : v.assertions)
    asserts.push_back({{"name", a.name},
                       {"hard", a.hard},
                       {"passed", a.passed},
                       {"value", number(a.value)},
                       {"bound", number(a.bound)},
                       {"witness", a.witness}});
  return {
      {"seed", inst.seed},
      {"label", inst.label},
      {"mode", v.mode},
      {"exponents", {{"p", inst.exponents.p}, {"q", inst.exponents.q}}},
      {"window", {{"top_scale", inst.window.top_scale}, {"depth", inst.window.depth}}},
      {"bp_constant", number(v.bp_constant)},
      {"testing_constant", number(v.testing_constant)},
      {"embedding_ratio_max", number(v.embedding_ratio_max)},
      {"weak_constant_max", number(v.weak_constant_max)},
      {"weak_pipeline_max", number(v.weak_pipeline_max)},
      {"k_mu_norm", number(v.k_mu_norm)},
      {"thm3_b_constant", number(v.thm3_b_constant)},
      {"sufficiency_factor", number(v.sufficiency_factor)},
      {"envelope_factor", number(v.envelope_factor)},
      {"null_boxes", v.null_boxes},
      {"truncation_events", v.truncation_events},
      {"hard_pass", v.hard_pass()},
      {"capped_pass", v.capped_pass()},
      {"assertions", asserts},
  };
}

std::string summary_header() {
  return "seed,label,mode,p,q,bp_constant,testing_constant,embedding_ratio_max,weak_constant_max,"
         "k_mu_norm,thm3_b_constant,sufficiency_factor,envelope_factor,null_boxes,truncation_events,"
         "hard_pass,capped_pass,failed_assertions";
}

std::string summary_row(const EmbeddingVerdict& v, const Instance& inst) {
  std::string failed;
  for (const AssertionRecord& a : v.assertions)
    if (!a.passed) failed += (failed.empty() ? "" : ";") + a.name;
  std::ostringstream os;
  os << inst.seed << ',' << inst.label << ',' << v.mode << ',' << format_double(inst.exponents.p) << ','
     << format_double(inst.exponents.q) << ',' << format_double(v.bp_constant) << ','
     << format_double(v.testing_constant) << ',' << format_double(v.embedding_ratio_max) << ','
     << format_double(v.weak_constant_max) << ',' << format_double(v.k_mu_norm) << ','
     << format_double(v.thm3_b_constant) << ',' << format_double(v.sufficiency_factor) << ','
     << format_double(v.envelope_factor) << ',' << v.null_boxes << ',' << v.truncation_events << ','
     << (v.hard_pass() ? "pass" : "fail") << ','
     << (v.capped_pass() ? "pass" : "fail") << ',' << failed;
  return os.str();
}

std::string dump_cells(const TileFunction& f) {
  std::string out = "x,y,value\n";
  for (int c = 0; c < f.window.cell_count(); ++c) {
    Point z = f.window.cell_center(c);
    out += z.x.to_string() + ',' + z.y.to_string() + ',' + format_double(f.cells[c]) + '\n';
  }
  return out;
}

std::string dump_table(const FullMaximalTable& t) {
  std::string out = "x,y,value\n";
  for (int r = 0; r < t.rows(); ++r)
    for (int c = 0; c < t.columns(); ++c) {
      Point z = t.center(r, c);
      out += z.x.to_string() + ',' + z.y.to_string() + ',' + format_double(t.at(r, c)) + '\n';
    }
  return out;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError(path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

}  // namespace tentgrid::io
