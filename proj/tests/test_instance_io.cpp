#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "tentgrid/generators.hpp"
#include "tentgrid/instance_io.hpp"

using namespace tentgrid;
using dyadic::Beta;
using dyadic::DyadicInterval;
using io::json;

namespace {

int count_fields(const std::string& line) { return static_cast<int>(std::count(line.begin(), line.end(), ',')) + 1; }

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

Instance sample(const std::string& measure) {
  Window win{0, 4};
  Instance inst;
  inst.seed = 99;
  inst.window = win;
  inst.label = "sample";
  inst.weight = gen_perturbed_weight(0.2, 0.4, 3, win);
  inst.exponents = ExponentConfig::make(1.5, 2.0);
  if (measure == "atoms") inst.measure = gen_atom_measure(4, 7, win);
  if (measure == "density") inst.measure = gen_density_measure(5, win);
  if (measure == "zero") inst.measure = PosMeasure::zero(win);
  return inst;
}

}  // namespace

TEST_CASE("coordinates and intervals use exact strings") {
  GridCoord x = GridCoord::from_parts(5, 3);
  CHECK(io::to_json(x) == json("5/(3*2^3)"));
  CHECK(io::coord_from_json(json("5/(3*2^3)")) == x);
  CHECK(io::coord_from_json(json(4)) == GridCoord::from_int(4));
  CHECK_THROWS_AS(io::coord_from_json(json(0.5)), io::SchemaError);
  CHECK_THROWS_AS(io::coord_from_json(json("half")), io::SchemaError);

  DyadicInterval I{Beta::Third, -3, 2};
  json j = io::to_json(I);
  CHECK(j == json{{"beta", "1/3"}, {"scale", -3}, {"index", 2}});
  CHECK(io::dyadic_interval_from_json(j) == I);
  CHECK_THROWS_AS(io::dyadic_interval_from_json(json{{"beta", "1/2"}, {"scale", 0}, {"index", 0}}), io::SchemaError);
  CHECK_THROWS_AS(io::dyadic_interval_from_json(json{{"beta", "0"}}), io::SchemaError);

  dyadic::Interval K = I.interval();
  CHECK(io::interval_from_json(io::to_json(K)) == K);
  CHECK_THROWS_AS(io::interval_from_json(json{{"lo", "1"}, {"hi", "1"}}), io::SchemaError);
}

TEST_CASE("non-finite numbers") {
  CHECK(io::number(1.5) == json(1.5));
  CHECK(io::number(INFINITY) == json("inf"));
  CHECK(std::isinf(io::number_from_json(json("-inf"))));
  CHECK(std::isnan(io::number_from_json(json("nan"))));
  CHECK_THROWS_AS(io::number_from_json(json("many")), io::SchemaError);
  CHECK(io::format_double(0.1) == "0.1");
}

TEST_CASE("instance round trip") {
  for (const char* m : {"zero", "atoms", "density"}) {
    Instance inst = sample(m);
    TileFunction f = TileFunction::from_tiles(inst.window, gen_tile_values(8, inst.window, "spiky"));
    json j = io::to_json(inst, &f);
    io::InstanceFile back = io::instance_from_json(j);
    CHECK(back.instance.seed == inst.seed);
    CHECK(back.instance.window == inst.window);
    CHECK(back.instance.exponents.p == inst.exponents.p);
    REQUIRE(back.function.has_value());
    CHECK(back.function->cells == f.cells);
    CHECK(back.instance.measure.box_mass(inst.window.root_interval()) ==
          inst.measure.box_mass(inst.window.root_interval()));
    for (int t = 0; t < inst.window.tile_count(); ++t)
      CHECK(back.instance.weight.densities()[t] == inst.weight.densities()[t]);
    CHECK(io::to_json(back.instance, &*back.function).dump() == j.dump());
  }
  Instance power = sample("zero");
  power.weight = Weight::power(power.window, 0.5, 2.0);
  io::InstanceFile back = io::instance_from_json(io::to_json(power));
  CHECK(back.instance.weight.is_power());
  CHECK(back.instance.weight.alpha() == 0.5);
  CHECK(back.instance.weight.coefficient() == 2.0);
  CHECK_FALSE(back.function.has_value());

  // tile-valued function form
  json j = io::to_json(power);
  j["function"] = {{"tiles", std::vector<double>(power.window.tile_count(), 2.0)}};
  CHECK(io::instance_from_json(j).function->cells == TileFunction::constant(power.window, 2.0).cells);
}

TEST_CASE("schema violations") {
  json good = io::to_json(sample("density"));
  CHECK_NOTHROW(io::instance_from_json(good));
  json j = good;
  j.erase("window");
  CHECK_THROWS_AS(io::instance_from_json(j), io::SchemaError);
  j = good;
  j["weight"]["tiles"].erase(0);
  CHECK_THROWS_AS(io::instance_from_json(j), io::SchemaError);
  j = good;
  j["weight"]["kind"] = "fractal";
  CHECK_THROWS_AS(io::instance_from_json(j), io::SchemaError);
  j = good;
  j["measure"] = {{"kind", "atoms"}, {"atoms", {{{"x", 0.5}, {"y", "1/(3*2^0)"}, {"mass", 1.0}}}}};
  CHECK_THROWS_AS(io::instance_from_json(j), io::SchemaError);
  j = good;
  j["function"] = {{"cells", {1.0, 2.0}}};
  CHECK_THROWS_AS(io::instance_from_json(j), io::SchemaError);
  CHECK_THROWS_AS(io::instance_from_json(json::array()), io::SchemaError);
  CHECK_THROWS_AS(io::read_json_file("/nonexistent/instance.json"), io::SchemaError);
}

TEST_CASE("verdict serialization") {
  Instance inst = sample("atoms");
  EmbeddingVerdict v;
  v.mode = "thm1";
  v.testing_constant = 0.25;
  v.assertions.push_back({"x.hard", true, true, 0.5, 1.0, ""});
  v.assertions.push_back({"x.capped", false, false, 3.0, 2.0, "box [0, 1)"});
  json j = io::to_json(v, inst);
  CHECK(j["hard_pass"] == true);
  CHECK(j["capped_pass"] == false);
  CHECK(j["assertions"].size() == 2);
  CHECK(j["assertions"][1]["witness"] == "box [0, 1)");

  std::string header = io::summary_header();
  std::string row = io::summary_row(v, inst);
  CHECK(count_fields(header) == count_fields(row));
  CHECK(row.find(",pass,fail,x.capped") != std::string::npos);
}

TEST_CASE("CSV dumps") {
  Window win{0, 3};
  TileFunction f = TileFunction::from_tiles(win, gen_tile_values(2, win));
  auto rows = lines(io::dump_cells(f));
  REQUIRE(rows.size() == static_cast<std::size_t>(win.cell_count()) + 1);
  CHECK(rows[0] == "x,y,value");
  for (int c = 0; c < win.cell_count(); ++c) {
    const std::string& r = rows[c + 1];
    auto a = r.find(','), b = r.find(',', a + 1);
    Point z{GridCoord::parse(r.substr(0, a)), GridCoord::parse(r.substr(a + 1, b - a - 1))};
    CHECK(z == win.cell_center(c));
    CHECK(std::stod(r.substr(b + 1)) == f.cells[c]);
  }
  FullMaximalTable t = full_maximal(f, Weight::lebesgue(win), 4);
  auto trows = lines(io::dump_table(t));
  CHECK(trows.size() == static_cast<std::size_t>(t.rows() * t.columns()) + 1);
}
