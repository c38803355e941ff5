#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "tentgrid/embedding.hpp"
#include "tentgrid/instance.hpp"
#include "tentgrid/tile_function.hpp"

namespace tentgrid::io {

using nlohmann::json;

/// A document does not match the expected layout.
class SchemaError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

json to_json(const GridCoord& x);
GridCoord coord_from_json(const json& j);

/// {"beta": "0"|"1/3", "scale": j, "index": m}
json to_json(const dyadic::DyadicInterval& I);
dyadic::DyadicInterval dyadic_interval_from_json(const json& j);
/// {"lo": "n/(3*2^k)", "hi": "n/(3*2^k)"}
json to_json(const dyadic::Interval& I);
dyadic::Interval interval_from_json(const json& j);

/// Finite numbers as JSON numbers; infinities and NaN as the strings "inf", "-inf", "nan".
json number(double v);
double number_from_json(const json& j);

/// An instance file, optionally carrying a tile function under "function".
struct InstanceFile {
  Instance instance;
  std::optional<TileFunction> function;
};

json to_json(const Instance& inst, const TileFunction* function = nullptr);
InstanceFile instance_from_json(const json& j);

json to_json(const EmbeddingVerdict& v, const Instance& inst);

/// One summary row per verdict; the header names every column.
std::string summary_header();
std::string summary_row(const EmbeddingVerdict& v, const Instance& inst);

/// CSV rows x,y,value at refined-cell centers, coordinates as exact strings.
std::string dump_cells(const TileFunction& f);
/// CSV rows x,y,value at R-grid square centers.
std::string dump_table(const FullMaximalTable& t);

/// Shortest round-trip decimal form of a double.
std::string format_double(double v);

json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace tentgrid::io
