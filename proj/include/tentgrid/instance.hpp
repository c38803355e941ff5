#pragma once

#include <cstdint>
#include <string>

#include "tentgrid/exponents.hpp"
#include "tentgrid/measure.hpp"
#include "tentgrid/weight.hpp"

namespace tentgrid {

/// One problem instance: a weight and a measure on a window, with exponents.
struct Instance {
  std::uint64_t seed = 0;
  Window window{};
  Weight weight = Weight::lebesgue(Window{});
  PosMeasure measure = PosMeasure::zero(Window{});
  ExponentConfig exponents{};
  /// Free-form label of the generator that produced the instance.
  std::string label;
};

}  // namespace tentgrid
