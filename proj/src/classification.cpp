#include "canodual/classification.hpp"

#include <cmath>

namespace canodual {

ExtremumKind classify_by_second_derivative(double second, double value_scale) {
  const double theta = 1e-7 * (1.0 + std::fabs(value_scale));
  if (second > theta) return ExtremumKind::Min;
  if (second < -theta) return ExtremumKind::Max;
  return ExtremumKind::Inflection;
}

std::string to_string(ExtremumKind kind) {
  switch (kind) {
    case ExtremumKind::Min: return "min";
    case ExtremumKind::Max: return "max";
    case ExtremumKind::Inflection: return "inflection";
    case ExtremumKind::Degenerate: return "degenerate";
  }
  return "unknown";
}

}  // namespace canodual
