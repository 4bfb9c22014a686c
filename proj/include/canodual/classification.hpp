#pragma once

#include <string>

namespace canodual {

/// Second-derivative verdict for a critical point.
enum class ExtremumKind { Min, Max, Inflection, Degenerate };

/// Min / Max / Inflection by the sign of a second derivative, with the
/// dead band theta = 1e-7 (1 + |value_scale|).
ExtremumKind classify_by_second_derivative(double second, double value_scale);

std::string to_string(ExtremumKind kind);

}  // namespace canodual
