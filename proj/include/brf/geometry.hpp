#pragma once

#include "brf/types.hpp"

namespace brf {

/// Bracket coefficients of the class's Milnor frame.
StructureConstants structure_constants(BianchiClass cls);

/// Diagonal Ricci components and scalar curvature of the state's metric,
/// evaluated from the per-class closed-form expressions. Throws
/// std::invalid_argument on non-positive or degenerate coefficients.
CurvatureData curvature(BianchiClass cls, const MetricState& state);

/// Throws std::invalid_argument unless all metric coefficients lie in the
/// admissible positive range.
void validate_state(const MetricState& state);

}  // namespace brf
