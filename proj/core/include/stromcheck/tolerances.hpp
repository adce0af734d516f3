#pragma once

namespace stromcheck {

// Terms with magnitude below this are dropped from forms.
inline constexpr double kPruneThreshold = 1e-12;
// Jacobi, integrability and other structural gates on model inputs.
inline constexpr double kStructureTolerance = 1e-10;
// Default pass/fail threshold for residual sup-norms.
inline constexpr double kResidualTolerance = 1e-9;
// J^2 = -Id and g(J.,J.) = g checks on loaded matrices.
inline constexpr double kExactnessTolerance = 1e-12;

}  // namespace stromcheck
