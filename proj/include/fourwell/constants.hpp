#pragma once

namespace fourwell::si {

// CODATA 2018
inline constexpr double kPlanck = 6.62607015e-34;          // J s (exact)
inline constexpr double kHbar = 1.054571817e-34;           // J s
inline constexpr double kAtomicMassUnit = 1.66053906660e-27;  // kg
inline constexpr double kBohrRadius = 5.29177210903e-11;   // m

}  // namespace fourwell::si
