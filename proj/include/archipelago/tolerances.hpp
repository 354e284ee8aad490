#pragma once

namespace archipelago::tol {

inline constexpr double kHermitian = 1e-14;
inline constexpr double kAlgebraic = 1e-12;
/// Minimum-eigenvalue cutoff used by every PSD decision.
inline constexpr double kPsd = 1e-10;

}  // namespace archipelago::tol
