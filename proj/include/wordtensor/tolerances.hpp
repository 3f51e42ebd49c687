#pragma once

// Numerical tolerances used across the library. Acceptance-level bounds are
// the loose ones; target bounds are what the algorithms are tuned to reach.
namespace wt::tol {

inline constexpr double kOrthogonalityTarget = 1e-10;
inline constexpr double kOrthogonalityAccept = 1e-8;
inline constexpr double kIdempotencyTarget = 1e-10;
inline constexpr double kIntegerResidual = 1e-6;
inline constexpr double kStructureResidual = 1e-8;
inline constexpr double kCharacterDelta = 1e-10;

// Relative squared-energy threshold deciding whether a bsc participates in
// the support of a vector (weight rows, heatmap blocks).
inline constexpr double kRowSupport = 1e-2;

// Relative squared-norm threshold for tensor bsc^3-support membership.
inline constexpr double kTensorSupport = 1e-12;

}  // namespace wt::tol
