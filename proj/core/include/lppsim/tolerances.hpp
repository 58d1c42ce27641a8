#pragma once

/// Central tolerance table: every statistical pass threshold used by the
/// experiments and the acceptance checks lives here.
namespace lppsim::tol {

inline constexpr double kKsPValue = 0.01;        // KS / chi-square pass level
inline constexpr double kMeanSigmas = 4.0;       // expectation checks, in SEs
inline constexpr double kSecondMomentRel = 0.02; // RN E[f^2] vs closed form
inline constexpr double kTailSlopeLo = 2.2;      // cubic-exponent window
inline constexpr double kTailSlopeHi = 3.8;
inline constexpr double kVarianceBand = 3.0;     // Var/n^{2/3} max/min ratio
inline constexpr double kVarSlopeLo = 0.5;       // log Var vs log n slope
inline constexpr double kVarSlopeHi = 0.85;
inline constexpr double kExitTailAt3 = 0.05;     // P(|exit-u| > 3 n^{2/3})
inline constexpr double kEventDFreq = 0.8;       // tilted D1/D2 frequency
inline constexpr double kEnumRelTol = 1e-10;     // DP vs enumeration
inline constexpr double kMassTol = 1e-9;         // probability normalization

}  // namespace lppsim::tol
