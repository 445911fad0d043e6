#pragma once

#include <complex>

namespace osg {

/// Visibility / distinguishability pair for a pure which-path detector.
struct DualityPair {
  double visibility = 1.0;
  double distinguishability = 0.0;
};

/// Moduli up to this far above 1 are treated as rounding and clamped.
inline constexpr double kOverlapModulusTolerance = 1e-12;

/// V = |<phi-|phi+>| clamped to [0, 1]. Throws ValidationError if the modulus
/// exceeds 1 by more than kOverlapModulusTolerance.
double visibility(std::complex<double> overlap);

/// D = sqrt(1 - |<phi+|phi->|^2). Same error contract as visibility.
double distinguishability(std::complex<double> overlap);

DualityPair duality_pair(std::complex<double> overlap);

/// D^2 + V^2 - 1 evaluated from the raw (unclamped) modulus.
double duality_identity_residual(std::complex<double> overlap);

}  // namespace osg
