#include "osg/complementarity.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "osg/errors.hpp"

namespace osg {

namespace {

double checked_modulus(std::complex<double> overlap) {
  const double m = std::abs(overlap);
  if (!std::isfinite(m) || m > 1.0 + kOverlapModulusTolerance) {
    std::ostringstream os;
    os.precision(17);
    os << "overlap modulus " << m << " exceeds 1; upstream computation is inconsistent";
    throw ValidationError(os.str());
  }
  return std::min(m, 1.0);
}

}  // namespace

double visibility(std::complex<double> overlap) { return checked_modulus(overlap); }

double distinguishability(std::complex<double> overlap) {
  const double v = checked_modulus(overlap);
  return std::sqrt(std::max(0.0, 1.0 - v * v));
}

DualityPair duality_pair(std::complex<double> overlap) {
  return {visibility(overlap), distinguishability(overlap)};
}

double duality_identity_residual(std::complex<double> overlap) {
  const double v = std::abs(overlap);
  const double d2 = 1.0 - v * v;
  const double d = std::sqrt(std::abs(d2));
  return std::copysign(d * d, d2) + v * v - 1.0;
}

}  // namespace osg
