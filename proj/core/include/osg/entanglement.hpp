#pragma once

// Two-qubit (atom x field) density-matrix criteria.
//
// Basis convention, fixed everywhere in this library: product order
// atom (x) field with index 2*a + f, i.e.
//   0: |e,0>   1: |e,1>   2: |g,0>   3: |g,1>
// |e> and |0> are the sigma_z = +1 states of their qubit.

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "osg/analytic.hpp"
#include "osg/linalg.hpp"

namespace osg {

namespace basis {
inline constexpr std::size_t e0 = 0;
inline constexpr std::size_t e1 = 1;
inline constexpr std::size_t g0 = 2;
inline constexpr std::size_t g1 = 3;
}  // namespace basis

inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kTraceTolerance = 1e-12;
inline constexpr double kPositivityTolerance = 1e-10;
/// M(rho) must exceed 1 by more than this to count as a CHSH violation.
inline constexpr double kViolationTolerance = 1e-10;

/// Every broken density-matrix invariant (Hermiticity, unit trace, positive
/// semidefiniteness), one message each. Empty means valid.
std::vector<std::string> density_diagnostics(const Matrix4c& m);

/// Validated 4x4 density matrix in the basis above.
class TwoQubitDensity {
 public:
  /// Throws ValidationError carrying density_diagnostics() if invalid.
  explicit TwoQubitDensity(const Matrix4c& m);

  const Matrix4c& matrix() const { return m_; }
  std::complex<double> operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

 private:
  Matrix4c m_;
};

/// t_nm = tr(rho sigma_n (x) sigma_m), n, m in {x, y, z}.
struct CorrelationMatrix {
  Matrix3 t;
};

struct BellVerdict {
  double m_value = 0.0;
  bool violates_chsh = false;
  double lambda1 = 0.0;  // largest eigenvalue of T^T T
  double lambda2 = 0.0;  // second largest
};

struct SeparabilityVerdict {
  double min_pt_eigenvalue = 0.0;
  bool separable = true;
};

/// Pauli matrices; index 0, 1, 2 -> x, y, z.
const SquareMatrix<std::complex<double>, 2>& pauli(std::size_t n);

/// Kronecker product of 2x2 matrices, atom factor first.
Matrix4c kron(const SquareMatrix<std::complex<double>, 2>& atom,
              const SquareMatrix<std::complex<double>, 2>& field);

/// Dressed state |chi+-> = (|e,0> +- |g,1>)/sqrt(2) as a 4-vector.
std::array<std::complex<double>, 4> dressed_state(Branch b);

/// Optical Stern-Gerlach spin operators restricted to the one-excitation
/// sector span{|e,0>, |g,1>} (zero on |e,1>, |g,0>).
Matrix4c mu_x();
Matrix4c mu_y();
Matrix4c mu_z();

/// Atom-field state after tracing out the translational motion:
///   rho = 1/2 [|chi+><chi+| + |chi-><chi-| + (c |chi+><chi-| + h.c.)]
/// with c = <phi-|phi+>. Throws ValidationError if |c| > 1 (beyond rounding).
TwoQubitDensity reduced_density(std::complex<double> overlap);

/// Throws ValidationError if any trace has an imaginary part above 1e-12.
CorrelationMatrix pauli_correlation_matrix(const TwoQubitDensity& rho);

/// Horodecki criterion: M = sum of the two largest eigenvalues of T^T T.
BellVerdict horodecki_m(const TwoQubitDensity& rho);

/// 1 + (Im c)^2, the value of M for the reduced_density family.
double m_closed_form(std::complex<double> overlap);

/// Transposes the field (second) subsystem indices.
Matrix4c partial_transpose(const Matrix4c& m);
inline Matrix4c partial_transpose(const TwoQubitDensity& rho) { return partial_transpose(rho.matrix()); }

/// Peres test: separable iff the partial transpose has no eigenvalue below
/// -kPositivityTolerance. For the reduced_density family the minimum is
/// -|Im c|/2, so exact separability needs Im c = 0.
SeparabilityVerdict separability_test(const TwoQubitDensity& rho);

}  // namespace osg
