#include "osg/entanglement.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "osg/complementarity.hpp"
#include "osg/errors.hpp"

namespace osg {

namespace {

using C = std::complex<double>;
using Matrix2c = SquareMatrix<C, 2>;

constexpr C kI{0.0, 1.0};

Matrix2c make_pauli(std::size_t n) {
  Matrix2c s;
  switch (n) {
    case 0:
      s(0, 1) = 1.0;
      s(1, 0) = 1.0;
      break;
    case 1:
      s(0, 1) = -kI;
      s(1, 0) = kI;
      break;
    default:
      s(0, 0) = 1.0;
      s(1, 1) = -1.0;
      break;
  }
  return s;
}

Matrix4c outer(const std::array<C, 4>& a, const std::array<C, 4>& b) {
  Matrix4c m;
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) m(r, c) = a[r] * std::conj(b[c]);
  return m;
}

}  // namespace

std::vector<std::string> density_diagnostics(const Matrix4c& m) {
  std::vector<std::string> out;
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 4; ++c) {
      if (!std::isfinite(m(r, c).real()) || !std::isfinite(m(r, c).imag())) {
        out.emplace_back("non-finite entry");
        return out;
      }
    }
  }
  double herm = 0.0;
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) herm = std::max(herm, std::abs(m(r, c) - std::conj(m(c, r))));
  if (herm > kHermitianTolerance) {
    std::ostringstream os;
    os << "not Hermitian: max |rho_ij - conj(rho_ji)| = " << herm;
    out.push_back(os.str());
  }
  const C tr = m.trace();
  if (std::abs(tr - 1.0) > kTraceTolerance) {
    std::ostringstream os;
    os << "trace " << tr.real() << (tr.imag() >= 0 ? "+" : "") << tr.imag() << "i differs from 1";
    out.push_back(os.str());
  }
  if (herm <= kHermitianTolerance) {
    const Matrix4c h = 0.5 * (m + m.adjoint());
    const double min_eig = jacobi_eigen(h).values[0];
    if (min_eig < -kPositivityTolerance) {
      std::ostringstream os;
      os << "not positive semidefinite: minimum eigenvalue " << min_eig;
      out.push_back(os.str());
    }
  }
  return out;
}

TwoQubitDensity::TwoQubitDensity(const Matrix4c& m) : m_(m) {
  if (auto diags = density_diagnostics(m); !diags.empty()) {
    std::string msg = "invalid two-qubit density matrix:";
    for (const auto& d : diags) msg += "\n  - " + d;
    throw ValidationError(msg);
  }
}

const SquareMatrix<C, 2>& pauli(std::size_t n) {
  static const std::array<Matrix2c, 3> table = {make_pauli(0), make_pauli(1), make_pauli(2)};
  return table.at(n);
}

Matrix4c kron(const Matrix2c& atom, const Matrix2c& field) {
  Matrix4c m;
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t f = 0; f < 2; ++f)
      for (std::size_t a2 = 0; a2 < 2; ++a2)
        for (std::size_t f2 = 0; f2 < 2; ++f2) m(2 * a + f, 2 * a2 + f2) = atom(a, a2) * field(f, f2);
  return m;
}

std::array<C, 4> dressed_state(Branch b) {
  const double r = 1.0 / std::numbers::sqrt2;
  std::array<C, 4> v{};
  v[basis::e0] = r;
  v[basis::g1] = branch_sign(b) * r;
  return v;
}

// In the sector, a^dag S- maps |e,0> -> |g,1> and a S+ maps |g,1> -> |e,0>,
// both with amplitude sqrt(N) = 1.
Matrix4c mu_x() {
  Matrix4c m;
  m(basis::g1, basis::e0) = 0.5;
  m(basis::e0, basis::g1) = 0.5;
  return m;
}

Matrix4c mu_y() {
  Matrix4c m;
  m(basis::g1, basis::e0) = 0.5 * kI;
  m(basis::e0, basis::g1) = -0.5 * kI;
  return m;
}

Matrix4c mu_z() {
  Matrix4c m;
  m(basis::e0, basis::e0) = 0.5;
  m(basis::g1, basis::g1) = -0.5;
  return m;
}

TwoQubitDensity reduced_density(C overlap) {
  if (!(std::abs(overlap) <= 1.0 + kOverlapModulusTolerance)) {
    std::ostringstream os;
    os.precision(17);
    os << "overlap modulus " << std::abs(overlap) << " exceeds 1";
    throw ValidationError(os.str());
  }
  const auto plus = dressed_state(Branch::Plus);
  const auto minus = dressed_state(Branch::Minus);
  const Matrix4c cross = outer(plus, minus);
  Matrix4c rho = outer(plus, plus) + outer(minus, minus) + overlap * cross + std::conj(overlap) * cross.adjoint();
  return TwoQubitDensity(0.5 * rho);
}

CorrelationMatrix pauli_correlation_matrix(const TwoQubitDensity& rho) {
  CorrelationMatrix out;
  for (std::size_t n = 0; n < 3; ++n) {
    for (std::size_t m = 0; m < 3; ++m) {
      const C t = (rho.matrix() * kron(pauli(n), pauli(m))).trace();
      if (std::abs(t.imag()) > 1e-12) {
        std::ostringstream os;
        os << "tr(rho sigma_" << n + 1 << " x sigma_" << m + 1 << ") has imaginary part " << t.imag();
        throw ValidationError(os.str());
      }
      out.t(n, m) = t.real();
    }
  }
  return out;
}

BellVerdict horodecki_m(const TwoQubitDensity& rho) {
  const Matrix3 t = pauli_correlation_matrix(rho).t;
  const Matrix3 u = t.transpose() * t;
  const auto eig = jacobi_eigen(u);
  BellVerdict v;
  v.lambda1 = eig.values[2];
  v.lambda2 = eig.values[1];
  v.m_value = v.lambda1 + v.lambda2;
  v.violates_chsh = v.m_value > 1.0 + kViolationTolerance;
  return v;
}

double m_closed_form(C overlap) { return 1.0 + overlap.imag() * overlap.imag(); }

Matrix4c partial_transpose(const Matrix4c& m) {
  Matrix4c out;
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t f = 0; f < 2; ++f)
      for (std::size_t a2 = 0; a2 < 2; ++a2)
        for (std::size_t f2 = 0; f2 < 2; ++f2) out(2 * a + f, 2 * a2 + f2) = m(2 * a + f2, 2 * a2 + f);
  return out;
}

SeparabilityVerdict separability_test(const TwoQubitDensity& rho) {
  const auto eig = jacobi_eigen(partial_transpose(rho));
  SeparabilityVerdict v;
  v.min_pt_eigenvalue = eig.values[0];
  v.separable = v.min_pt_eigenvalue >= -kPositivityTolerance;
  return v;
}

}  // namespace osg
