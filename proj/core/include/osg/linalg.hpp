#pragma once

// Fixed-size dense matrices and a cyclic Jacobi eigensolver for the tiny
// (3x3 real symmetric, 4x4 Hermitian) problems of the entanglement toolbox.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <type_traits>

namespace osg {

template <class T>
struct is_complex : std::false_type {};
template <class T>
struct is_complex<std::complex<T>> : std::true_type {};

template <class T>
constexpr T conj_of(const T& v) {
  if constexpr (is_complex<T>::value) {
    return std::conj(v);
  } else {
    return v;
  }
}

template <class T, std::size_t N>
class SquareMatrix {
 public:
  static constexpr std::size_t size = N;
  using value_type = T;

  constexpr SquareMatrix() { data_.fill(T{}); }

  static constexpr SquareMatrix identity() {
    SquareMatrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = T{1};
    return m;
  }

  constexpr T& operator()(std::size_t r, std::size_t c) { return data_[r * N + c]; }
  constexpr const T& operator()(std::size_t r, std::size_t c) const { return data_[r * N + c]; }

  SquareMatrix adjoint() const {
    SquareMatrix out;
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t c = 0; c < N; ++c) out(c, r) = conj_of((*this)(r, c));
    return out;
  }

  SquareMatrix transpose() const {
    SquareMatrix out;
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t c = 0; c < N; ++c) out(c, r) = (*this)(r, c);
    return out;
  }

  T trace() const {
    T t{};
    for (std::size_t i = 0; i < N; ++i) t += (*this)(i, i);
    return t;
  }

  friend SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
    SquareMatrix out;
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t k = 0; k < N; ++k) {
        const T ark = a(r, k);
        if (ark == T{}) continue;
        for (std::size_t c = 0; c < N; ++c) out(r, c) += ark * b(k, c);
      }
    return out;
  }

  friend SquareMatrix operator+(SquareMatrix a, const SquareMatrix& b) {
    for (std::size_t i = 0; i < N * N; ++i) a.data_[i] += b.data_[i];
    return a;
  }

  friend SquareMatrix operator-(SquareMatrix a, const SquareMatrix& b) {
    for (std::size_t i = 0; i < N * N; ++i) a.data_[i] -= b.data_[i];
    return a;
  }

  template <class S>
  friend SquareMatrix operator*(S s, SquareMatrix a) {
    for (auto& v : a.data_) v *= T(s);
    return a;
  }

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

  const std::array<T, N * N>& data() const { return data_; }

 private:
  std::array<T, N * N> data_;
};

using Matrix3 = SquareMatrix<double, 3>;
using Matrix4c = SquareMatrix<std::complex<double>, 4>;

/// Largest |a_ij - b_ij|.
template <class T, std::size_t N>
double max_abs_difference(const SquareMatrix<T, N>& a, const SquareMatrix<T, N>& b) {
  double m = 0.0;
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t c = 0; c < N; ++c) m = std::max(m, std::abs(a(r, c) - b(r, c)));
  return m;
}

/// Eigenvalues in ascending order; column j of `vectors` belongs to values[j].
template <class T, std::size_t N>
struct EigenDecomposition {
  std::array<double, N> values{};
  SquareMatrix<T, N> vectors;
};

/// Cyclic Jacobi diagonalization of a real-symmetric or complex-Hermitian
/// matrix. Only the upper triangle's Hermitian part is meaningful; the input
/// is assumed Hermitian. Each rotation first removes the phase of a_pq, then
/// applies the classical real Jacobi rotation.
template <class T, std::size_t N>
EigenDecomposition<T, N> jacobi_eigen(SquareMatrix<T, N> a, int max_sweeps = 64) {
  SquareMatrix<T, N> v = SquareMatrix<T, N>::identity();

  auto off_norm = [&a] {
    double s = 0.0;
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t c = r + 1; c < N; ++c) s += std::norm(a(r, c));
    return std::sqrt(s);
  };
  double scale = 0.0;
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t c = 0; c < N; ++c) scale += std::norm(a(r, c));
  scale = std::sqrt(scale);

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    if (off_norm() <= 1e-17 * scale || scale == 0.0) break;
    for (std::size_t p = 0; p < N; ++p) {
      for (std::size_t q = p + 1; q < N; ++q) {
        const T apq = a(p, q);
        const double g = std::abs(apq);
        if (g == 0.0) continue;
        const T phase = apq / T(g);  // e^{i phi}
        const double app = std::real(a(p, p));
        const double aqq = std::real(a(q, q));
        const double theta = (aqq - app) / (2.0 * g);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        // J = D R with D = diag(1, conj(phase)) on (p, q) and R the real
        // rotation [[c, s], [-s, c]]. A <- J^H A J, V <- V J.
        const T jpp = T(c);
        const T jpq = T(s);
        const T jqp = -T(s) * conj_of(phase);
        const T jqq = T(c) * conj_of(phase);

        for (std::size_t k = 0; k < N; ++k) {  // A <- A J (columns p, q)
          const T akp = a(k, p);
          const T akq = a(k, q);
          a(k, p) = akp * jpp + akq * jqp;
          a(k, q) = akp * jpq + akq * jqq;
        }
        for (std::size_t k = 0; k < N; ++k) {  // A <- J^H A (rows p, q)
          const T apk = a(p, k);
          const T aqk = a(q, k);
          a(p, k) = conj_of(jpp) * apk + conj_of(jqp) * aqk;
          a(q, k) = conj_of(jpq) * apk + conj_of(jqq) * aqk;
        }
        a(p, q) = T{};
        a(q, p) = T{};
        a(p, p) = T(std::real(a(p, p)));
        a(q, q) = T(std::real(a(q, q)));
        for (std::size_t k = 0; k < N; ++k) {
          const T vkp = v(k, p);
          const T vkq = v(k, q);
          v(k, p) = vkp * jpp + vkq * jqp;
          v(k, q) = vkp * jpq + vkq * jqq;
        }
      }
    }
  }

  std::array<std::size_t, N> order;
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&a](std::size_t i, std::size_t j) { return std::real(a(i, i)) < std::real(a(j, j)); });

  EigenDecomposition<T, N> out;
  for (std::size_t j = 0; j < N; ++j) {
    out.values[j] = std::real(a(order[j], order[j]));
    for (std::size_t k = 0; k < N; ++k) out.vectors(k, j) = v(k, order[j]);
  }
  return out;
}

}  // namespace osg
