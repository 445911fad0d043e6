#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace osg {

/// In-place iterative radix-2 Cooley-Tukey transform of fixed length.
///
///   forward: X_k = sum_n x_n exp(-2 pi i k n / N)
///   inverse: x_n = (1/N) sum_k X_k exp(+2 pi i k n / N)
///
/// The plan (twiddles, bit-reversal table) is immutable after construction,
/// so one Fft may be shared by concurrent callers working on distinct buffers.
class Fft {
 public:
  /// Throws std::invalid_argument unless n is a power of two >= 2.
  explicit Fft(std::size_t n);

  std::size_t size() const { return n_; }

  void forward(std::span<std::complex<double>> data) const;
  void inverse(std::span<std::complex<double>> data) const;

 private:
  void transform(std::span<std::complex<double>> data, bool inverse) const;

  std::size_t n_;
  std::vector<std::size_t> bitrev_;
  std::vector<std::complex<double>> twiddles_;  // exp(-2 pi i k / N), k < N/2
};

constexpr bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace osg
