#include "doctest.h"

#include <random>
#include <stdexcept>

#include "oracles.hpp"
#include "osg/fft.hpp"

using osg::Fft;
using C = std::complex<double>;

namespace {

std::vector<C> random_signal(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<C> v(n);
  for (auto& x : v) x = {g(rng), g(rng)};
  return v;
}

}  // namespace

TEST_CASE("forward transform matches the direct DFT") {
  std::mt19937_64 rng(11);
  for (std::size_t n : {2u, 4u, 8u, 64u, 256u, 1024u}) {
    const auto x = random_signal(n, rng);
    auto y = x;
    Fft(n).forward(y);
    const auto ref = oracle::naive_dft(x);
    double err = 0.0;
    for (std::size_t k = 0; k < n; ++k) err = std::max(err, std::abs(y[k] - ref[k]));
    CHECK(err < 1e-10 * static_cast<double>(n));
  }
}

TEST_CASE("inverse undoes forward and Parseval holds") {
  std::mt19937_64 rng(12);
  const std::size_t n = 4096;
  const Fft fft(n);
  const auto x = random_signal(n, rng);
  auto y = x;
  fft.forward(y);
  double ex = 0.0, ey = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ex += std::norm(x[i]);
    ey += std::norm(y[i]);
  }
  CHECK(ey == doctest::Approx(ex * n).epsilon(1e-12));
  fft.inverse(y);
  double err = 0.0;
  for (std::size_t i = 0; i < n; ++i) err = std::max(err, std::abs(y[i] - x[i]));
  CHECK(err < 1e-13);
}

TEST_CASE("invalid lengths are rejected") {
  CHECK_THROWS_AS(Fft(0), std::invalid_argument);
  CHECK_THROWS_AS(Fft(1), std::invalid_argument);
  CHECK_THROWS_AS(Fft(12), std::invalid_argument);
  std::vector<C> wrong(8);
  CHECK_THROWS_AS(Fft(16).forward(wrong), std::invalid_argument);
}
