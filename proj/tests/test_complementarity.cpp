#include "doctest.h"

#include <cmath>

#include "osg/analytic.hpp"
#include "osg/complementarity.hpp"
#include "osg/errors.hpp"
#include "test_support.hpp"

using namespace osg;

TEST_CASE("visibility and distinguishability endpoints") {
  CHECK(visibility({1.0, 0.0}) == 1.0);
  CHECK(visibility({0.0, 0.0}) == 0.0);
  CHECK(distinguishability({1.0, 0.0}) == 0.0);
  CHECK(distinguishability({0.0, 0.0}) == 1.0);
  CHECK(distinguishability({0.0, 0.6}) == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(visibility(branch_overlap(testing_support::default_params(), 10.0)) ==
        doctest::Approx(testing_support::frozen::overlap_modulus_tau10).epsilon(1e-12));
}

TEST_CASE("moduli marginally above one are clamped, larger ones rejected") {
  const std::complex<double> rounding{1.0 + 5e-13, 0.0};
  CHECK(visibility(rounding) == 1.0);
  CHECK(distinguishability(rounding) == 0.0);
  const std::complex<double> broken{0.8, 0.7};
  CHECK_THROWS_AS(visibility(broken), ValidationError);
  CHECK_THROWS_AS(distinguishability(broken), ValidationError);
  CHECK_THROWS_AS(duality_pair(broken), ValidationError);
}

TEST_CASE("duality identity residual") {
  const auto p = testing_support::default_params();
  CHECK(duality_identity_residual(branch_overlap(p, 0.0)) == 0.0);
  CHECK(std::abs(duality_identity_residual(branch_overlap(p, 5.0))) < 1e-12);
  CHECK(std::abs(duality_identity_residual({0.3, -0.4})) < 1e-12);
}

TEST_CASE("sweep: identity holds, V falls and D rises monotonically") {
  const auto p = testing_support::default_params();
  DualityPair previous = duality_pair(branch_overlap(p, 0.0));
  for (int i = 0; i <= 3000; ++i) {
    const auto c = branch_overlap(p, 0.01 * i);
    const auto pair = duality_pair(c);
    CHECK(std::abs(pair.visibility * pair.visibility + pair.distinguishability * pair.distinguishability - 1.0) < 1e-12);
    CHECK(std::abs(duality_identity_residual(c)) < 1e-12);
    CHECK(pair.visibility <= previous.visibility + 1e-15);
    CHECK(pair.distinguishability >= previous.distinguishability - 1e-15);
    previous = pair;
  }
}
