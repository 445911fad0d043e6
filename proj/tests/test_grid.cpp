#include "doctest.h"

#include <cmath>
#include <numbers>
#include <sstream>

#include "oracles.hpp"
#include "osg/analytic.hpp"
#include "osg/errors.hpp"
#include "osg/grid.hpp"
#include "test_support.hpp"

using namespace osg;

namespace {

BranchGridState propagate(const ModelParams& p, const GridSpec& spec, PotentialKind kind, double tau) {
  auto state = init_gaussian(p, spec);
  Propagator(p, spec, kind).evolve_to(state, tau);
  return state;
}

}  // namespace

TEST_CASE("grid spec validation") {
  GridSpec spec;
  CHECK(grid_spec_errors(spec).empty());
  spec.n_points = 100;
  CHECK(grid_spec_errors(spec).size() == 1);
  spec.n_points = 128;
  CHECK(grid_spec_errors(spec).size() == 1);
  spec.n_points = 256;
  spec.d_tau = 0.0;
  spec.xi_max = spec.xi_min;
  CHECK(grid_spec_errors(spec).size() == 2);
  CHECK_THROWS_AS(Propagator(testing_support::default_params(), spec, PotentialKind::Linear), ValidationError);

  const auto d = default_grid(testing_support::default_params());
  CHECK(d.n_points == 4096);
  CHECK(d.d_tau == 1e-3);
  CHECK(d.xi_min == doctest::Approx(0.2 * std::numbers::pi - 60.0));
  CHECK(d.dxi() == doctest::Approx(120.0 / 4096.0));
  CHECK(d.q(d.n_points / 2) == 0.0);
  CHECK(d.q(0) == doctest::Approx(-std::numbers::pi / d.dxi()));
}

TEST_CASE("init_gaussian") {
  const auto p = testing_support::default_params();
  const auto spec = default_grid(p);
  const auto state = init_gaussian(p, spec);
  CHECK(state.tau == 0.0);
  CHECK(std::abs(branch_norm(state, Branch::Plus) - 1.0) < 1e-12);
  CHECK(std::abs(branch_norm(state, Branch::Minus) - 1.0) < 1e-12);
  const auto obs = observables(state);
  CHECK(std::abs(obs.centroid_plus.xi - p.xi0) < 1e-10);
  CHECK(std::abs(obs.excited_population - 1.0) < 1e-12);

  SUBCASE("plane-wave factor sets the momentum centroid") {
    ModelParams moving = p;
    moving.q0 = 2.0;
    const auto s = init_gaussian(moving, spec);
    CHECK(std::abs(observables(s).centroid_plus.q - 2.0) < 1e-8);
  }
  SUBCASE("packets touching the edge are rejected") {
    GridSpec narrow = spec;
    narrow.xi_min = p.xi0 - 0.5;
    narrow.xi_max = p.xi0 + 0.5;
    narrow.n_points = 256;
    CHECK_THROWS_AS(init_gaussian(p, narrow), ValidationError);
  }
  SUBCASE("momentum amplitudes agree with the closed-form initial packet") {
    const auto amp = momentum_amplitudes(state, Branch::Plus);
    double err = 0.0;
    for (std::size_t j = 0; j < spec.n_points; ++j) err = std::max(err, std::abs(amp[j] - initial_momentum_amplitude(p, spec.q(j))));
    CHECK(err < 1e-12);
    CHECK(std::abs(momentum_amplitude_at(state, Branch::Plus, 3.3) - initial_momentum_amplitude(p, 3.3)) < 1e-12);
  }
}

TEST_CASE("a vanishing time step leaves the state unchanged") {
  const auto p = testing_support::default_params();
  auto spec = default_grid(p);
  spec.d_tau = 1e-12;
  const auto before = init_gaussian(p, spec);
  const auto after = step(before, p, PotentialKind::Linear);
  double err = 0.0;
  for (std::size_t j = 0; j < spec.n_points; ++j) {
    err = std::max(err, std::abs(after.psi_plus[j] - before.psi_plus[j]));
    err = std::max(err, std::abs(after.psi_minus[j] - before.psi_minus[j]));
  }
  CHECK(err < 1e-10);
  CHECK(after.tau == 1e-12);
}

TEST_CASE("free evolution follows the exact dispersing Gaussian") {
  ModelParams p;
  p.eta = 0.5;
  p.xi0 = 1.0;
  p.delta_xi0 = 1.0;
  p.delta_q0 = 0.5;
  GridSpec spec;
  spec.n_points = 1024;
  spec.xi_min = -39.0;
  spec.xi_max = 41.0;
  spec.d_tau = 0.01;
  auto state = init_gaussian(p, spec);
  Propagator(p, spec, PotentialKind::Free).evolve_to(state, 5.0);
  double err = 0.0;
  for (std::size_t j = 0; j < spec.n_points; ++j) {
    const auto exact = oracle::free_gaussian(spec.xi(j), 5.0, p.xi0, p.delta_xi0, p.eta);
    err = std::max({err, std::abs(state.psi_plus[j] - exact), std::abs(state.psi_minus[j] - exact)});
  }
  CHECK(err < 1e-8);
  // width^2 = dxi0^2 + (eta tau / (2 dxi0))^2
  double m1 = 0.0, m2 = 0.0;
  for (std::size_t j = 0; j < spec.n_points; ++j) {
    const double d = std::norm(state.psi_plus[j]) * spec.dxi();
    m1 += d * spec.xi(j);
    m2 += d * spec.xi(j) * spec.xi(j);
  }
  CHECK(m2 - m1 * m1 == doctest::Approx(1.0 + 1.25 * 1.25).epsilon(1e-9));
}

TEST_CASE("linear potential reproduces the closed forms") {
  const auto p = testing_support::default_params();
  const auto spec = default_grid(p);
  const Propagator prop(p, spec, PotentialKind::Linear);
  auto state = init_gaussian(p, spec);
  CHECK(std::abs(overlap(state) - Complex(1.0, 0.0)) < 1e-12);

  for (double tau : {1.0, 2.5, 5.0, 10.0}) {
    prop.evolve_to(state, tau);
    const auto c = overlap(state);
    const auto a = branch_overlap(p, tau);
    CHECK(std::abs(c.real() - a.real()) < 1e-6);
    CHECK(std::abs(c.imag() - a.imag()) < 1e-6);

    const auto obs = observables(state);
    for (Branch b : {Branch::Plus, Branch::Minus}) {
      const auto expect = branch_centroid(p, tau, b);
      const auto got = b == Branch::Plus ? obs.centroid_plus : obs.centroid_minus;
      CHECK(std::abs(got.q - expect.q) < 1e-6);
      CHECK(std::abs(got.xi - expect.xi) < 1e-6);
    }
    if (tau == 2.5) CHECK(std::abs(obs.excited_population - testing_support::frozen::population_tau2_5) < 1e-4);
    if (tau == 5.0) {
      double err = 0.0;
      for (double q : {-12.0, -5.0, 0.0, 3.0, 9.0}) {
        for (Branch b : {Branch::Plus, Branch::Minus}) {
          err = std::max(err, std::abs(momentum_amplitude_at(state, b, q) - branch_momentum_amplitude(p, q, tau, b)));
        }
      }
      CHECK(err < 1e-6);
    }
    if (tau == 10.0) CHECK(std::abs(obs.centroid_plus.q + 10.0) < 1e-6);
  }
}

TEST_CASE("momentum density at tau = 15 peaks at -+15 within one bin") {
  const auto p = testing_support::default_params();
  const auto state = propagate(p, default_grid(p), PotentialKind::Linear, 15.0);
  const auto obs = observables(state);
  const double dq = state.spec.dq();
  std::size_t left = 0, right = obs.q.size() - 1;
  for (std::size_t j = 0; j < obs.q.size(); ++j) {
    if (obs.q[j] < 0 && obs.momentum_density[j] > obs.momentum_density[left]) left = j;
    if (obs.q[j] > 0 && obs.momentum_density[j] > obs.momentum_density[right]) right = j;
  }
  CHECK(std::abs(obs.q[left] + 15.0) <= dq);
  CHECK(std::abs(obs.q[right] - 15.0) <= dq);
  double total = 0.0;
  for (double d : obs.momentum_density) total += d * dq;
  CHECK(std::abs(total - 1.0) < 1e-10);
}

TEST_CASE("unitarity over 10^4 steps") {
  const auto p = testing_support::default_params();
  const auto spec = default_grid(p);
  auto state = init_gaussian(p, spec);
  Propagator(p, spec, PotentialKind::Sinusoidal).advance(state, 10000);
  CHECK(std::abs(branch_norm(state, Branch::Plus) - 1.0) < 1e-10);
  CHECK(std::abs(branch_norm(state, Branch::Minus) - 1.0) < 1e-10);
  CHECK(state.tau == doctest::Approx(10.0).epsilon(1e-12));
}

TEST_CASE("Strang splitting is second order") {
  const auto p = testing_support::default_params();
  auto spec = default_grid(p);
  auto run = [&](double dt) {
    spec.d_tau = dt;
    return overlap(propagate(p, spec, PotentialKind::Sinusoidal, 10.0));
  };
  const auto reference = run(0.1 / 8.0);
  const double coarse = std::abs(run(0.1) - reference);
  const double fine = std::abs(run(0.05) - reference);
  const double ratio = coarse / fine;
  CHECK(ratio >= 3.5);
  CHECK(ratio <= 4.5);
}

TEST_CASE("spatial resolution is converged at the default grid") {
  const auto p = testing_support::default_params();
  auto spec = default_grid(p);
  spec.d_tau = 0.01;
  const auto c1 = overlap(propagate(p, spec, PotentialKind::Linear, 10.0));
  spec.n_points *= 2;
  const auto c2 = overlap(propagate(p, spec, PotentialKind::Linear, 10.0));
  CHECK(std::abs(c1 - c2) < 1e-8);
}

TEST_CASE("node-centred packets keep the branches mirror images") {
  const auto p = testing_support::node_params();
  for (PotentialKind kind : {PotentialKind::Linear, PotentialKind::Sinusoidal}) {
    auto spec = default_grid(p);
    spec.d_tau = 0.01;
    const Propagator prop(p, spec, kind);
    auto state = init_gaussian(p, spec);
    const std::size_t n = spec.n_points;
    for (double tau : {1.0, 4.0, 8.0}) {
      prop.evolve_to(state, tau);
      double err = 0.0;
      for (std::size_t j = 1; j < n; ++j) err = std::max(err, std::abs(state.psi_minus[j] - state.psi_plus[n - j]));
      CHECK(err < 1e-10);
      CHECK(std::abs(overlap(state).imag()) < 1e-10);
    }
  }
}

TEST_CASE("sinusoidal mode function departs measurably from the linearization") {
  // Regression: |c_sin - c_lin| at tau = 10 measured once at the default
  // parameters (dx0 = lambda/50, x0 = lambda/10) and frozen here.
  constexpr double kMeasured = 0.0989141586552268;
  const auto p = testing_support::default_params();
  auto spec = default_grid(p);
  spec.d_tau = 0.01;
  const auto lin = overlap(propagate(p, spec, PotentialKind::Linear, 10.0));
  const auto sin = overlap(propagate(p, spec, PotentialKind::Sinusoidal, 10.0));
  CHECK(std::abs(sin - lin) == doctest::Approx(kMeasured).epsilon(1e-8));
}

TEST_CASE("evolve_to lands on arbitrary times") {
  const auto p = testing_support::default_params();
  auto spec = default_grid(p);
  spec.d_tau = 0.1;
  const Propagator prop(p, spec, PotentialKind::Linear);
  auto state = init_gaussian(p, spec);
  prop.evolve_to(state, 1.25);
  CHECK(state.tau == 1.25);
  const auto c = overlap(state);
  const auto a = branch_overlap(p, 1.25);
  CHECK(std::abs(c - a) < 1e-6);
  CHECK_THROWS_AS(prop.evolve_to(state, 1.0), ValidationError);
}

TEST_CASE("leakage to the grid edge is detected") {
  const auto p = testing_support::default_params();
  GridSpec spec;
  spec.n_points = 256;
  spec.xi_min = p.xi0 - 6.0;
  spec.xi_max = p.xi0 + 6.0;
  spec.d_tau = 0.01;
  // momentum window is +-pi/dxi ~ 67; the branches reach |q| ~ 60 + 4 dq0
  auto state = init_gaussian(p, spec);
  CHECK_THROWS_AS(Propagator(p, spec, PotentialKind::Linear).evolve_to(state, 60.0), GridLeakError);
}

TEST_CASE("snapshot CSV round trip") {
  const auto p = testing_support::default_params();
  auto spec = default_grid(p);
  spec.n_points = 256;
  spec.xi_min = p.xi0 - 8.0;
  spec.xi_max = p.xi0 + 8.0;
  auto state = propagate(p, spec, PotentialKind::Linear, 0.5);
  std::stringstream io;
  write_snapshot_csv(io, state);
  const std::string text = io.str();
  CHECK(text.find("# tau=0.5") == 0);
  CHECK(text.find("xi,re_psi_plus,im_psi_plus,re_psi_minus,im_psi_minus") != std::string::npos);
  const auto back = read_snapshot_csv(io);
  CHECK(back.tau == state.tau);
  CHECK(back.spec.n_points == spec.n_points);
  CHECK(back.spec.xi_min == spec.xi_min);
  CHECK(back.psi_plus == state.psi_plus);
  CHECK(back.psi_minus == state.psi_minus);

  std::istringstream broken("# tau=1\nxi,a\n1,2\n");
  CHECK_THROWS_AS(read_snapshot_csv(broken), ValidationError);
}
