#include <benchmark/benchmark.h>

#include <complex>
#include <vector>

#include "osg/analytic.hpp"
#include "osg/entanglement.hpp"
#include "osg/fft.hpp"
#include "osg/grid.hpp"
#include "osg/params.hpp"

namespace {

const osg::ModelParams kParams = osg::derive_params(osg::PhysicalConfig{});

void BM_FftForward(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const osg::Fft fft(n);
  std::vector<std::complex<double>> data(n);
  for (std::size_t i = 0; i < n; ++i) data[i] = {static_cast<double>(i % 7), 0.5};
  for (auto _ : state) {
    fft.forward(data);
    benchmark::DoNotOptimize(data.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FftForward)->RangeMultiplier(4)->Range(256, 16384);

void BM_StrangSteps(benchmark::State& state) {
  auto spec = osg::default_grid(kParams);
  spec.n_points = static_cast<std::size_t>(state.range(0));
  const osg::Propagator prop(kParams, spec, osg::PotentialKind::Sinusoidal);
  auto psi = osg::init_gaussian(kParams, spec);
  for (auto _ : state) {
    prop.advance(psi, 100);
    benchmark::DoNotOptimize(psi.psi_plus.data());
  }
  state.SetItemsProcessed(state.iterations() * 100);
}
BENCHMARK(BM_StrangSteps)->Arg(2048)->Arg(4096)->Arg(8192)->Unit(benchmark::kMillisecond);

void BM_JacobiHermitian4(benchmark::State& state) {
  const auto rho = osg::partial_transpose(osg::reduced_density({0.3, -0.6}));
  for (auto _ : state) benchmark::DoNotOptimize(osg::jacobi_eigen(rho).values);
}
BENCHMARK(BM_JacobiHermitian4);

void BM_HorodeckiPipeline(benchmark::State& state) {
  double tau = 0.0;
  for (auto _ : state) {
    const auto rho = osg::reduced_density(osg::branch_overlap(kParams, tau));
    benchmark::DoNotOptimize(osg::horodecki_m(rho).m_value);
    tau = tau > 30.0 ? 0.0 : tau + 0.01;
  }
}
BENCHMARK(BM_HorodeckiPipeline);

}  // namespace

BENCHMARK_MAIN();
