#include <benchmark/benchmark.h>

#include <random>

#include "nodal/integralgeom.hpp"
#include "nodal/zerofinder.hpp"

namespace {

void BM_FindCommonZerosS2(benchmark::State& state) {
  const auto basis = nodal::build_basis(2, static_cast<int>(state.range(0)));
  {
    // Fill the per-degree vertex-value cache outside the timed loop.
    auto rng = nodal::trial_stream(7, ~0ull);
    nodal::find_common_zeros(nodal::sample_subspace({basis, basis}, rng));
  }
  std::uint64_t index = 0;
  for (auto _ : state) {
    auto rng = nodal::trial_stream(7, index++);
    const auto sample = nodal::sample_subspace({basis, basis}, rng);
    benchmark::DoNotOptimize(nodal::find_common_zeros(sample));
  }
}
BENCHMARK(BM_FindCommonZerosS2)->DenseRange(1, 5)->Unit(benchmark::kMillisecond);

void BM_RestrictToGreatCircle(benchmark::State& state) {
  const auto basis = nodal::build_basis(2, static_cast<int>(state.range(0)));
  std::uint64_t index = 0;
  for (auto _ : state) {
    auto rng = nodal::trial_stream(8, index++);
    std::normal_distribution<double> gauss;
    nodal::CoefficientVector c(basis.dimension());
    for (Eigen::Index i = 0; i < c.size(); ++i) c[i] = gauss(rng);
    const auto [e1, e2] = nodal::random_great_circle(rng);
    benchmark::DoNotOptimize(nodal::restrict_to_great_circle(basis, c, e1, e2));
  }
}
BENCHMARK(BM_RestrictToGreatCircle)->Arg(3)->Arg(10)->Unit(benchmark::kMicrosecond);

}  // namespace
