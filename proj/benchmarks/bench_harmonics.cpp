#include <benchmark/benchmark.h>

#include <random>

#include "nodal/harmonics.hpp"
#include "nodal/icosphere.hpp"

namespace {

void BM_EvalBasis(benchmark::State& state) {
  const auto basis = nodal::build_basis(2, static_cast<int>(state.range(0)));
  std::mt19937_64 rng(1);
  const auto x = nodal::random_point(2, rng);
  std::vector<double> values(basis.dimension());
  for (auto _ : state) {
    basis.evaluate(x.ambient(), values);
    benchmark::DoNotOptimize(values.data());
  }
}
BENCHMARK(BM_EvalBasis)->Arg(3)->Arg(10)->Arg(50);

void BM_EvalBasisWithGradient(benchmark::State& state) {
  const auto basis = nodal::build_basis(2, static_cast<int>(state.range(0)));
  std::mt19937_64 rng(1);
  const auto x = nodal::random_point(2, rng);
  std::vector<double> values(basis.dimension());
  Eigen::Matrix3Xd gradients(3, basis.dimension());
  for (auto _ : state) {
    basis.evaluate(x.ambient(), values, gradients);
    benchmark::DoNotOptimize(gradients.data());
  }
}
BENCHMARK(BM_EvalBasisWithGradient)->Arg(3)->Arg(10)->Arg(50);

void BM_BuildIcosphere(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(nodal::build_icosphere(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_BuildIcosphere)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

}  // namespace
