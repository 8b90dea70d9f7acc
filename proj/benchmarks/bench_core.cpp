#include <benchmark/benchmark.h>

#include <ioncav/assembly.hpp>
#include <ioncav/envelope.hpp>
#include <ioncav/error.hpp>
#include <ioncav/oracle.hpp>

using namespace ioncav;

namespace {

const CouplingParams kFig2 = classify_regime(1.0, 0.6, 0.4);

void BM_Envelope(benchmark::State& state) {
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(envelope(kFig2, t));
    t = t < 25.0 ? t + 1e-3 : 0.0;
  }
}
BENCHMARK(BM_Envelope);

void BM_QuadVariances(benchmark::State& state) {
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(quad_variances(kFig2, t, {0.2, 0.1}, {0.0, 0.3}));
    t = t < 25.0 ? t + 1e-3 : 0.0;
  }
}
BENCHMARK(BM_QuadVariances);

void BM_ReducedDensity(benchmark::State& state) {
  const Index n = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(reduced_density(kFig2, 1.3, Mode::Vibration, {0.2, 0.0}, {}, n));
  }
}
BENCHMARK(BM_ReducedDensity)->Arg(16)->Arg(32)->Unit(benchmark::kMicrosecond);

void BM_AssembleJoint(benchmark::State& state) {
  set_warning_handler([](std::string_view) {});
  AssemblyBudget b;
  b.dims = {state.range(0), state.range(0)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(assemble_joint_density(kFig2, 1.0, {}, {}, b));
  }
  state.counters["mn_cutoff"] = assemble_joint_density(kFig2, 1.0, {}, {}, b).mn_cutoff;
}
BENCHMARK(BM_AssembleJoint)->Arg(10)->Arg(15)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_LindbladApply(benchmark::State& state) {
  const JointDims d{state.range(0), state.range(0)};
  const LindbladGenerator gen(kFig2, d);
  Matrix rho = Matrix::Random(d.total(), d.total());
  rho = (rho + rho.adjoint()).eval();
  Matrix out;
  for (auto _ : state) {
    gen.apply(rho, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * d.total() * d.total());
}
BENCHMARK(BM_LindbladApply)->Arg(10)->Arg(15)->Arg(24)->Unit(benchmark::kMicrosecond);

void BM_EvolveUnitTime(benchmark::State& state) {
  const JointDims d{state.range(0), state.range(0)};
  Vector psi = Vector::Zero(d.total());
  psi(0) = 1.0;
  const auto rho0 = pure_density(psi, d);
  IntegratorConfig cfg;
  cfg.halving_check = false;
  for (auto _ : state) {
    benchmark::DoNotOptimize(evolve(kFig2, rho0, 1.0, cfg));
  }
}
BENCHMARK(BM_EvolveUnitTime)->Arg(8)->Arg(15)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
