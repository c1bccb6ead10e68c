#include <benchmark/benchmark.h>

#include "npsense/analytic.hpp"
#include "npsense/detectors.hpp"
#include "npsense/montecarlo.hpp"

namespace {

using namespace npsense;

const SensingParams kParams(0.1, 0.31622776601683794, 1.0, 100);

void BM_QFunc(benchmark::State& state) {
  double x = -6.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(q_func(x));
    x += 1e-6;
  }
}
BENCHMARK(BM_QFunc);

void BM_QInv(benchmark::State& state) {
  double p = 0.001;
  for (auto _ : state) {
    benchmark::DoNotOptimize(q_inv(p));
    p = p < 0.998 ? p + 1e-6 : 0.001;
  }
}
BENCHMARK(BM_QInv);

void BM_SynthesizeBlockH1(benchmark::State& state) {
  const SensingParams params(0.1, 0.31622776601683794, 1.0, static_cast<int>(state.range(0)));
  const PilotSequence pilot = make_pilot(params, 1);
  std::uint64_t trial = 0;
  for (auto _ : state) {
    CounterRng rng(1, RngStream::H1, trial++);
    benchmark::DoNotOptimize(synthesize_block(params, pilot, Hypothesis::H1, rng));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SynthesizeBlockH1)->Arg(100)->Arg(1000);

void BM_StatNp(benchmark::State& state) {
  const PilotSequence pilot = make_pilot(kParams, 1);
  CounterRng rng(1, RngStream::H1, 0);
  const ObservationBlock block = synthesize_block(kParams, pilot, Hypothesis::H1, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(stat_np(kParams, pilot, block));
  }
}
BENCHMARK(BM_StatNp);

void BM_ErrorRates(benchmark::State& state) {
  const TrialPlan plan{
      .params = kParams,
      .detector = DetectorKind::NeymanPearson,
      .threshold =
          threshold_for_pfa(DetectorKind::NeymanPearson, kParams, 0.1, AnalyticMode::Exact),
      .trials_h0 = static_cast<std::uint64_t>(state.range(0)),
      .trials_h1 = static_cast<std::uint64_t>(state.range(0)),
      .workers = 1,
  };
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_error_rates(plan));
  }
  state.SetItemsProcessed(state.iterations() * 2 * state.range(0));
}
BENCHMARK(BM_ErrorRates)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
