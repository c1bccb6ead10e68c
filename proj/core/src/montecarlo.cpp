#include "npsense/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

namespace npsense {

namespace {

int resolve_workers(int workers, std::uint64_t trials) {
  if (workers <= 0) {
    workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers <= 0) workers = 1;
  }
  const std::uint64_t max_useful = std::max<std::uint64_t>(1, trials / 1024);
  return static_cast<int>(std::min<std::uint64_t>(static_cast<std::uint64_t>(workers), max_useful));
}

// Runs fn(first, last) over a partition of [0, trials) on `workers` threads.
template <typename Fn>
void parallel_ranges(std::uint64_t trials, int workers, Fn fn) {
  workers = resolve_workers(workers, trials);
  if (workers == 1) {
    fn(std::uint64_t{0}, trials, 0);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  const std::uint64_t chunk = trials / static_cast<std::uint64_t>(workers);
  std::uint64_t begin = 0;
  for (int w = 0; w < workers; ++w) {
    const std::uint64_t end = (w == workers - 1) ? trials : begin + chunk;
    pool.emplace_back([&fn, begin, end, w] { fn(begin, end, w); });
    begin = end;
  }
  for (auto& t : pool) t.join();
}

RngStream stream_for(Hypothesis truth) {
  return truth == Hypothesis::H0 ? RngStream::H0 : RngStream::H1;
}

double kahan_sum(const std::vector<double>& values) {
  double sum = 0.0, comp = 0.0;
  for (double v : values) {
    const double y = v - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

}  // namespace

std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials,
                                          double confidence) {
  if (trials < 1) throw std::invalid_argument("wilson_interval: trials must be >= 1");
  if (successes > trials) throw std::invalid_argument("wilson_interval: successes > trials");
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw std::invalid_argument("confidence must be in (0, 1)");
  }
  const double z = q_inv((1.0 - confidence) / 2.0);
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (phat + z2 / (2.0 * n)) / denom;
  const double half =
      z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
  const double lo = std::clamp(center - half, 0.0, 1.0);
  const double hi = std::clamp(center + half, 0.0, 1.0);
  return {lo, hi};
}

EmpiricalEstimate make_estimate(std::uint64_t successes, std::uint64_t trials,
                                double confidence) {
  const auto [lo, hi] = wilson_interval(successes, trials, confidence);
  return {successes, trials, static_cast<double>(successes) / static_cast<double>(trials),
          lo, hi, confidence};
}

EmpiricalEstimate estimate_detection_rate(const TrialPlan& plan, Hypothesis truth,
                                          std::uint64_t trials) {
  if (trials < 1) throw std::invalid_argument("trial count must be >= 1");
  const PilotSequence pilot = make_pilot(plan.params, plan.pilot_seed);
  const RngStream stream = stream_for(truth);
  const int workers = resolve_workers(plan.workers, trials);
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(workers), 0);
  parallel_ranges(trials, workers, [&](std::uint64_t first, std::uint64_t last, int w) {
    std::uint64_t hits = 0;
    for (std::uint64_t i = first; i < last; ++i) {
      CounterRng rng(plan.master_seed, stream, i);
      const ObservationBlock block = synthesize_block(plan.params, pilot, truth, rng);
      const Statistic stat = compute_statistic(plan.detector, plan.params, pilot, block);
      if (decide(stat, plan.threshold) == Hypothesis::H1) ++hits;
    }
    counts[static_cast<std::size_t>(w)] = hits;
  });
  std::uint64_t total = 0;
  for (std::uint64_t c : counts) total += c;
  return make_estimate(total, trials, plan.confidence);
}

ErrorRates estimate_error_rates(const TrialPlan& plan) {
  if (plan.trials_h0 < 1 || plan.trials_h1 < 1) {
    throw std::invalid_argument("estimate_error_rates: both trial counts must be >= 1");
  }
  ErrorRates rates;
  rates.p_fa = estimate_detection_rate(plan, Hypothesis::H0, plan.trials_h0);
  const EmpiricalEstimate detected = estimate_detection_rate(plan, Hypothesis::H1, plan.trials_h1);
  rates.p_md = make_estimate(detected.trials - detected.successes, detected.trials,
                             plan.confidence);
  return rates;
}

MomentEstimate estimate_statistic_moments(const SensingParams& params, DetectorKind detector,
                                          Hypothesis hypothesis, std::uint64_t trials,
                                          std::uint64_t master_seed, std::uint64_t pilot_seed,
                                          int workers) {
  if (trials < 2) throw std::invalid_argument("moment estimation needs trials >= 2");
  const PilotSequence pilot = make_pilot(params, pilot_seed);
  const RngStream stream = stream_for(hypothesis);
  std::vector<double> values(static_cast<std::size_t>(trials));
  parallel_ranges(trials, workers, [&](std::uint64_t first, std::uint64_t last, int) {
    for (std::uint64_t i = first; i < last; ++i) {
      CounterRng rng(master_seed, stream, i);
      const ObservationBlock block = synthesize_block(params, pilot, hypothesis, rng);
      values[static_cast<std::size_t>(i)] =
          compute_statistic(detector, params, pilot, block).value;
    }
  });

  const double n = static_cast<double>(trials);
  const double mean = kahan_sum(values) / n;
  std::vector<double> sq(values.size()), quad(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double d = values[i] - mean;
    sq[i] = d * d;
    quad[i] = sq[i] * sq[i];
  }
  const double m2 = kahan_sum(sq) / n;
  const double m4 = kahan_sum(quad) / n;
  const double variance = m2 * n / (n - 1.0);
  const double var_of_var = (m4 - m2 * m2 * (n - 3.0) / (n - 1.0)) / n;

  MomentEstimate est;
  est.mean = mean;
  est.variance = variance;
  est.mean_se = std::sqrt(variance / n);
  est.variance_se = std::sqrt(std::max(0.0, var_of_var));
  est.trials = trials;
  return est;
}

}  // namespace npsense
