#include "sgf/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace sgf {

namespace {

constexpr std::uint64_t kChunk = 1u << 16;
constexpr double kZ = 1.959963984540054;  // 97.5% normal quantile

struct Partial {
  std::uint64_t outage = 0;
  std::uint64_t gb_outage = 0;
  double rate_sum = 0;
  double rate_sq_sum = 0;
  std::vector<std::uint64_t> admission;
};

Partial run_chunk(const ExperimentPlan& plan, const SweepPoint& point,
                  std::uint64_t point_id, std::uint64_t begin,
                  std::uint64_t end) {
  const ScenarioParams& params = point.params;
  Partial acc;
  acc.admission.assign(static_cast<std::size_t>(params.K), 0);
  for (std::uint64_t t = begin; t < end; ++t) {
    TrialStream rng = TrialStream::at(plan.master_seed, point_id, t);
    ChannelRealization real;
    if (plan.geometry) {
      real = sample_channels(params, plan.geometry->gb_distance,
                             plan.geometry->gf_distances, rng);
    } else {
      auto [r_b, r] = sample_positions(params, rng);
      real = sample_channels(params, r_b, r, rng);
    }
    const SchedulingOutcome out = run_scheme(plan.scheme, params, real, rng);
    acc.outage += static_cast<std::uint64_t>(outage_indicator(out, params));
    acc.gb_outage += out.gb_rate < params.R_B ? 1u : 0u;
    acc.rate_sum += out.gf_rate;
    acc.rate_sq_sum += out.gf_rate * out.gf_rate;
    ++acc.admission[static_cast<std::size_t>(out.admitted_index)];
  }
  return acc;
}

MetricEstimate mean_estimate(double sum, double sq_sum, std::uint64_t n) {
  MetricEstimate e;
  e.trials = n;
  if (n == 0) return e;
  e.point = sum / static_cast<double>(n);
  if (n > 1) {
    const double var =
        std::max(0.0, (sq_sum - static_cast<double>(n) * e.point * e.point) /
                          static_cast<double>(n - 1));
    e.std_error = std::sqrt(var / static_cast<double>(n));
  }
  e.ci95_low = e.point - kZ * e.std_error;
  e.ci95_high = e.point + kZ * e.std_error;
  return e;
}

}  // namespace

MetricEstimate proportion_estimate(std::uint64_t successes,
                                   std::uint64_t trials) {
  MetricEstimate e;
  e.trials = trials;
  if (trials == 0) return e;
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  e.point = p;
  e.std_error = std::sqrt(p * (1.0 - p) / n);
  const double z2 = kZ * kZ;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half =
      kZ * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  // Wilson bounds are exactly 0 (or 1) at the boundary counts; the direct
  // formula leaves rounding residue there.
  e.ci95_low = successes == 0 ? 0.0 : std::max(0.0, center - half);
  e.ci95_high = successes == trials ? 1.0 : std::min(1.0, center + half);
  return e;
}

PointEstimates run_point(const ExperimentPlan& plan, std::size_t point_index,
                         unsigned workers,
                         std::optional<std::uint64_t> trials_override) {
  const SweepPoint& point = plan.points.at(point_index);
  point.params.validate();
  if (plan.geometry) {
    if (plan.geometry->gf_distances.size() !=
        static_cast<std::size_t>(point.params.K))
      throw std::invalid_argument(
          "fixed geometry must list one distance per GF user");
    if (plan.geometry->gb_distance < 0.0)
      throw std::invalid_argument("fixed GB distance must be nonnegative");
  }
  const std::uint64_t total = trials_override.value_or(plan.trials);
  if (total == 0) throw std::invalid_argument("trial count must be positive");

  const std::uint64_t chunks = (total + kChunk - 1) / kChunk;
  std::vector<Partial> partials(static_cast<std::size_t>(chunks));
  std::atomic<std::uint64_t> next{0};
  unsigned n_workers = workers ? workers : std::thread::hardware_concurrency();
  n_workers = std::max(1u,
                       static_cast<unsigned>(std::min<std::uint64_t>(
                           n_workers ? n_workers : 1u, chunks)));
  auto body = [&] {
    for (;;) {
      const std::uint64_t c = next.fetch_add(1, std::memory_order_relaxed);
      if (c >= chunks) return;
      const std::uint64_t begin = c * kChunk;
      const std::uint64_t end = std::min(total, begin + kChunk);
      partials[static_cast<std::size_t>(c)] =
          run_chunk(plan, point, point_index, begin, end);
    }
  };
  if (n_workers == 1) {
    body();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (unsigned i = 0; i < n_workers; ++i) pool.emplace_back(body);
    for (auto& th : pool) th.join();
  }

  Partial merged;
  merged.admission.assign(static_cast<std::size_t>(point.params.K), 0);
  for (const Partial& p : partials) {
    merged.outage += p.outage;
    merged.gb_outage += p.gb_outage;
    merged.rate_sum += p.rate_sum;
    merged.rate_sq_sum += p.rate_sq_sum;
    for (std::size_t k = 0; k < merged.admission.size(); ++k)
      merged.admission[k] += p.admission[k];
  }

  PointEstimates est;
  est.outage = proportion_estimate(merged.outage, total);
  est.gb_outage = proportion_estimate(merged.gb_outage, total);
  est.ergodic_rate = mean_estimate(merged.rate_sum, merged.rate_sq_sum, total);
  est.admission.reserve(merged.admission.size());
  for (const std::uint64_t s : merged.admission)
    est.admission.push_back(proportion_estimate(s, total));
  return est;
}

std::vector<SweepRow> run_sweep(const ExperimentPlan& plan, unsigned workers) {
  std::vector<SweepRow> rows;
  rows.reserve(plan.points.size());
  for (std::size_t i = 0; i < plan.points.size(); ++i)
    rows.push_back({plan.points[i], run_point(plan, i, workers)});
  return rows;
}

double empirical_diversity_slope(
    const std::vector<std::pair<double, double>>& snr_db_vs_outage,
    int top_points) {
  std::vector<std::pair<double, double>> usable;
  for (const auto& [snr, outage] : snr_db_vs_outage)
    if (outage > 0.0) usable.emplace_back(snr, outage);
  std::sort(usable.begin(), usable.end());
  if (top_points < 2 || usable.size() < 2)
    throw std::invalid_argument(
        "diversity slope needs at least two positive-outage points");
  const std::size_t take =
      std::min(usable.size(), static_cast<std::size_t>(top_points));
  const std::size_t first = usable.size() - take;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = first; i < usable.size(); ++i) {
    const double x = usable[i].first / 10.0;
    const double y = std::log10(usable[i].second);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(take);
  const double denom = n * sxx - sx * sx;
  if (denom <= 0.0)
    throw std::invalid_argument(
        "diversity slope needs distinct SNR values");
  return -(n * sxy - sx * sy) / denom;
}

}  // namespace sgf
