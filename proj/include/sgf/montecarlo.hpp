// Monte Carlo engine: independent trials of (geometry, fading, scheduling,
// decoding), streaming aggregation, and deterministic parallel execution.
//
// Trials are partitioned into fixed-size chunks; each trial derives its own
// random stream from (master_seed, point_index, trial_index) and chunk partial
// sums are merged in chunk order, so estimates are bit-identical for any
// worker count.

#ifndef SGF_MONTECARLO_HPP
#define SGF_MONTECARLO_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "sgf/scenario.hpp"
#include "sgf/schemes.hpp"

namespace sgf {

// Metric selection flags.
enum : unsigned {
  kMetricOutage = 1u << 0,
  kMetricAdmission = 1u << 1,
  kMetricErgodicRate = 1u << 2,
  kMetricGbOutage = 1u << 3,
  kMetricAll = 0xfu,
};

struct MetricEstimate {
  double point = 0;
  double std_error = 0;
  double ci95_low = 0;
  double ci95_high = 0;
  std::uint64_t trials = 0;
};

// Optional fixed geometry held constant across trials (fading stays random).
struct FixedGeometryOverride {
  std::vector<double> gf_distances;  // size K
  double gb_distance = 0;
};

struct SweepPoint {
  ScenarioParams params;
  double snr_db = 0;  // label for tables/CSV; powers live in params
};

struct ExperimentPlan {
  SchemeId scheme = SchemeId::cs;
  std::vector<SweepPoint> points;
  std::uint64_t trials = 1'000'000;
  std::uint64_t master_seed = 1;
  unsigned metrics = kMetricAll;
  std::optional<FixedGeometryOverride> geometry;
};

struct PointEstimates {
  MetricEstimate outage;                  // proportion, Wilson CI
  MetricEstimate gb_outage;               // proportion, Wilson CI
  MetricEstimate ergodic_rate;            // mean, normal CI
  std::vector<MetricEstimate> admission;  // per-user proportions, Wilson CI
};

// Runs plan.trials trials of plan.points[point_index] on `workers` threads
// (0 = hardware concurrency). Optional trials override for per-point bumps.
PointEstimates run_point(const ExperimentPlan& plan, std::size_t point_index,
                         unsigned workers,
                         std::optional<std::uint64_t> trials_override = {});

struct SweepRow {
  SweepPoint point;
  PointEstimates estimates;
};

std::vector<SweepRow> run_sweep(const ExperimentPlan& plan, unsigned workers);

// Negated least-squares slope of log10(outage) against snr_db/10 over the
// `top_points` highest-SNR entries with outage > 0. Throws
// std::invalid_argument when fewer than two usable points remain.
double empirical_diversity_slope(
    const std::vector<std::pair<double, double>>& snr_db_vs_outage,
    int top_points);

// Wilson score interval for s successes in n trials (point = s/n).
MetricEstimate proportion_estimate(std::uint64_t successes,
                                   std::uint64_t trials);

}  // namespace sgf

#endif  // SGF_MONTECARLO_HPP
