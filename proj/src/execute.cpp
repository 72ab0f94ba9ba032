#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "sgf/analytic.hpp"
#include "sgf/quadrature.hpp"
#include "sgf/runconfig.hpp"

namespace sgf {

namespace {

std::string fmt_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

struct Row {
  std::string_view scheme;
  std::string_view mode;
  double snr_db = 0;
  int K = 0;
  double R_B = 0, R_F = 0, alpha = 0;
  std::string metric;
  std::optional<int> user_index;
  double value = 0;
  std::optional<double> ci_low, ci_high;
  std::optional<std::uint64_t> trials;
};

void append_row(std::string& csv, const std::string& preset, const Row& r) {
  csv += preset;
  csv += ',';
  csv += r.scheme;
  csv += ',';
  csv += r.mode;
  csv += ',';
  csv += fmt_g(r.snr_db);
  csv += ',';
  csv += std::to_string(r.K);
  csv += ',';
  csv += fmt_g(r.R_B);
  csv += ',';
  csv += fmt_g(r.R_F);
  csv += ',';
  csv += fmt_g(r.alpha);
  csv += ',';
  csv += r.metric;
  csv += ',';
  if (r.user_index) csv += std::to_string(*r.user_index);
  csv += ',';
  csv += fmt_g(r.value);
  csv += ',';
  if (r.ci_low) csv += fmt_g(*r.ci_low);
  csv += ',';
  if (r.ci_high) csv += fmt_g(*r.ci_high);
  csv += ',';
  if (r.trials) csv += std::to_string(*r.trials);
  csv += '\n';
}

Row base_row(SchemeId scheme, const SweepPoint& p) {
  Row r;
  r.scheme = scheme_name(scheme);
  r.snr_db = p.snr_db;
  r.K = p.params.K;
  r.R_B = p.params.R_B;
  r.R_F = p.params.R_F;
  r.alpha = p.params.alpha;
  return r;
}

Row estimate_row(SchemeId scheme, const SweepPoint& p, const char* metric,
                 const MetricEstimate& e) {
  Row r = base_row(scheme, p);
  r.mode = "mc";
  r.metric = metric;
  r.value = e.point;
  r.ci_low = e.ci95_low;
  r.ci_high = e.ci95_high;
  r.trials = e.trials;
  return r;
}

}  // namespace

int execute(const RunConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();

  std::vector<double> alphas =
      cfg.alpha_sweep.empty() ? std::vector<double>{cfg.scenario.alpha}
                              : cfg.alpha_sweep;
  std::vector<std::pair<double, double>> rates =
      cfg.rate_pairs.empty()
          ? std::vector<std::pair<double, double>>{{cfg.scenario.R_B,
                                                    cfg.scenario.R_F}}
          : cfg.rate_pairs;
  std::vector<int> Ks =
      cfg.K_sweep.empty() ? std::vector<int>{cfg.scenario.K} : cfg.K_sweep;

  // One shared point list: the trial streams depend on (seed, point index)
  // only, so schemes at the same point share channel realizations.
  std::vector<SweepPoint> points;
  for (const double a : alphas)
    for (const auto& [rb, rf] : rates)
      for (const int k : Ks)
        for (const double snr : cfg.snr_db) {
          ScenarioParams params = cfg.scenario;
          params.alpha = a;
          params.R_B = rb;
          params.R_F = rf;
          params.K = k;
          const double p = std::pow(10.0, snr / 10.0);
          params.P_F = params.P_m = p;
          params.P_B =
              cfg.pin_pb_db ? std::pow(10.0, *cfg.pin_pb_db / 10.0) : p;
          points.push_back({params, snr});
        }

  const bool wants_mc = cfg.mode == RunMode::mc || cfg.mode == RunMode::both;
  const bool wants_analytic =
      cfg.mode == RunMode::analytic || cfg.mode == RunMode::both;

  std::string csv =
      "preset,scheme,mode,snr_db,K,R_B,R_F,alpha,metric,user_index,value,"
      "ci_low,ci_high,trials\n";
  nlohmann::json failures = nlohmann::json::array();

  for (const SchemeId scheme : cfg.schemes) {
    ExperimentPlan plan;
    plan.scheme = scheme;
    plan.points = points;
    plan.trials = cfg.trials;
    plan.master_seed = cfg.seed;
    plan.geometry = cfg.geometry;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const SweepPoint& point = points[i];
      try {
        const QuadratureGrid grid =
            QuadratureGrid::make(point.params, cfg.quad_order, cfg.quad_order,
                                 cfg.quad_order, cfg.quad_order,
                                 cfg.quad_order);
        std::optional<double> closed;
        if (cfg.mode != RunMode::mc && cfg.metric == "outage")
          closed = analytic_outage(scheme, point.params, grid);

        if (cfg.mode == RunMode::high_snr) {
          const auto hs = analytic_high_snr(scheme, point.params, grid);
          const auto dom = analytic_dominant(scheme, point.params, grid);
          for (const auto& [metric, value] :
               {std::pair<const char*, std::optional<double>>{"outage", closed},
                {"outage-high-snr", hs},
                {"outage-dominant", dom}}) {
            if (!value) continue;
            Row r = base_row(scheme, point);
            r.mode = "high-snr";
            r.metric = metric;
            r.value = *value;
            append_row(csv, cfg.preset, r);
          }
          continue;
        }
        if (cfg.mode == RunMode::oracle) {
          if (closed) {
            Row r = base_row(scheme, point);
            r.mode = "analytic";
            r.metric = "outage";
            r.value = *closed;
            append_row(csv, cfg.preset, r);
          }
          OracleReport report;
          const double oracle =
              numeric_oracle(scheme, point.params, grid, &report);
          Row r = base_row(scheme, point);
          r.mode = "oracle";
          r.metric = "outage";
          r.value = oracle;
          append_row(csv, cfg.preset, r);
          continue;
        }

        if (wants_mc) {
          std::optional<std::uint64_t> bump;
          if (cfg.mode == RunMode::both && !cfg.trials_from_user && closed &&
              *closed > 0.0 && *closed < 1e-4)
            bump = std::max<std::uint64_t>(cfg.trials, 10'000'000);
          const PointEstimates est = run_point(plan, i, cfg.workers, bump);
          if (cfg.metric == "outage") {
            append_row(csv, cfg.preset,
                       estimate_row(scheme, point, "outage", est.outage));
            append_row(csv, cfg.preset,
                       estimate_row(scheme, point, "gb_outage", est.gb_outage));
          } else if (cfg.metric == "admission") {
            for (std::size_t k = 0; k < est.admission.size(); ++k) {
              Row r = estimate_row(scheme, point, "admission",
                                   est.admission[k]);
              r.user_index = static_cast<int>(k);
              append_row(csv, cfg.preset, r);
            }
          } else {
            append_row(csv, cfg.preset,
                       estimate_row(scheme, point, "ergodic_rate",
                                    est.ergodic_rate));
          }
        }
        if (wants_analytic && closed) {
          Row r = base_row(scheme, point);
          r.mode = "analytic";
          r.metric = "outage";
          r.value = *closed;
          append_row(csv, cfg.preset, r);
        }
      } catch (const std::exception& e) {
        failures.push_back({{"scheme", std::string(scheme_name(scheme))},
                            {"snr_db", point.snr_db},
                            {"K", point.params.K},
                            {"R_B", point.params.R_B},
                            {"R_F", point.params.R_F},
                            {"alpha", point.params.alpha},
                            {"error", e.what()}});
      }
    }
  }

  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(cfg.out_dir, ec);
  if (ec) {
    std::fprintf(stderr, "cannot create output directory %s: %s\n",
                 cfg.out_dir.c_str(), ec.message().c_str());
    return 2;
  }
  const fs::path csv_path = fs::path(cfg.out_dir) / (cfg.preset + ".csv");
  {
    std::ofstream out(csv_path, std::ios::binary);
    out << csv;
    if (!out) {
      std::fprintf(stderr, "failed writing %s\n", csv_path.c_str());
      return 2;
    }
  }

  nlohmann::json manifest;
  manifest["artifact"] = "sgf-noma-scheduling-sim";
  manifest["version"] = "1.0.0";
  manifest["preset"] = cfg.preset;
  manifest["mode"] = std::string(run_mode_name(cfg.mode));
  manifest["metric"] = cfg.metric;
  manifest["seed"] = cfg.seed;
  manifest["trials"] = cfg.trials;
  manifest["trials_from_user"] = cfg.trials_from_user;
  manifest["workers"] = cfg.workers;
  manifest["quad_order"] = cfg.quad_order;
  manifest["scenario"] = {{"alpha", cfg.scenario.alpha},
                          {"K", cfg.scenario.K},
                          {"D_F", cfg.scenario.D_F},
                          {"D_F_inner", cfg.scenario.D_F_inner},
                          {"D_0", cfg.scenario.D_0},
                          {"D_1", cfg.scenario.D_1},
                          {"R_B", cfg.scenario.R_B},
                          {"R_F", cfg.scenario.R_F}};
  manifest["snr_db"] = cfg.snr_db;
  manifest["K_sweep"] = cfg.K_sweep;
  manifest["alpha_sweep"] = cfg.alpha_sweep;
  nlohmann::json rp = nlohmann::json::array();
  for (const auto& [rb, rf] : cfg.rate_pairs) rp.push_back({rb, rf});
  manifest["rate_pairs"] = rp;
  nlohmann::json sch = nlohmann::json::array();
  for (const SchemeId s : cfg.schemes) sch.push_back(std::string(scheme_name(s)));
  manifest["schemes"] = sch;
  if (cfg.pin_pb_db)
    manifest["pin_pb_db"] = *cfg.pin_pb_db;
  else
    manifest["pin_pb_db"] = nullptr;
  if (cfg.geometry)
    manifest["geometry"] = {{"gf", cfg.geometry->gf_distances},
                            {"gb", cfg.geometry->gb_distance}};
  else
    manifest["geometry"] = nullptr;
  manifest["csv"] = csv_path.filename().string();
  manifest["cdf_clamp_events"] = clamp_event_count().load();
  manifest["wall_time_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  manifest["failures"] = failures;

  const fs::path manifest_path = fs::path(cfg.out_dir) / "manifest.json";
  {
    std::ofstream out(manifest_path, std::ios::binary);
    out << manifest.dump(2) << '\n';
    if (!out) {
      std::fprintf(stderr, "failed writing %s\n", manifest_path.c_str());
      return 2;
    }
  }

  if (!failures.empty()) {
    std::fprintf(stderr, "%zu point(s) failed; see %s\n", failures.size(),
                 manifest_path.c_str());
    return 1;
  }
  return 0;
}

}  // namespace sgf
