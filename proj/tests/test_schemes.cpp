#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sgf/quadrature.hpp"
#include "sgf/rng.hpp"
#include "sgf/scenario.hpp"
#include "sgf/schemes.hpp"

using namespace sgf;

namespace {
ScenarioParams base() {
  ScenarioParams p;
  p.P_B = 10.0;
  p.P_F = 1.0;
  p.P_m = 10.0;
  p.R_B = 1.0;  // gamma_B = 1
  p.R_F = 0.9;
  return p;
}

ChannelRealization fixed_real(std::vector<double> r, std::vector<double> h2,
                              double r_B, double g2) {
  ChannelRealization real;
  real.r = std::move(r);
  real.h2 = std::move(h2);
  real.r_B = r_B;
  real.g2 = g2;
  return real;
}
}  // namespace

TEST_CASE("decoding threshold") {
  const ScenarioParams p = base();
  CHECK(decoding_threshold(p, 0.3) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(decoding_threshold(p, 0.05) == 0.0);  // P_B g2 < gamma_B
  CHECK(decoding_threshold(p, 0.1) == 0.0);   // boundary maps to zero
}

TEST_CASE("hybrid SIC stage selection and rates") {
  const ScenarioParams p = base();
  const double g2 = 0.3, tau0 = 2.0;  // P_B g2 = 3

  // Above threshold: first stage, GB interference present.
  auto [r1, s1] = achievable_rate_hsic(p, 3.0, 1.0, g2, tau0);
  CHECK(s1 == SicStage::first);
  CHECK(r1 == doctest::Approx(std::log2(1.75)).epsilon(1e-15));

  // Below threshold: second stage, interference-free.
  auto [r2, s2] = achievable_rate_hsic(p, 1.0, 1.0, g2, tau0);
  CHECK(s2 == SicStage::second);
  CHECK(r2 == doctest::Approx(1.0).epsilon(1e-15));

  // Exact tie resolves to the second stage.
  auto [r3, s3] = achievable_rate_hsic(p, 2.0, 1.0, g2, tau0);
  CHECK(s3 == SicStage::second);
  CHECK(r3 == doctest::Approx(std::log2(3.0)).epsilon(1e-15));
}

TEST_CASE("power control window") {
  const ScenarioParams p = base();  // P_m = 10
  const double g2 = 0.3, tau0 = 2.0;
  // Window (tau0/P_m, tau0 (1 + P_B g2)/P_m) = (0.2, 0.8).
  CHECK(power_control(p, 0.5, g2, tau0) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(power_control(p, 0.1, g2, tau0) == 10.0);
  CHECK(power_control(p, 0.9, g2, tau0) == 10.0);
  CHECK(power_control(p, 0.2, g2, tau0) == 10.0);  // boundary excluded
  CHECK(power_control(p, 0.5, g2, 0.0) == 10.0);   // tau0 = 0
  CHECK(power_control(p, 0.0, g2, tau0) == 10.0);  // h2 = 0
}

TEST_CASE("in-window power control lands exactly on the second stage") {
  const ScenarioParams p = base();
  const double g2 = 0.3, tau0 = 2.0, h2 = 0.5;
  const double tx = power_control(p, h2, g2, tau0);
  auto [rate, stage] = achievable_rate_hsic(p, h2, tx, g2, tau0);
  CHECK(stage == SicStage::second);
  CHECK(rate == doctest::Approx(std::log2(1.0 + tau0)).epsilon(1e-14));
}

TEST_CASE("selection ties break to the lowest index") {
  const ScenarioParams p = base();
  const auto real = fixed_real({2.0, 2.0}, {0.4, 0.4}, 2.0, 0.3);
  CHECK(schedule_bu(p, real, PowerRule::fixed).admitted_index == 0);
  CHECK(schedule_cs(p, real, PowerRule::fixed).admitted_index == 0);
}

TEST_CASE("CS admits the largest distance-conditioned CDF value") {
  ScenarioParams p = base();
  p.K = 2;
  // Same gain at different distances: the far user has the higher CDF value.
  const auto real = fixed_real({0.5, 2.9}, {0.2, 0.2}, 2.0, 0.3);
  CHECK(conditional_cdf_gf(2.9, p.alpha, 0.2) >
        conditional_cdf_gf(0.5, p.alpha, 0.2));
  CHECK(schedule_cs(p, real, PowerRule::fixed).admitted_index == 1);
  // BU instead admits the larger achievable rate, identical here on gains.
  CHECK(schedule_bu(p, real, PowerRule::fixed).admitted_index == 0);
}

TEST_CASE("BU admits the rate maximizer") {
  ScenarioParams p = base();
  p.K = 3;
  // tau0 = 2: user 1 decodes first under GB interference (rate log2(1.625)),
  // user 2 decodes second interference-free (rate 1.0) and wins.
  const auto out = schedule_bu(
      p, fixed_real({1.0, 1.0, 1.0}, {0.5, 2.5, 1.0}, 2.0, 0.3),
      PowerRule::fixed);
  CHECK(out.admitted_index == 2);
  CHECK(out.gf_rate == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(out.sic_stage == SicStage::second);
  CHECK(out.tau0 == doctest::Approx(2.0).epsilon(1e-15));
  // A strong enough first-stage user beats every second-stage rate.
  const auto strong = schedule_bu(
      p, fixed_real({1.0, 1.0, 1.0}, {0.5, 9.0, 1.0}, 2.0, 0.3),
      PowerRule::fixed);
  CHECK(strong.admitted_index == 1);
  CHECK(strong.gf_rate == doctest::Approx(std::log2(3.25)).epsilon(1e-12));
  CHECK(strong.sic_stage == SicStage::first);
}

TEST_CASE("random selection is uniform and seed-driven") {
  ScenarioParams p = base();
  p.K = 4;
  const auto real =
      fixed_real({1, 1, 1, 1}, {0.5, 0.5, 0.5, 0.5}, 2.0, 0.3);
  TrialStream rng(3);
  int counts[4] = {0, 0, 0, 0};
  const int n = 40000;
  for (int i = 0; i < n; ++i)
    ++counts[schedule_rs(p, real, rng, Decoding::hsic, PowerRule::fixed)
                 .admitted_index];
  for (const int c : counts)
    CHECK(double(c) / n == doctest::Approx(0.25).epsilon(0.04));
}

TEST_CASE("FSIC always decodes in the first stage at fixed power") {
  ScenarioParams p = base();
  p.K = 1;
  // Gain far below tau0: HSIC would take the clean second stage.
  const auto real = fixed_real({1.0}, {0.5}, 2.0, 0.3);
  TrialStream rng(1);
  const auto fsic =
      schedule_rs(p, real, rng, Decoding::fsic, PowerRule::fixed);
  CHECK(fsic.sic_stage == SicStage::first);
  CHECK(fsic.tx_power == p.P_F);
  CHECK(fsic.gf_rate ==
        doctest::Approx(std::log2(1.0 + 0.5 / (10.0 * 0.3 + 1.0)))
            .epsilon(1e-14));

  const auto hsic =
      schedule_rs(p, real, rng, Decoding::hsic, PowerRule::fixed);
  CHECK(hsic.sic_stage == SicStage::second);
  CHECK(hsic.gf_rate > fsic.gf_rate);
}

TEST_CASE("GB rate never depends on the GF side") {
  const ScenarioParams p = base();
  const auto real = fixed_real({1.0, 2.0}, {0.1, 5.0}, 2.0, 0.3);
  const auto a = schedule_bu(p, real, PowerRule::fixed);
  const auto b = schedule_cs(p, real, PowerRule::pc);
  const double expect = std::log2(1.0 + p.P_B * real.g2);
  CHECK(a.gb_rate == doctest::Approx(expect).epsilon(1e-15));
  CHECK(b.gb_rate == doctest::Approx(expect).epsilon(1e-15));
}

TEST_CASE("power control never lowers the scheme rate (per realization)") {
  ScenarioParams p = base();
  p.K = 4;
  p.P_F = p.P_m = 50.0;
  TrialStream rng(77);
  for (int i = 0; i < 20000; ++i) {
    const auto [r_B, r] = sample_positions(p, rng);
    const ChannelRealization real = sample_channels(p, r_B, r, rng);
    const double fixed_bu =
        schedule_bu(p, real, PowerRule::fixed).gf_rate;
    const double pc_bu = schedule_bu(p, real, PowerRule::pc).gf_rate;
    CHECK(pc_bu >= fixed_bu - 1e-12);
    const double fixed_cs =
        schedule_cs(p, real, PowerRule::fixed).gf_rate;
    const double pc_cs = schedule_cs(p, real, PowerRule::pc).gf_rate;
    CHECK(pc_cs >= fixed_cs - 1e-12);
  }
}

TEST_CASE("run_scheme dispatch matches the direct schedulers") {
  ScenarioParams p = base();
  p.K = 2;
  const auto real = fixed_real({1.0, 2.5}, {0.9, 1.4}, 2.0, 0.3);
  TrialStream rng(5);
  CHECK(run_scheme(SchemeId::bu, p, real, rng).admitted_index ==
        schedule_bu(p, real, PowerRule::fixed).admitted_index);
  CHECK(run_scheme(SchemeId::cs_pc, p, real, rng).tx_power ==
        schedule_cs(p, real, PowerRule::pc).tx_power);
  TrialStream r1(9), r2(9);
  const auto via_dispatch = run_scheme(SchemeId::rs_fsic, p, real, r1);
  CHECK(via_dispatch.sic_stage == SicStage::first);
  CHECK(schedule_rs(p, real, r2, Decoding::fsic, PowerRule::fixed).gf_rate ==
        via_dispatch.gf_rate);
}

TEST_CASE("outage indicator compares against the GF target rate") {
  ScenarioParams p = base();
  SchedulingOutcome out;
  out.gf_rate = 0.9;
  CHECK(outage_indicator(out, p) == 0);  // equality is no outage
  out.gf_rate = 0.89999;
  CHECK(outage_indicator(out, p) == 1);
}

TEST_CASE("scheme names round-trip") {
  CHECK(scheme_name(SchemeId::bu) == "bu");
  CHECK(scheme_name(SchemeId::bu_pc) == "bu-pc");
  CHECK(scheme_name(SchemeId::rs_fsic) == "rs-fsic");
}
