#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "sgf/analytic.hpp"
#include "sgf/quadrature.hpp"

using namespace sgf;

namespace {
ScenarioParams at_snr(double snr_db, int K, double R_B = 1.0,
                      double R_F = 0.9) {
  ScenarioParams p;
  p.K = K;
  p.R_B = R_B;
  p.R_F = R_F;
  const double lin = std::pow(10.0, snr_db / 10.0);
  p.P_B = p.P_F = p.P_m = lin;
  return p;
}
}  // namespace

TEST_CASE("frozen regression values at 20 dB, K = 3") {
  const ScenarioParams p = at_snr(20.0, 3);
  const auto g = QuadratureGrid::make(p);
  CHECK(outage_bu(p, g) == doctest::Approx(0.004075322404).epsilon(1e-6));
  CHECK(outage_cs(p, g) == doctest::Approx(0.02358437214).epsilon(1e-6));
  CHECK(outage_bu_pc(p, g) == doctest::Approx(0.001885576983).epsilon(1e-6));
  CHECK(outage_cs_pc(p, g) == doctest::Approx(0.004278786031).epsilon(1e-6));
}

TEST_CASE("CDF-scheduling forms agree with the oracle to quadrature depth") {
  // The CS closed forms integrate the grid mixture exactly, so the only
  // difference from the oracle is the adaptive integrator tolerance.
  for (const double rb : {1.0, 1.5}) {
    for (const int K : {1, 2, 4}) {
      const ScenarioParams p = at_snr(20.0, K, rb);
      const auto g = QuadratureGrid::make(p);
      for (const auto scheme : {SchemeId::cs, SchemeId::cs_pc}) {
        const double closed = *analytic_outage(scheme, p, g);
        const double oracle = numeric_oracle(scheme, p, g);
        CHECK(closed == doctest::Approx(oracle).epsilon(1e-8));
      }
    }
  }
}

TEST_CASE("best-user forms agree with the oracle within outer quadrature") {
  // Order-10 Chebyshev-Gauss on the GB integrals carries ~1e-5 absolute
  // error at 25 dB and shrinks as O(order^-2); see the acceptance gate.
  for (const double rb : {1.0, 1.5}) {
    for (const int K : {2, 3}) {
      const ScenarioParams p = at_snr(25.0, K, rb);
      const auto g = QuadratureGrid::make(p);
      for (const auto scheme : {SchemeId::bu, SchemeId::bu_pc}) {
        const double closed = *analytic_outage(scheme, p, g);
        const double oracle = numeric_oracle(scheme, p, g);
        CHECK(std::abs(closed - oracle) < 1e-4);
      }
    }
  }
}

TEST_CASE("best-user at K = 1 reduces to the CDF-scheduling form") {
  const ScenarioParams p = at_snr(20.0, 1);
  const auto g = QuadratureGrid::make(p);
  CHECK(*analytic_outage(SchemeId::bu, p, g) == outage_cs(p, g));
  CHECK(*analytic_outage(SchemeId::bu_pc, p, g) == outage_cs_pc(p, g));
  CHECK_THROWS_AS(outage_bu(p, g), std::invalid_argument);
}

TEST_CASE("random selection evaluates the K = 1 law regardless of K") {
  const ScenarioParams p5 = at_snr(20.0, 5);
  const ScenarioParams p1 = at_snr(20.0, 1);
  const auto g5 = QuadratureGrid::make(p5);
  const auto g1 = QuadratureGrid::make(p1);
  CHECK(*analytic_outage(SchemeId::rs, p5, g5) ==
        *analytic_outage(SchemeId::cs, p1, g1));
  CHECK(*analytic_outage(SchemeId::rs_pc, p5, g5) ==
        *analytic_outage(SchemeId::cs_pc, p1, g1));
  CHECK(!analytic_outage(SchemeId::rs_fsic, p5, g5).has_value());
  CHECK_THROWS_AS(numeric_oracle(SchemeId::rs_fsic, p5, g5),
                  std::invalid_argument);
}

TEST_CASE("regime branches join continuously at unit rate product") {
  // gamma_B = 1 at R_B = 1, so the product crosses 1 exactly at R_F = 1.
  const double eps = 1e-9;
  const ScenarioParams sub = at_snr(15.0, 3, 1.0, 1.0 - eps);
  const ScenarioParams sup = at_snr(15.0, 3, 1.0, 1.0 + eps);
  const auto gsub = QuadratureGrid::make(sub);
  const auto gsup = QuadratureGrid::make(sup);
  CHECK(DerivedThresholds::make(sub).sub_unity());
  CHECK_FALSE(DerivedThresholds::make(sup).sub_unity());

  // The CS sub-unity form degrades gracefully: its alpha_2 terms vanish as
  // alpha_2 -> inf, leaving the super-unity expression.
  CHECK(outage_cs(sub, gsub) ==
        doctest::Approx(outage_cs(sup, gsup)).epsilon(1e-7));
  CHECK(outage_cs_pc(sub, gsub) ==
        doctest::Approx(outage_cs_pc(sup, gsup)).epsilon(1e-7));

  // The BU oracle caps its integration window, so it is continuous too.
  CHECK(numeric_oracle(SchemeId::bu, sub, gsub) ==
        doctest::Approx(numeric_oracle(SchemeId::bu, sup, gsup))
            .epsilon(1e-6));
}

TEST_CASE("high-SNR approximations approach the exact closed forms") {
  for (const auto scheme :
       {SchemeId::bu, SchemeId::cs, SchemeId::bu_pc, SchemeId::cs_pc}) {
    const ScenarioParams p = at_snr(55.0, 2);
    const auto g = QuadratureGrid::make(p);
    const double exact = *analytic_outage(scheme, p, g);
    const double approx = *analytic_high_snr(scheme, p, g);
    CHECK(approx == doctest::Approx(exact).epsilon(0.02));
  }
}

TEST_CASE("dominant terms carry the full high-SNR value at extreme power") {
  for (const auto scheme :
       {SchemeId::bu, SchemeId::cs, SchemeId::bu_pc, SchemeId::cs_pc}) {
    const ScenarioParams p = at_snr(65.0, 2);
    const auto g = QuadratureGrid::make(p);
    const double hs = *analytic_high_snr(scheme, p, g);
    const double dom = *analytic_dominant(scheme, p, g);
    CHECK(dom == doctest::Approx(hs).epsilon(0.05));
  }
  // Fixed-power CS in the super-unity regime tends to its floor term.
  const ScenarioParams p = at_snr(60.0, 2, 1.5);
  const auto g = QuadratureGrid::make(p);
  CHECK(*analytic_dominant(SchemeId::cs, p, g) ==
        doctest::Approx(*analytic_outage(SchemeId::cs, p, g)).epsilon(0.02));
}

TEST_CASE("diversity order table") {
  const ScenarioParams sub = at_snr(30.0, 4);        // product < 1
  const ScenarioParams sup = at_snr(30.0, 4, 1.5);   // product > 1
  CHECK(diversity_order(SchemeId::bu, sub) == 4);
  CHECK(diversity_order(SchemeId::cs, sub) == 4);
  CHECK(diversity_order(SchemeId::bu, sup) == 0);
  CHECK(diversity_order(SchemeId::cs, sup) == 0);
  CHECK(diversity_order(SchemeId::bu_pc, sub) == 4);
  CHECK(diversity_order(SchemeId::bu_pc, sup) == 4);
  CHECK(diversity_order(SchemeId::cs_pc, sup) == 4);
  CHECK(diversity_order(SchemeId::rs, sub) == 1);
  CHECK(diversity_order(SchemeId::rs, sup) == 0);
  CHECK(diversity_order(SchemeId::rs_pc, sub) == 1);
  CHECK(diversity_order(SchemeId::rs_pc, sup) == 1);
  CHECK(diversity_order(SchemeId::rs_fsic, sub) == 0);
}

TEST_CASE("multinomial tail is capped and guarded") {
  const ScenarioParams p = at_snr(20.0, 7, 1.5);  // super-unity, K = 7
  const auto g = QuadratureGrid::make(p);
  CHECK_THROWS_AS(outage_bu(p, g), std::invalid_argument);
  // Sub-unity K = 7 avoids the multinomial branch entirely.
  const ScenarioParams ok = at_snr(20.0, 7);
  const auto gok = QuadratureGrid::make(ok);
  CHECK(outage_bu(ok, gok) > 0.0);
}

TEST_CASE("oracle report converges at defaults") {
  const ScenarioParams p = at_snr(20.0, 3);
  const auto g = QuadratureGrid::make(p);
  OracleReport rep;
  const double v = numeric_oracle(SchemeId::bu, p, g, &rep);
  CHECK(v > 0.0);
  CHECK(rep.converged);
  CHECK(rep.err_estimate < 1e-9);
}

TEST_CASE("outage probabilities are monotone in SNR and K") {
  for (const auto scheme : {SchemeId::cs, SchemeId::cs_pc}) {
    double prev = 1.0;
    for (const double snr : {5.0, 15.0, 25.0, 35.0}) {
      const ScenarioParams p = at_snr(snr, 3);
      const auto g = QuadratureGrid::make(p);
      const double v = *analytic_outage(scheme, p, g);
      CHECK(v < prev);
      prev = v;
    }
  }
  double prev = 1.0;
  for (const int K : {1, 2, 3, 4, 5}) {
    const ScenarioParams p = at_snr(20.0, K);
    const auto g = QuadratureGrid::make(p);
    const double v = *analytic_outage(SchemeId::cs, p, g);
    CHECK(v < prev);
    prev = v;
  }
}
