#include "sgf/scenario.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sgf {

void ScenarioParams::validate() const {
  std::string issues;
  auto fail = [&issues](const char* msg) {
    if (!issues.empty()) issues += "; ";
    issues += msg;
  };

  if (!(alpha > 0)) fail("alpha must be > 0");
  if (K < 1) fail("K must be >= 1");
  if (!(D_0 > 0 && D_0 < D_1)) fail("need 0 < D_0 < D_1");
  if (!(D_F_inner >= 0 && D_F_inner <= D_F && D_F > 0))
    fail("need 0 <= D_F_inner <= D_F with D_F > 0");
  if (!(R_B > 0)) fail("R_B must be > 0");
  if (!(R_F > 0)) fail("R_F must be > 0");
  if (!(P_B > 0 && P_F > 0 && P_m > 0)) fail("all powers must be > 0");
  if (P_F > P_m * (1 + 1e-12)) fail("P_F must be <= P_m");
  if (P_B > P_m * (1 + 1e-12)) fail("P_B must be <= P_m");

  if (!issues.empty())
    throw std::invalid_argument("invalid scenario: " + issues);
}

DerivedThresholds DerivedThresholds::make(const ScenarioParams& p,
                                          PowerRule rule) {
  DerivedThresholds t;
  t.gamma_B = p.gamma_B();
  t.gamma_F = p.gamma_F();
  t.alpha_B = t.gamma_B / p.P_B;
  t.alpha_F = t.gamma_F / (rule == PowerRule::pc ? p.P_m : p.P_F);
  t.alpha_1 = t.alpha_B * (1.0 + t.gamma_F);
  const double product = t.gamma_B * t.gamma_F;
  t.alpha_2 = product < 1.0
                  ? t.alpha_1 / (1.0 - product)
                  : std::numeric_limits<double>::infinity();
  return t;
}

namespace {

// Inverse CDF of the radial density 2r/(R_out^2 - R_in^2) on [R_in, R_out].
double radial_draw(double u, double r_in, double r_out) {
  return std::sqrt(u * (r_out * r_out - r_in * r_in) + r_in * r_in);
}

}  // namespace

std::pair<double, std::vector<double>> sample_positions(
    const ScenarioParams& params, TrialStream& rng) {
  const double r_B = radial_draw(rng.next_uniform(), params.D_0, params.D_1);
  std::vector<double> r(static_cast<std::size_t>(params.K));
  for (double& rk : r)
    rk = radial_draw(rng.next_uniform(), params.D_F_inner, params.D_F);
  return {r_B, std::move(r)};
}

ChannelRealization sample_channels(const ScenarioParams& params, double r_B,
                                   const std::vector<double>& r,
                                   TrialStream& rng) {
  ChannelRealization real;
  real.r_B = r_B;
  real.r = r;
  real.g2 = rng.next_exponential() / (1.0 + std::pow(r_B, params.alpha));
  real.h2.resize(r.size());
  for (std::size_t k = 0; k < r.size(); ++k)
    real.h2[k] = rng.next_exponential() / (1.0 + std::pow(r[k], params.alpha));
  return real;
}

}  // namespace sgf
