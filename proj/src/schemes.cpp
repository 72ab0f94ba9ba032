#include "sgf/schemes.hpp"

#include <cmath>
#include <stdexcept>

namespace sgf {

std::string_view scheme_name(SchemeId s) {
  switch (s) {
    case SchemeId::bu: return "bu";
    case SchemeId::cs: return "cs";
    case SchemeId::rs: return "rs";
    case SchemeId::bu_pc: return "bu-pc";
    case SchemeId::cs_pc: return "cs-pc";
    case SchemeId::rs_pc: return "rs-pc";
    case SchemeId::rs_fsic: return "rs-fsic";
  }
  throw std::logic_error("unknown scheme");
}

double decoding_threshold(const ScenarioParams& params, double g2) {
  const double tau0 = params.P_B * g2 / params.gamma_B() - 1.0;
  return tau0 > 0.0 ? tau0 : 0.0;
}

std::pair<double, SicStage> achievable_rate_hsic(const ScenarioParams& params,
                                                 double h2, double tx_power,
                                                 double g2, double tau0) {
  const double received = tx_power * h2;
  if (received > tau0)
    return {std::log2(1.0 + received / (params.P_B * g2 + 1.0)),
            SicStage::first};
  return {std::log2(1.0 + received), SicStage::second};
}

double power_control(const ScenarioParams& params, double h2, double g2,
                     double tau0) {
  if (tau0 <= 0.0 || h2 <= 0.0) return params.P_m;
  const double lo = tau0 / params.P_m;
  const double hi = tau0 * (1.0 + params.P_B * g2) / params.P_m;
  return (lo < h2 && h2 < hi) ? tau0 / h2 : params.P_m;
}

namespace {

struct UserRate {
  double tx;
  double rate;
  SicStage stage;
};

// Rate of one user under the given power rule. Controlled power tau0/h2 pins
// the received power at the decoding threshold, where the signal is decoded
// after the GB user; the rate is computed from tau0 directly because the
// round trip (tau0/h2)*h2 can land an ulp above tau0 and spill into the
// interfered branch.
UserRate rate_under_rule(const ScenarioParams& params, double h2, double g2,
                         double tau0, PowerRule rule) {
  const double tx = rule == PowerRule::pc
                        ? power_control(params, h2, g2, tau0)
                        : params.P_F;
  if (rule == PowerRule::pc && tx != params.P_m)
    return {tx, std::log2(1.0 + tau0), SicStage::second};
  const auto [rate, stage] = achievable_rate_hsic(params, h2, tx, g2, tau0);
  return {tx, rate, stage};
}

SchedulingOutcome finish(const ScenarioParams& params,
                         const ChannelRealization& real, int admitted,
                         PowerRule rule, Decoding decoding, double tau0) {
  SchedulingOutcome out;
  out.admitted_index = admitted;
  out.tau0 = tau0;
  out.gb_rate = std::log2(1.0 + params.P_B * real.g2);
  const double h2 = real.h2[static_cast<std::size_t>(admitted)];
  if (decoding == Decoding::fsic) {
    // Benchmark: GF always decoded first, under full GB interference.
    out.tx_power = params.P_F;
    out.sic_stage = SicStage::first;
    out.gf_rate = std::log2(
        1.0 + out.tx_power * h2 / (params.P_B * real.g2 + 1.0));
    return out;
  }
  const UserRate ur = rate_under_rule(params, h2, real.g2, tau0, rule);
  out.tx_power = ur.tx;
  out.gf_rate = ur.rate;
  out.sic_stage = ur.stage;
  return out;
}

}  // namespace

SchedulingOutcome schedule_bu(const ScenarioParams& params,
                              const ChannelRealization& real, PowerRule rule) {
  const double tau0 = decoding_threshold(params, real.g2);
  int best = 0;
  double best_rate = -1.0;
  for (int k = 0; k < params.K; ++k) {
    const double h2 = real.h2[static_cast<std::size_t>(k)];
    const double rate = rate_under_rule(params, h2, real.g2, tau0, rule).rate;
    if (rate > best_rate) {
      best_rate = rate;
      best = k;
    }
  }
  return finish(params, real, best, rule, Decoding::hsic, tau0);
}

SchedulingOutcome schedule_cs(const ScenarioParams& params,
                              const ChannelRealization& real, PowerRule rule) {
  const double tau0 = decoding_threshold(params, real.g2);
  int best = 0;
  double best_score = -1.0;
  for (int k = 0; k < params.K; ++k) {
    // Conditional CDF value of the user's own gain: uniform on (0,1), so every
    // user is admitted with probability 1/K regardless of distance.
    const double score =
        -std::expm1(-(1.0 + std::pow(real.r[static_cast<std::size_t>(k)],
                                     params.alpha)) *
                    real.h2[static_cast<std::size_t>(k)]);
    if (score > best_score) {
      best_score = score;
      best = k;
    }
  }
  return finish(params, real, best, rule, Decoding::hsic, tau0);
}

SchedulingOutcome schedule_rs(const ScenarioParams& params,
                              const ChannelRealization& real, TrialStream& rng,
                              Decoding decoding, PowerRule rule) {
  const double tau0 = decoding_threshold(params, real.g2);
  const int admitted =
      static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(params.K));
  if (decoding == Decoding::fsic) rule = PowerRule::fixed;
  return finish(params, real, admitted, rule, decoding, tau0);
}

SchedulingOutcome run_scheme(SchemeId scheme, const ScenarioParams& params,
                             const ChannelRealization& real,
                             TrialStream& rng) {
  switch (scheme) {
    case SchemeId::bu: return schedule_bu(params, real, PowerRule::fixed);
    case SchemeId::bu_pc: return schedule_bu(params, real, PowerRule::pc);
    case SchemeId::cs: return schedule_cs(params, real, PowerRule::fixed);
    case SchemeId::cs_pc: return schedule_cs(params, real, PowerRule::pc);
    case SchemeId::rs:
      return schedule_rs(params, real, rng, Decoding::hsic, PowerRule::fixed);
    case SchemeId::rs_pc:
      return schedule_rs(params, real, rng, Decoding::hsic, PowerRule::pc);
    case SchemeId::rs_fsic:
      return schedule_rs(params, real, rng, Decoding::fsic, PowerRule::fixed);
  }
  throw std::logic_error("unknown scheme");
}

int outage_indicator(const SchedulingOutcome& outcome,
                     const ScenarioParams& params) {
  return outcome.gf_rate < params.R_F ? 1 : 0;
}

}  // namespace sgf
