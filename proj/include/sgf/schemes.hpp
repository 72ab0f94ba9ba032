// Scheduling schemes and hybrid-SIC decoding.
//
// The base station broadcasts tau_0 = max{0, P_B|g|^2/gamma_B - 1}: the largest
// GF interference under which the GB signal still decodes first. A GF user
// whose received power exceeds tau_0 is decoded at the first SIC stage (under
// GB interference); otherwise at the second stage (interference-free, after
// the GB signal is removed). Either way the GB user achieves its orthogonal
// rate log2(1 + P_B|g|^2).

#ifndef SGF_SCHEMES_HPP
#define SGF_SCHEMES_HPP

#include <string_view>
#include <utility>

#include "sgf/scenario.hpp"

namespace sgf {

enum class SchemeId { bu, cs, rs, bu_pc, cs_pc, rs_pc, rs_fsic };

enum class SicStage { first, second };

// SIC ordering rule: hybrid (threshold-driven, above) or the fixed-order
// benchmark where the GF signal is always decoded first.
enum class Decoding { hsic, fsic };

constexpr PowerRule scheme_power_rule(SchemeId s) {
  return (s == SchemeId::bu_pc || s == SchemeId::cs_pc || s == SchemeId::rs_pc)
             ? PowerRule::pc
             : PowerRule::fixed;
}

constexpr bool scheme_is_hsic(SchemeId s) { return s != SchemeId::rs_fsic; }

std::string_view scheme_name(SchemeId s);

struct SchedulingOutcome {
  int admitted_index = 0;  // 0-based GF user identity
  double tx_power = 0;     // admitted user's transmit power, linear
  SicStage sic_stage = SicStage::first;
  double gf_rate = 0;  // admitted user's achieved rate, BPCU
  double gb_rate = 0;  // GB user's achieved rate, BPCU
  double tau0 = 0;     // decoding threshold of this trial
};

// tau_0 = max{0, P_B g2 / gamma_B - 1}.
double decoding_threshold(const ScenarioParams& params, double g2);

// Rate and SIC stage for one GF user under hybrid SIC. The tie
// tx_power*h2 == tau0 resolves to the second stage.
std::pair<double, SicStage> achievable_rate_hsic(const ScenarioParams& params,
                                                 double h2, double tx_power,
                                                 double g2, double tau0);

// Per-user rate-maximizing transmit power: tau0/h2 inside the window
// (tau0/P_m, tau0 (1 + P_B g2)/P_m), P_m otherwise (including tau0 == 0 or
// h2 == 0, where the window is empty).
double power_control(const ScenarioParams& params, double h2, double g2,
                     double tau0);

// Admit the GF user with the maximal achievable rate; ties break to the
// lowest index.
SchedulingOutcome schedule_bu(const ScenarioParams& params,
                              const ChannelRealization& real, PowerRule rule);

// Admit the GF user whose gain has the largest CDF value under its own
// distance-conditioned distribution (equal admission probability for all).
SchedulingOutcome schedule_cs(const ScenarioParams& params,
                              const ChannelRealization& real, PowerRule rule);

// Admit a uniformly random GF user; decode with hybrid SIC or the fixed-order
// benchmark. The benchmark has no power-control variant.
SchedulingOutcome schedule_rs(const ScenarioParams& params,
                              const ChannelRealization& real, TrialStream& rng,
                              Decoding decoding, PowerRule rule);

// Dispatch on SchemeId; rng is consumed only by the random-selection schemes.
SchedulingOutcome run_scheme(SchemeId scheme, const ScenarioParams& params,
                             const ChannelRealization& real, TrialStream& rng);

// 1 iff the admitted user's rate falls strictly below its target R_F.
int outage_indicator(const SchedulingOutcome& outcome,
                     const ScenarioParams& params);

}  // namespace sgf

#endif  // SGF_SCHEMES_HPP
