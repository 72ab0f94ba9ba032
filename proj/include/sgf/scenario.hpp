// Scenario description for the semi-grant-free uplink: one grant-based (GB)
// user in the ring [D_0, D_1], K grant-free (GF) users in the annulus
// [D_F_inner, D_F], Rayleigh fading over distance-dependent path loss, unit
// noise power (so linear transmit power equals SNR).

#ifndef SGF_SCENARIO_HPP
#define SGF_SCENARIO_HPP

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "sgf/rng.hpp"

namespace sgf {

// Power rule used by a scheduling scheme: fixed transmit power P_F, or the
// per-user power-control strategy bounded by P_m.
enum class PowerRule { fixed, pc };

struct ScenarioParams {
  double alpha = 3.0;      // path-loss exponent, > 0
  int K = 4;               // number of GF users, >= 1
  double D_F = 3.0;        // outer radius of the GF region, m
  double D_F_inner = 0.0;  // inner radius of the GF region (== D_F pins all GF
                           // users to a fixed distance), m
  double D_0 = 1.0;        // inner radius of the GB ring, m
  double D_1 = 3.0;        // outer radius of the GB ring, m
  double R_B = 1.0;        // GB target rate, bits per channel use
  double R_F = 0.9;        // GF target rate, bits per channel use
  double P_B = 100.0;      // GB transmit power, linear (noise power 1)
  double P_F = 100.0;      // GF fixed transmit power, linear
  double P_m = 100.0;      // maximal transmit power of every user, linear

  double gamma_B() const { return std::exp2(R_B) - 1.0; }
  double gamma_F() const { return std::exp2(R_F) - 1.0; }

  // Throws std::invalid_argument listing every violated constraint.
  void validate() const;
};

// Target-gain thresholds derived from a scenario. alpha_2 is +infinity when
// gamma_B * gamma_F >= 1 (the constraint it encodes is then vacuous).
struct DerivedThresholds {
  double gamma_B = 0;
  double gamma_F = 0;
  double alpha_B = 0;  // gamma_B / P_B
  double alpha_F = 0;  // gamma_F / P_F (gamma_F / P_m under power control)
  double alpha_1 = 0;  // alpha_B (1 + gamma_F)
  double alpha_2 = 0;  // alpha_B (1 + gamma_F) / (1 - gamma_B gamma_F), or +inf

  bool sub_unity() const { return gamma_B * gamma_F < 1.0; }

  static DerivedThresholds make(const ScenarioParams& p,
                                PowerRule rule = PowerRule::fixed);
};

// One draw of geometry and fading. Index k is the user's identity; gains are
// unsorted. |h_k|^2 = |zeta_k|^2 / (1 + r_k^alpha) with |zeta|^2 ~ Exp(1).
struct ChannelRealization {
  double r_B = 0;          // GB distance, m
  std::vector<double> r;   // K GF distances, m
  double g2 = 0;           // GB composite gain |g|^2
  std::vector<double> h2;  // K GF composite gains |h_k|^2
};

// Inverse-CDF draws from the radial densities 2r/(R_out^2 - R_in^2):
// r = sqrt(u (R_out^2 - R_in^2) + R_in^2).
std::pair<double, std::vector<double>> sample_positions(
    const ScenarioParams& params, TrialStream& rng);

ChannelRealization sample_channels(const ScenarioParams& params, double r_B,
                                   const std::vector<double>& r,
                                   TrialStream& rng);

}  // namespace sgf

#endif  // SGF_SCENARIO_HPP
