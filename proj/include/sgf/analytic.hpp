// Closed-form outage evaluators for the admitted GF user, their high-SNR
// expansions, dominant terms, and diversity orders.
//
// Regimes split on the product gamma_B * gamma_F: below 1 the fixed-power
// schemes keep full diversity K; at or above 1 they hit an error floor, which
// the power-control variants remove. The power-control forms substitute
// P_F -> P_m and have no regime split.

#ifndef SGF_ANALYTIC_HPP
#define SGF_ANALYTIC_HPP

#include <optional>

#include "sgf/quadrature.hpp"
#include "sgf/scenario.hpp"
#include "sgf/schemes.hpp"

namespace sgf {

// Best-user scheduling, fixed power. Requires K >= 2 (K == 1 coincides with
// the single-user case served by outage_cs; use analytic_outage to route).
// The gamma_B*gamma_F >= 1 branch enumerates multinomial tails over the grid
// and is limited to K <= 6.
double outage_bu(const ScenarioParams& params, const QuadratureGrid& grid);

// CDF-based scheduling, fixed power. K >= 1; at K == 1 this is also the
// random-selection outage.
double outage_cs(const ScenarioParams& params, const QuadratureGrid& grid);

// Power-control variants. outage_bu_pc requires K >= 2.
double outage_bu_pc(const ScenarioParams& params, const QuadratureGrid& grid);
double outage_cs_pc(const ScenarioParams& params, const QuadratureGrid& grid);

// High-SNR expansions (valid for joint power P_B = P_F = P_m large).
double high_snr_bu(const ScenarioParams& params, const QuadratureGrid& grid);
double high_snr_cs(const ScenarioParams& params, const QuadratureGrid& grid);
double high_snr_bu_pc(const ScenarioParams& params, const QuadratureGrid& grid);
double high_snr_cs_pc(const ScenarioParams& params, const QuadratureGrid& grid);

// Dominant (leading-order) terms: the K-th-power decay term below the regime
// boundary and for the power-control schemes, the constant floor otherwise.
double dominant_bu(const ScenarioParams& params, const QuadratureGrid& grid);
double dominant_cs(const ScenarioParams& params, const QuadratureGrid& grid);
double dominant_bu_pc(const ScenarioParams& params, const QuadratureGrid& grid);
double dominant_cs_pc(const ScenarioParams& params, const QuadratureGrid& grid);

// K for power-control schemes; K below the regime boundary and 0 at or above
// it for fixed power. Random selection behaves as the single-user case.
int diversity_order(SchemeId scheme, const ScenarioParams& params);

// Scheme-level routing: K == 1 best-user and all random-selection variants
// evaluate through the CDF-scheduling forms with K = 1 (identical admitted-
// gain distribution). The fixed-order benchmark has no closed form.
std::optional<double> analytic_outage(SchemeId scheme,
                                      const ScenarioParams& params,
                                      const QuadratureGrid& grid);
std::optional<double> analytic_high_snr(SchemeId scheme,
                                        const ScenarioParams& params,
                                        const QuadratureGrid& grid);
std::optional<double> analytic_dominant(SchemeId scheme,
                                        const ScenarioParams& params,
                                        const QuadratureGrid& grid);

struct OracleReport {
  double err_estimate = 0;  // accumulated absolute-error estimate
  bool converged = true;
};

// Adaptive numeric integration of the pre-closed-form outage integrals, built
// from the same grid mixtures the closed forms encode. Validates the algebra
// (multinomial tails, exponential-integral combination) independent of the
// outer quadrature. Supports every scheme with a closed form.
double numeric_oracle(SchemeId scheme, const ScenarioParams& params,
                      const QuadratureGrid& grid,
                      OracleReport* report = nullptr);

}  // namespace sgf

#endif  // SGF_ANALYTIC_HPP
