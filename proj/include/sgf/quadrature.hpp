// Gauss-Chebyshev quadrature grids for the region-averaged channel-gain
// statistics, and the CDF/pdf building blocks every evaluator consumes.
//
// GF region (annulus [D_F_inner, D_F], order L):
//   F_F(x) ~= (1/2) sum_l Psi_l (1 - e^{-mu_l x})
// GB ring ([D_0, D_1], order N):
//   F_B(y) ~= (1/(D_1+D_0)) sum_n Phi_n (1 - e^{-c_n y})
//   f_B(y) ~= (1/(D_1+D_0)) sum_n Phi_n c_n e^{-c_n y}
// The grid also carries the extended index l = 0 (Psi_0 = -2, mu_0 = 0) used
// by the multinomial tail terms, and the low-argument slopes S_F, S_B.

#ifndef SGF_QUADRATURE_HPP
#define SGF_QUADRATURE_HPP

#include <Eigen/Dense>
#include <atomic>
#include <cstdint>

#include "sgf/scenario.hpp"

namespace sgf {

struct QuadratureGrid {
  int L = 10, N = 10;          // CDF/pdf mixture orders
  int I = 10, J = 10, M = 10;  // outer-integral orders of the closed forms

  Eigen::ArrayXd Psi, mu;          // GF weights/exponents, size L
  Eigen::ArrayXd Psi_ext, mu_ext;  // same with the extended index 0 prepended
  Eigen::ArrayXd Phi, c;           // GB weights/exponents, size N

  double S_F = 0;  // (1/2) sum_l Psi_l mu_l
  double S_B = 0;  // (1/(D_0+D_1)) sum_n Phi_n c_n

  double D_0 = 0, D_1 = 0;  // kept for the 1/(D_0+D_1) normalization

  double gb_norm() const { return 1.0 / (D_0 + D_1); }

  static QuadratureGrid make(const ScenarioParams& params, int L = 10,
                             int N = 10, int I = 10, int J = 10, int M = 10);
};

// Count of CDF evaluations clamped back into [0, 1] (quadrature values can
// slightly overshoot at finite order). Diagnostic only.
std::atomic<std::uint64_t>& clamp_event_count();

// Unordered GF gain CDF via the grid, clamped to [0, 1]. x < 0 is a domain
// error.
double cdf_gf_unordered(const QuadratureGrid& grid, double x);

// GB gain CDF / pdf via the grid. y < 0 is a domain error.
double cdf_gb(const QuadratureGrid& grid, double y);
double pdf_gb(const QuadratureGrid& grid, double y);

// CDF of the gain of the GF user admitted by CDF-based scheduling among K
// i.i.d. users: (1/2) sum_l Psi_l (1 - e^{-mu_l x})^K, clamped to [0, 1].
double cdf_cs_scheduled(const QuadratureGrid& grid, double x, int K);

// Per-user distance-conditioned gain CDF, 1 - e^{-(1+r^alpha) x}; the statistic
// the CDF-based scheduler ranks. Exact, no quadrature.
double conditional_cdf_gf(double r, double alpha, double x);

namespace detail {

// Unclamped mixture forms used inside the analytic evaluators and oracles.
// Increasing-CDF factors use the printed form (exact at 0, expm1-accurate at
// small arguments); complements 1 - F_B use the survival mixture, which is
// positive everywhere. Differences are evaluated cancellation-free.
double ff_raw(const QuadratureGrid& grid, double x);
double fb_raw(const QuadratureGrid& grid, double y);
double cs_raw(const QuadratureGrid& grid, double x, int K);
double gb_survival(const QuadratureGrid& grid, double y);        // 1 - F_B(y)
double ff_diff(const QuadratureGrid& grid, double hi, double lo);  // F_F(hi)-F_F(lo), hi >= lo
double ff_pdf(const QuadratureGrid& grid, double x);  // d/dx of the GF CDF

}  // namespace detail

}  // namespace sgf

#endif  // SGF_QUADRATURE_HPP
