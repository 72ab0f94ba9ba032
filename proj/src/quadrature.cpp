#include "sgf/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sgf {

namespace {

double clamp01(double v) {
  if (v < 0.0 || v > 1.0) {
    clamp_event_count().fetch_add(1, std::memory_order_relaxed);
    return v < 0.0 ? 0.0 : 1.0;
  }
  return v;
}

void require_nonnegative(double x, const char* what) {
  if (x < 0.0 || std::isnan(x))
    throw std::domain_error(std::string(what) + " requires a nonnegative gain");
}

}  // namespace

std::atomic<std::uint64_t>& clamp_event_count() {
  static std::atomic<std::uint64_t> count{0};
  return count;
}

QuadratureGrid QuadratureGrid::make(const ScenarioParams& params, int L, int N,
                                    int I, int J, int M) {
  if (L < 1 || N < 1 || I < 1 || J < 1 || M < 1)
    throw std::invalid_argument("quadrature orders must be >= 1");

  QuadratureGrid g;
  g.L = L;
  g.N = N;
  g.I = I;
  g.J = J;
  g.M = M;
  g.D_0 = params.D_0;
  g.D_1 = params.D_1;

  using std::numbers::pi;

  g.Psi.resize(L);
  g.mu.resize(L);
  const double r_in = params.D_F_inner, r_out = params.D_F;
  if (r_in == r_out) {
    // Degenerate annulus: every GF user sits at the same distance, so the CDF
    // is a single exponential. Uniform weights keep the mixture exact.
    g.Psi.setConstant(2.0 / L);
    g.mu.setConstant(1.0 + std::pow(r_out, params.alpha));
  } else {
    for (int l = 1; l <= L; ++l) {
      const double psi = std::cos((2.0 * l - 1.0) / (2.0 * L) * pi);
      const double r = 0.5 * (r_out + r_in) + 0.5 * (r_out - r_in) * psi;
      g.mu[l - 1] = 1.0 + std::pow(r, params.alpha);
      g.Psi[l - 1] =
          2.0 * pi / (L * (r_out + r_in)) * std::sqrt(1.0 - psi * psi) * r;
    }
  }

  g.Psi_ext.resize(L + 1);
  g.mu_ext.resize(L + 1);
  g.Psi_ext[0] = -2.0;
  g.mu_ext[0] = 0.0;
  g.Psi_ext.tail(L) = g.Psi;
  g.mu_ext.tail(L) = g.mu;

  g.Phi.resize(N);
  g.c.resize(N);
  for (int n = 1; n <= N; ++n) {
    const double varphi = std::cos((2.0 * n - 1.0) / (2.0 * N) * pi);
    const double node =
        0.5 * (params.D_1 + params.D_0) + 0.5 * (params.D_1 - params.D_0) * varphi;
    g.Phi[n - 1] = pi / N * std::sqrt(1.0 - varphi * varphi) * node;
    g.c[n - 1] = 1.0 + std::pow(node, params.alpha);
  }

  g.S_F = 0.5 * (g.Psi * g.mu).sum();
  g.S_B = g.gb_norm() * (g.Phi * g.c).sum();
  return g;
}

namespace detail {

double ff_raw(const QuadratureGrid& grid, double x) {
  // (1/2) sum_l Psi_l (1 - e^{-mu_l x}), exact at 0 and for small x.
  return 0.5 * (grid.Psi * (-(-grid.mu * x).exp() + 1.0)).sum();
}

double fb_raw(const QuadratureGrid& grid, double y) {
  return grid.gb_norm() * (grid.Phi * (-(-grid.c * y).exp() + 1.0)).sum();
}

double cs_raw(const QuadratureGrid& grid, double x, int K) {
  return 0.5 * (grid.Psi * (-(-grid.mu * x).exp() + 1.0).pow(K)).sum();
}

double gb_survival(const QuadratureGrid& grid, double y) {
  return grid.gb_norm() * (grid.Phi * (-grid.c * y).exp()).sum();
}

double ff_diff(const QuadratureGrid& grid, double hi, double lo) {
  // (1/2) sum_l Psi_l e^{-mu_l lo} (1 - e^{-mu_l (hi-lo)}): cancellation-free
  // for hi >= lo >= 0.
  const double d = hi - lo;
  return 0.5 *
         (grid.Psi * (-grid.mu * lo).exp() * (-(-grid.mu * d).exp() + 1.0))
             .sum();
}

double ff_pdf(const QuadratureGrid& grid, double x) {
  return 0.5 * (grid.Psi * grid.mu * (-grid.mu * x).exp()).sum();
}

}  // namespace detail

double cdf_gf_unordered(const QuadratureGrid& grid, double x) {
  require_nonnegative(x, "cdf_gf_unordered");
  return clamp01(detail::ff_raw(grid, x));
}

double cdf_gb(const QuadratureGrid& grid, double y) {
  require_nonnegative(y, "cdf_gb");
  return clamp01(detail::fb_raw(grid, y));
}

double pdf_gb(const QuadratureGrid& grid, double y) {
  require_nonnegative(y, "pdf_gb");
  const double v = grid.gb_norm() * (grid.Phi * grid.c * (-grid.c * y).exp()).sum();
  return v < 0.0 ? 0.0 : v;
}

double cdf_cs_scheduled(const QuadratureGrid& grid, double x, int K) {
  require_nonnegative(x, "cdf_cs_scheduled");
  if (K < 1) throw std::domain_error("cdf_cs_scheduled requires K >= 1");
  return clamp01(detail::cs_raw(grid, x, K));
}

double conditional_cdf_gf(double r, double alpha, double x) {
  require_nonnegative(x, "conditional_cdf_gf");
  return -std::expm1(-(1.0 + std::pow(r, alpha)) * x);
}

}  // namespace sgf
