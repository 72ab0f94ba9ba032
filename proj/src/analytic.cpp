#include "sgf/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "sgf/integrate.hpp"

namespace sgf {

namespace {

double ipow(double x, int n) {
  double r = 1.0;
  while (n-- > 0) r *= x;
  return r;
}

double binom(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double fb_pdf(const QuadratureGrid& g, double y) {
  return g.gb_norm() * (g.Phi * g.c * (-g.c * y).exp()).sum();
}

struct ChebNode {
  double x, w;
};

std::vector<ChebNode> cheb_nodes(int n, double a, double b) {
  using std::numbers::pi;
  std::vector<ChebNode> out(static_cast<std::size_t>(n));
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  for (int i = 1; i <= n; ++i) {
    const double t = std::cos((2.0 * i - 1.0) / (2.0 * n) * pi);
    out[static_cast<std::size_t>(i - 1)] = {
        mid + half * t, half * (pi / n) * std::sqrt(1.0 - t * t)};
  }
  return out;
}

// One multinomial composition of s over the extended index l = 0..L, reduced
// to what the tail terms consume: coef = s!/prod(p_l!) * prod(Psi_l^{p_l}) and
// S = sum_l p_l mu_l.
struct CompTerm {
  double coef, S;
};

void enumerate_comps(const Eigen::ArrayXd& Psi, const Eigen::ArrayXd& mu,
                     int slot, int remaining, double coef, double S,
                     const double* fact, std::vector<CompTerm>& out) {
  if (slot + 1 == Psi.size()) {
    out.push_back({coef * ipow(Psi[slot], remaining) / fact[remaining],
                   S + remaining * mu[slot]});
    return;
  }
  double c = coef;
  for (int p = 0; p <= remaining; ++p) {
    enumerate_comps(Psi, mu, slot + 1, remaining - p, c, S + p * mu[slot], fact,
                    out);
    c *= Psi[slot] / (p + 1.0);
  }
}

std::vector<std::vector<CompTerm>> comp_lists(const QuadratureGrid& g,
                                              int max_s) {
  double fact[16];
  fact[0] = 1.0;
  for (int i = 1; i < 16; ++i) fact[i] = fact[i - 1] * i;
  std::vector<std::vector<CompTerm>> lists(static_cast<std::size_t>(max_s + 1));
  for (int s = 0; s <= max_s; ++s)
    enumerate_comps(g.Psi_ext, g.mu_ext, 0, s, fact[s], 0.0, fact,
                    lists[static_cast<std::size_t>(s)]);
  return lists;
}

// Tail terms of the best-user form when the target-rate product is at or
// above 1: the [alpha_1, inf) integral expanded over the extended index, every
// evaluated exponent <= 0 by pre-combining the exponential arguments.
double bu_tail_sum(const ScenarioParams& params, const QuadratureGrid& grid,
                   const DerivedThresholds& thr, double p_gf) {
  const int K = params.K;
  const double a_f = thr.gamma_F / p_gf;
  const auto comps = comp_lists(grid, K);
  Eigen::ArrayXd en = grid.Phi * grid.c * (-grid.c * thr.alpha_1).exp();
  const double f_af_k = detail::ff_raw(grid, a_f);
  double total = 0.0;
  for (int k = 0; k <= K; ++k) {
    const double pref = binom(K, k) * ipow(-0.5, K - k) * ipow(f_af_k, k) *
                        grid.gb_norm();
    double inner = 0.0;
    for (int m = 0; m <= K - k; ++m) {
      const double bm = binom(K - k, m) * ((m % 2) ? -1.0 : 1.0);
      for (const auto& [cp, Sp] : comps[static_cast<std::size_t>(K - k - m)]) {
        const double Ap = Sp * a_f * params.P_B;
        const double Ep = -Sp * a_f * (1.0 + params.P_B * thr.alpha_1);
        for (const auto& [cq, Sq] : comps[static_cast<std::size_t>(m)]) {
          const double A = Ap + Sq / (p_gf * thr.alpha_B);
          const double e = std::exp(Ep - Sq * a_f);
          double nsum = 0.0;
          for (int n = 0; n < grid.N; ++n) nsum += en[n] / (A + grid.c[n]);
          inner += bm * cp * cq * e * nsum;
        }
      }
    }
    total += pref * inner;
  }
  return total;
}

// Shared body of the best-user forms; p_gf is the GF power entering the
// per-user thresholds (P_F fixed, P_m under power control).
double bu_closed_form(const ScenarioParams& params, const QuadratureGrid& grid,
                      PowerRule rule) {
  const int K = params.K;
  if (K < 2) throw std::invalid_argument("best-user closed form requires K >= 2");
  const auto thr = DerivedThresholds::make(params, rule);
  const double p_gf = rule == PowerRule::pc ? params.P_m : params.P_F;
  const bool pc = rule == PowerRule::pc;

  std::vector<double> G1(static_cast<std::size_t>(K + 1), 0.0);
  for (const auto& node : cheb_nodes(grid.I, thr.alpha_B, thr.alpha_1)) {
    const double fb = fb_pdf(grid, node.x);
    const double thr_x = (node.x / thr.alpha_B - 1.0) / p_gf;
    const double up_x = thr.alpha_F * (params.P_B * node.x + 1.0);
    const double f_thr = detail::ff_raw(grid, thr_x);
    const double diff = detail::ff_diff(grid, up_x, thr_x);
    for (int k = 0; k <= K; ++k)
      G1[static_cast<std::size_t>(k)] +=
          node.w * fb * ipow(f_thr, k) * ipow(diff, K - k);
  }
  double g1_sum = 0.0;
  for (int k = 0; k <= K; ++k)
    g1_sum += binom(K, k) * G1[static_cast<std::size_t>(k)];

  double g3 = 0.0;
  for (const auto& node : cheb_nodes(grid.M, 0.0, thr.alpha_B))
    g3 += node.w * fb_pdf(grid, node.x) *
          ipow(detail::ff_raw(grid,
                              thr.alpha_F * (params.P_B * node.x + 1.0)),
               K);

  const double f_af = detail::ff_raw(grid, thr.alpha_F);
  if (pc) {
    const double i5 = detail::gb_survival(grid, thr.alpha_1) * ipow(f_af, K);
    return g1_sum + g3 + i5;
  }
  if (thr.sub_unity()) {
    double g2_sum = 0.0;
    for (const auto& node : cheb_nodes(grid.J, thr.alpha_1, thr.alpha_2)) {
      const double fb = fb_pdf(grid, node.x);
      const double thr_x = (node.x / thr.alpha_B - 1.0) / p_gf;
      const double up_x = thr.alpha_F * (params.P_B * node.x + 1.0);
      const double diff = detail::ff_diff(grid, up_x, thr_x);
      for (int k = 0; k <= K; ++k)
        g2_sum += binom(K, k) * node.w * fb * ipow(f_af, k) * ipow(diff, K - k);
    }
    const double i4 = detail::gb_survival(grid, thr.alpha_2) * ipow(f_af, K);
    return g1_sum + g2_sum + g3 + i4;
  }
  if (K > 6)
    throw std::invalid_argument(
        "best-user closed form with target-rate product >= 1 is limited to "
        "K <= 6");
  return g1_sum + bu_tail_sum(params, grid, thr, p_gf) + g3;
}

// Shared body of the CDF-scheduling forms.
double cs_closed_form(const ScenarioParams& params, const QuadratureGrid& grid,
                      PowerRule rule) {
  const int K = params.K;
  if (K < 1)
    throw std::invalid_argument("CDF-scheduling closed form requires K >= 1");
  const auto thr = DerivedThresholds::make(params, rule);
  const double gb_n = grid.gb_norm();
  const bool pc = rule == PowerRule::pc;
  double acc = 0.0;
  for (int k = 0; k <= K; ++k) {
    const double bk = binom(K, k) * ((k % 2) ? -1.0 : 1.0);
    for (int l = 0; l < grid.L; ++l) {
      const double mul = grid.mu[l];
      const double w_l = 0.5 * grid.Psi[l];
      const double e_kaf = std::exp(-k * mul * thr.alpha_F);
      for (int n = 0; n < grid.N; ++n) {
        const double cn = grid.c[n];
        const double th1 = k * mul * params.P_B * thr.alpha_F + cn;
        double t = 0.0;
        if (pc) {
          t = e_kaf * (-std::expm1(-th1 * thr.alpha_1)) / th1;
        } else {
          const double th2 = k * mul / (params.P_F * thr.alpha_B) + cn;
          const double a1 = -k * mul * thr.alpha_F - cn * thr.alpha_1;
          if (thr.sub_unity()) {
            const double a2 = -k * mul * thr.alpha_F * (1.0 + thr.gamma_B) /
                                  (1.0 - thr.gamma_B * thr.gamma_F) -
                              cn * thr.alpha_2;
            t = e_kaf * (-std::expm1(-th1 * thr.alpha_2)) / th1 +
                (std::exp(a2) - std::exp(a1)) / th2;
          } else {
            t = e_kaf / th1 - std::exp(a1) / th2;
          }
        }
        acc += bk * w_l * gb_n * grid.Phi[n] * cn * t;
      }
    }
  }
  return acc + detail::gb_survival(grid, thr.alpha_1) *
                   detail::cs_raw(grid, thr.alpha_F, K);
}

ScenarioParams with_k1(const ScenarioParams& params) {
  ScenarioParams p = params;
  p.K = 1;
  return p;
}

// High-SNR building blocks (joint power; P_B stands for the common power).

double hs_i1k(const QuadratureGrid& g, const DerivedThresholds& thr, int K,
              int k, double p) {
  const double gb = thr.gamma_B, gf = thr.gamma_F;
  const double pref = g.S_B * ipow(g.S_F, K) / ipow(p, K + 1);
  double sum = 0.0;
  for (int i = 0; i <= K - k; ++i) {
    double jsum = 0.0;
    for (int j = 0; j <= k; ++j)
      jsum += binom(k, j) * ((j % 2) ? -1.0 : 1.0) *
              (ipow(1.0 + gf, k - j + i + 1) - 1.0) / (k - j + i + 1);
    sum += binom(K - k, i) * ipow(gf + 1.0, K - k - i) *
           ipow(gf - 1.0 / gb, i) * ipow(gb, i + 1) * jsum;
  }
  return pref * sum;
}

double hs_i3(const QuadratureGrid& g, const DerivedThresholds& thr, int K,
             double p) {
  return g.S_B * ipow(g.S_F, K) * ipow(thr.gamma_F, K) *
         (ipow(1.0 + thr.gamma_B, K + 1) - 1.0) / (ipow(p, K + 1) * (K + 1));
}

double hs_bu_tail_k(const QuadratureGrid& g,
                    const std::vector<std::vector<CompTerm>>& comps,
                    const DerivedThresholds& thr, int K, int k, double p) {
  const double gb = thr.gamma_B, gf = thr.gamma_F;
  const double pref =
      ipow(-0.5, K - k) * ipow(g.S_F * gf / p, k) * g.gb_norm();
  double inner = 0.0;
  for (int m = 0; m <= K - k; ++m) {
    const double bm = binom(K - k, m) * ((m % 2) ? -1.0 : 1.0);
    for (const auto& [cp, Sp] : comps[static_cast<std::size_t>(K - k - m)]) {
      for (const auto& [cq, Sq] : comps[static_cast<std::size_t>(m)]) {
        const double A = Sp * gf + Sq / gb;
        double nsum = 0.0;
        for (int n = 0; n < g.N; ++n)
          nsum += g.Phi[n] * g.c[n] / (A + g.c[n]);
        inner += bm * cp * cq * nsum;
      }
    }
  }
  return pref * inner;
}

double psi_mu_k(const QuadratureGrid& g, int K) {
  return 0.5 * (g.Psi * g.mu.pow(K)).sum();
}

double phi_sum(const QuadratureGrid& g) { return g.gb_norm() * g.Phi.sum(); }

// Constant floor of the CDF-scheduling outage at or above the regime
// boundary.
double cs_floor(const QuadratureGrid& g, const DerivedThresholds& thr, int K) {
  const double gb = thr.gamma_B, gf = thr.gamma_F;
  double acc = 0.0;
  for (int k = 0; k <= K; ++k) {
    const double bk = binom(K, k) * ((k % 2) ? -1.0 : 1.0);
    for (int l = 0; l < g.L; ++l) {
      const double mul = g.mu[l];
      for (int n = 0; n < g.N; ++n) {
        const double cn = g.c[n];
        acc += bk * 0.5 * g.Psi[l] * g.gb_norm() * g.Phi[n] * cn *
               (1.0 / (k * mul * gf + cn) - 1.0 / (k * mul / gb + cn));
      }
    }
  }
  return acc;
}

}  // namespace

double outage_bu(const ScenarioParams& params, const QuadratureGrid& grid) {
  return bu_closed_form(params, grid, PowerRule::fixed);
}

double outage_cs(const ScenarioParams& params, const QuadratureGrid& grid) {
  return cs_closed_form(params, grid, PowerRule::fixed);
}

double outage_bu_pc(const ScenarioParams& params, const QuadratureGrid& grid) {
  return bu_closed_form(params, grid, PowerRule::pc);
}

double outage_cs_pc(const ScenarioParams& params, const QuadratureGrid& grid) {
  return cs_closed_form(params, grid, PowerRule::pc);
}

double high_snr_bu(const ScenarioParams& params, const QuadratureGrid& grid) {
  const int K = params.K;
  if (K < 2)
    throw std::invalid_argument("best-user high-SNR form requires K >= 2");
  const auto thr = DerivedThresholds::make(params, PowerRule::fixed);
  const double p = params.P_B;
  const double at1 = thr.gamma_B * (1.0 + thr.gamma_F);
  double i1_sum = 0.0;
  for (int k = 0; k <= K; ++k)
    i1_sum += binom(K, k) * hs_i1k(grid, thr, K, k, p);
  const double i3 = hs_i3(grid, thr, K, p);
  if (thr.sub_unity()) {
    const double at2 = at1 / (1.0 - thr.gamma_B * thr.gamma_F);
    const double pref = grid.S_B * ipow(grid.S_F, K) / ipow(p, K + 1);
    double i2_sum = 0.0;
    for (int k = 0; k <= K; ++k) {
      double isum = 0.0;
      for (int i = 0; i <= K - k; ++i)
        isum += binom(K - k, i) * ipow(thr.gamma_F + 1.0, K - k - i) *
                ipow(thr.gamma_F - 1.0 / thr.gamma_B, i) *
                (ipow(at2, i + 1) - ipow(at1, i + 1)) / (i + 1);
      i2_sum += binom(K, k) * pref * ipow(thr.gamma_F, k) * isum;
    }
    const double i4 =
        ipow(grid.S_F * thr.gamma_F / p, K) * (1.0 - grid.S_B * at2 / p);
    return i1_sum + i2_sum + i3 + i4;
  }
  if (K > 6)
    throw std::invalid_argument(
        "best-user high-SNR form with target-rate product >= 1 is limited to "
        "K <= 6");
  const auto comps = comp_lists(grid, K);
  double tail = 0.0;
  for (int k = 0; k <= K; ++k)
    tail += binom(K, k) * hs_bu_tail_k(grid, comps, thr, K, k, p);
  return i1_sum + tail + i3;
}

double high_snr_cs(const ScenarioParams& params, const QuadratureGrid& grid) {
  const int K = params.K;
  if (K < 1)
    throw std::invalid_argument("CDF-scheduling high-SNR form requires K >= 1");
  const auto thr = DerivedThresholds::make(params, PowerRule::fixed);
  const double p = params.P_B;
  const double pmk = psi_mu_k(grid, K);
  const double phis = phi_sum(grid);
  const double at1 = thr.gamma_B * (1.0 + thr.gamma_F);
  const double gfpK = ipow(thr.gamma_F / p, K);
  if (thr.sub_unity()) {
    const double at2 = at1 / (1.0 - thr.gamma_B * thr.gamma_F);
    double k1 = 0.0, k3 = 0.0;
    for (int k = 0; k <= K; ++k) {
      k1 += binom(K, k) * ipow(at2, k + 1) / (k + 1);
      k3 += binom(K, k) * (((K - k) % 2) ? -1.0 : 1.0) *
            (ipow(at1, k + 1) - ipow(at2, k + 1)) /
            (ipow(thr.gamma_B, k) * (k + 1));
    }
    return grid.S_B / p * gfpK * pmk * k1 + phis * gfpK * pmk +
           grid.S_B * pmk / ipow(p, K + 1) * k3;
  }
  double k2 = 0.0, k3 = 0.0;
  for (int k = 0; k <= K; ++k) {
    k2 += binom(K, k) * (((K - k) % 2) ? -1.0 : 1.0) * thr.gamma_B *
          (ipow(1.0 + thr.gamma_F, k + 1) - 1.0) / (k + 1);
    k3 += binom(K, k) * ipow(thr.gamma_B, k + 1) / (k + 1);
  }
  return cs_floor(grid, thr, K) + grid.S_B * pmk / ipow(p, K + 1) * k2 +
         grid.S_B / p * gfpK * pmk * k3 + phis * gfpK * pmk;
}

double high_snr_bu_pc(const ScenarioParams& params,
                      const QuadratureGrid& grid) {
  const int K = params.K;
  if (K < 2)
    throw std::invalid_argument("best-user high-SNR form requires K >= 2");
  const auto thr = DerivedThresholds::make(params, PowerRule::pc);
  const double p = params.P_B;
  const double at1 = thr.gamma_B * (1.0 + thr.gamma_F);
  double i1_sum = 0.0;
  for (int k = 0; k <= K; ++k)
    i1_sum += binom(K, k) * hs_i1k(grid, thr, K, k, p);
  return i1_sum + hs_i3(grid, thr, K, p) +
         ipow(grid.S_F * thr.gamma_F / p, K) * (1.0 - grid.S_B * at1 / p);
}

double high_snr_cs_pc(const ScenarioParams& params,
                      const QuadratureGrid& grid) {
  const int K = params.K;
  if (K < 1)
    throw std::invalid_argument("CDF-scheduling high-SNR form requires K >= 1");
  const auto thr = DerivedThresholds::make(params, PowerRule::pc);
  const double p = params.P_B;
  const double at1 = thr.gamma_B * (1.0 + thr.gamma_F);
  double k1 = 0.0;
  for (int k = 0; k <= params.K; ++k)
    k1 += binom(K, k) * ipow(at1, k + 1) / (k + 1);
  return grid.S_B / p * ipow(thr.gamma_F / p, K) * psi_mu_k(grid, K) * k1 +
         phi_sum(grid) * ipow(thr.gamma_F / p, K) * psi_mu_k(grid, K);
}

double dominant_bu(const ScenarioParams& params, const QuadratureGrid& grid) {
  const int K = params.K;
  if (K < 2)
    throw std::invalid_argument("best-user dominant term requires K >= 2");
  const auto thr = DerivedThresholds::make(params, PowerRule::fixed);
  if (thr.sub_unity())
    return ipow(grid.S_F * thr.gamma_F / params.P_B, K);
  if (K > 6)
    throw std::invalid_argument(
        "best-user dominant term with target-rate product >= 1 is limited to "
        "K <= 6");
  const auto comps = comp_lists(grid, K);
  return hs_bu_tail_k(grid, comps, thr, K, 0, params.P_B);
}

double dominant_cs(const ScenarioParams& params, const QuadratureGrid& grid) {
  const auto thr = DerivedThresholds::make(params, PowerRule::fixed);
  if (thr.sub_unity())
    return phi_sum(grid) * ipow(thr.gamma_F / params.P_B, params.K) *
           psi_mu_k(grid, params.K);
  return cs_floor(grid, thr, params.K);
}

double dominant_bu_pc(const ScenarioParams& params,
                      const QuadratureGrid& grid) {
  if (params.K < 2)
    throw std::invalid_argument("best-user dominant term requires K >= 2");
  const auto thr = DerivedThresholds::make(params, PowerRule::pc);
  return ipow(grid.S_F * thr.gamma_F / params.P_B, params.K);
}

double dominant_cs_pc(const ScenarioParams& params,
                      const QuadratureGrid& grid) {
  const auto thr = DerivedThresholds::make(params, PowerRule::pc);
  return phi_sum(grid) * ipow(thr.gamma_F / params.P_B, params.K) *
         psi_mu_k(grid, params.K);
}

int diversity_order(SchemeId scheme, const ScenarioParams& params) {
  const bool sub = params.gamma_B() * params.gamma_F() < 1.0;
  switch (scheme) {
    case SchemeId::bu:
    case SchemeId::cs: return sub ? params.K : 0;
    case SchemeId::bu_pc:
    case SchemeId::cs_pc: return params.K;
    case SchemeId::rs: return sub ? 1 : 0;
    case SchemeId::rs_pc: return 1;
    case SchemeId::rs_fsic: return 0;
  }
  throw std::logic_error("unknown scheme");
}

std::optional<double> analytic_outage(SchemeId scheme,
                                      const ScenarioParams& params,
                                      const QuadratureGrid& grid) {
  switch (scheme) {
    case SchemeId::bu:
      return params.K == 1 ? outage_cs(params, grid) : outage_bu(params, grid);
    case SchemeId::cs: return outage_cs(params, grid);
    case SchemeId::bu_pc:
      return params.K == 1 ? outage_cs_pc(params, grid)
                           : outage_bu_pc(params, grid);
    case SchemeId::cs_pc: return outage_cs_pc(params, grid);
    case SchemeId::rs: return outage_cs(with_k1(params), grid);
    case SchemeId::rs_pc: return outage_cs_pc(with_k1(params), grid);
    case SchemeId::rs_fsic: return std::nullopt;
  }
  throw std::logic_error("unknown scheme");
}

std::optional<double> analytic_high_snr(SchemeId scheme,
                                        const ScenarioParams& params,
                                        const QuadratureGrid& grid) {
  switch (scheme) {
    case SchemeId::bu:
      return params.K == 1 ? high_snr_cs(params, grid)
                           : high_snr_bu(params, grid);
    case SchemeId::cs: return high_snr_cs(params, grid);
    case SchemeId::bu_pc:
      return params.K == 1 ? high_snr_cs_pc(params, grid)
                           : high_snr_bu_pc(params, grid);
    case SchemeId::cs_pc: return high_snr_cs_pc(params, grid);
    case SchemeId::rs: return high_snr_cs(with_k1(params), grid);
    case SchemeId::rs_pc: return high_snr_cs_pc(with_k1(params), grid);
    case SchemeId::rs_fsic: return std::nullopt;
  }
  throw std::logic_error("unknown scheme");
}

std::optional<double> analytic_dominant(SchemeId scheme,
                                        const ScenarioParams& params,
                                        const QuadratureGrid& grid) {
  switch (scheme) {
    case SchemeId::bu:
      return params.K == 1 ? dominant_cs(params, grid)
                           : dominant_bu(params, grid);
    case SchemeId::cs: return dominant_cs(params, grid);
    case SchemeId::bu_pc:
      return params.K == 1 ? dominant_cs_pc(params, grid)
                           : dominant_bu_pc(params, grid);
    case SchemeId::cs_pc: return dominant_cs_pc(params, grid);
    case SchemeId::rs: return dominant_cs(with_k1(params), grid);
    case SchemeId::rs_pc: return dominant_cs_pc(with_k1(params), grid);
    case SchemeId::rs_fsic: return std::nullopt;
  }
  throw std::logic_error("unknown scheme");
}

namespace {

// Oracle families: direct adaptive integration of the conditional outage over
// the GB gain, conditioning done region by region. W caps the half-infinite
// pieces where the integrand has settled to its limit (error ~ e^{-60}).

double oracle_accumulate(const std::function<double(double)>& f, double a,
                         double b, OracleReport* report) {
  if (b <= a) return 0.0;
  const auto r = adaptive_simpson(f, a, b, 1e-13);
  if (report) {
    report->err_estimate += r.err_estimate;
    report->converged = report->converged && r.converged;
  }
  return r.value;
}

double oracle_bu(const ScenarioParams& params, const QuadratureGrid& grid,
                 PowerRule rule, OracleReport* report) {
  const auto thr = DerivedThresholds::make(params, rule);
  const double p_gf = rule == PowerRule::pc ? params.P_m : params.P_F;
  const int K = params.K;
  const double f_af = detail::ff_raw(grid, thr.alpha_F);
  auto up = [&](double w) { return thr.alpha_F * (params.P_B * w + 1.0); };
  auto all_below_up = [&](double w) {
    return fb_pdf(grid, w) * ipow(detail::ff_raw(grid, up(w)), K);
  };
  double total = oracle_accumulate(all_below_up, 0.0, thr.alpha_B, report) +
                 oracle_accumulate(all_below_up, thr.alpha_B, thr.alpha_1,
                                   report);
  if (rule == PowerRule::pc)
    return total + detail::gb_survival(grid, thr.alpha_1) * ipow(f_af, K);
  const double W = thr.alpha_1 + 60.0 / grid.c.minCoeff();
  const double U = std::min(thr.alpha_2, W);
  auto split_region = [&](double w) {
    const double thr_x = (w / thr.alpha_B - 1.0) / p_gf;
    return fb_pdf(grid, w) *
           ipow(f_af + detail::ff_diff(grid, up(w), thr_x), K);
  };
  total += oracle_accumulate(split_region, thr.alpha_1, U, report);
  return total + detail::gb_survival(grid, U) * ipow(f_af, K);
}

double oracle_cs(const ScenarioParams& params, const QuadratureGrid& grid,
                 PowerRule rule, OracleReport* report) {
  const auto thr = DerivedThresholds::make(params, rule);
  const double p_gf = rule == PowerRule::pc ? params.P_m : params.P_F;
  const int K = params.K;
  auto cs_up = [&](double w) {
    return fb_pdf(grid, w) *
           detail::cs_raw(grid, thr.alpha_F * (params.P_B * w + 1.0), K);
  };
  const double tail =
      detail::gb_survival(grid, thr.alpha_1) * detail::cs_raw(grid, thr.alpha_F, K);
  if (rule == PowerRule::pc)
    return oracle_accumulate(cs_up, 0.0, thr.alpha_1, report) + tail;
  const double W = thr.alpha_1 + 60.0 / grid.c.minCoeff();
  const double U = std::min(thr.alpha_2, W);
  auto cs_thr = [&](double w) {
    return fb_pdf(grid, w) *
           detail::cs_raw(grid, (w / thr.alpha_B - 1.0) / p_gf, K);
  };
  return oracle_accumulate(cs_up, 0.0, thr.alpha_1, report) +
         oracle_accumulate(cs_up, thr.alpha_1, U, report) -
         oracle_accumulate(cs_thr, thr.alpha_1, U, report) + tail;
}

}  // namespace

double numeric_oracle(SchemeId scheme, const ScenarioParams& params,
                      const QuadratureGrid& grid, OracleReport* report) {
  if (report) *report = OracleReport{};
  switch (scheme) {
    case SchemeId::bu:
      return params.K == 1
                 ? oracle_cs(params, grid, PowerRule::fixed, report)
                 : oracle_bu(params, grid, PowerRule::fixed, report);
    case SchemeId::cs: return oracle_cs(params, grid, PowerRule::fixed, report);
    case SchemeId::bu_pc:
      return params.K == 1 ? oracle_cs(params, grid, PowerRule::pc, report)
                           : oracle_bu(params, grid, PowerRule::pc, report);
    case SchemeId::cs_pc: return oracle_cs(params, grid, PowerRule::pc, report);
    case SchemeId::rs:
      return oracle_cs(with_k1(params), grid, PowerRule::fixed, report);
    case SchemeId::rs_pc:
      return oracle_cs(with_k1(params), grid, PowerRule::pc, report);
    case SchemeId::rs_fsic:
      throw std::invalid_argument(
          "the fixed-order benchmark has no closed form to validate");
  }
  throw std::logic_error("unknown scheme");
}

}  // namespace sgf
