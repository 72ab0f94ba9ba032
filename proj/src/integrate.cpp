#include "sgf/integrate.hpp"

#include <cmath>
#include <stdexcept>

namespace sgf {

namespace {

struct SimpsonState {
  const std::function<double(double)>& f;
  double err = 0;
  bool converged = true;
};

double recurse(SimpsonState& st, double a, double b, double fa, double fm,
               double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = st.f(lm), frm = st.f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol || depth <= 0) {
    if (depth <= 0 && std::abs(delta) > 15.0 * tol) st.converged = false;
    st.err += std::abs(delta) / 15.0;
    return left + right + delta / 15.0;
  }
  return recurse(st, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         recurse(st, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double radial_average(double r_in, double r_out,
                      const std::function<double(double)>& g) {
  if (r_in == r_out) return g(r_out);
  const double norm = 2.0 / (r_out * r_out - r_in * r_in);
  return adaptive_simpson([&](double r) { return norm * r * g(r); }, r_in,
                          r_out, 1e-12)
      .value;
}

IntegrationResult adaptive_simpson(const std::function<double(double)>& f,
                                   double a, double b, double tol,
                                   int max_depth) {
  IntegrationResult out;
  if (a == b) return out;
  SimpsonState st{f};
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  out.value = recurse(st, a, b, fa, fm, fb, whole, tol, max_depth);
  out.err_estimate = st.err;
  out.converged = st.converged;
  return out;
}

double true_cdf_gf(const ScenarioParams& params, double x) {
  return radial_average(params.D_F_inner, params.D_F, [&](double r) {
    return -std::expm1(-(1.0 + std::pow(r, params.alpha)) * x);
  });
}

double true_pdf_gf(const ScenarioParams& params, double x) {
  return radial_average(params.D_F_inner, params.D_F, [&](double r) {
    const double m = 1.0 + std::pow(r, params.alpha);
    return m * std::exp(-m * x);
  });
}

double true_cdf_gb(const ScenarioParams& params, double y) {
  return radial_average(params.D_0, params.D_1, [&](double r) {
    return -std::expm1(-(1.0 + std::pow(r, params.alpha)) * y);
  });
}

double true_pdf_gb(const ScenarioParams& params, double y) {
  return radial_average(params.D_0, params.D_1, [&](double r) {
    const double c = 1.0 + std::pow(r, params.alpha);
    return c * std::exp(-c * y);
  });
}

double joint_min_max_density(const ScenarioParams& params, int K, double x,
                             double y) {
  if (K < 2) throw std::domain_error("joint_min_max_density requires K >= 2");
  if (x > y || x < 0.0) return 0.0;
  const double span = true_cdf_gf(params, y) - true_cdf_gf(params, x);
  return K * (K - 1.0) * true_pdf_gf(params, x) * true_pdf_gf(params, y) *
         std::pow(span < 0.0 ? 0.0 : span, K - 2);
}

}  // namespace sgf
