// Adaptive Simpson integration and the exact (integral-form) region-averaged
// channel statistics used as oracles for the quadrature grids.

#ifndef SGF_INTEGRATE_HPP
#define SGF_INTEGRATE_HPP

#include <functional>

#include "sgf/scenario.hpp"

namespace sgf {

struct IntegrationResult {
  double value = 0;
  double err_estimate = 0;  // absolute
  bool converged = true;
};

// Recursive adaptive Simpson on [a, b] to absolute tolerance tol.
IntegrationResult adaptive_simpson(const std::function<double(double)>& f,
                                   double a, double b, double tol,
                                   int max_depth = 48);

// Area-uniform radial average (2/(R_out^2 - R_in^2)) int r g(r) dr over
// [r_in, r_out]; a degenerate interval evaluates g at the pinned radius.
double radial_average(double r_in, double r_out,
                      const std::function<double(double)>& g);

// Exact region-averaged gain statistics, by adaptive integration of
// (2/(R_out^2 - R_in^2)) int_{R_in}^{R_out} (...) r dr. These are the
// ground truth the quadrature mixtures approximate.
double true_cdf_gf(const ScenarioParams& params, double x);
double true_pdf_gf(const ScenarioParams& params, double x);
double true_cdf_gb(const ScenarioParams& params, double y);
double true_pdf_gb(const ScenarioParams& params, double y);

// Joint density of the minimum and maximum of K i.i.d. gains with CDF F and
// pdf f: K(K-1) f(x) f(y) [F(y) - F(x)]^{K-2} for x <= y. Exposed for the
// normalization checks of the order-statistics machinery.
double joint_min_max_density(const ScenarioParams& params, int K, double x,
                             double y);

}  // namespace sgf

#endif  // SGF_INTEGRATE_HPP
