#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tauber/arith.hpp"

namespace tauber::moments {

using cplx = std::complex<double>;
using Evaluator = std::function<cplx(cplx)>;

constexpr double kMaxT = 2000.0;

struct QuadResult {
  cplx value;
  double error = 0.0;         // Gauss-Kronrod estimate
  double abs_integral = 0.0;  // integral of |f|
  int panels = 0;
};

// Adaptive Gauss-Kronrod 7-15 on [a, b] with panels no wider than max_panel.
// Stops when error <= max(rel_tol |I|, abs_tol); throws "quadrature_nonconvergence".
QuadResult integrate(const std::function<cplx(double)>& f, double a, double b, double max_panel, double rel_tol,
                     double abs_tol = 0.0, int max_panels = 400000);

struct MomentSample {
  double sigma = 0.0;
  double T = 0.0;
  double Z = 0.0;
  cplx value;
  double abs_value = 0.0;
  double error = 0.0;
  double abs_integral = 0.0;
};

// int_T^{2T} L(sigma+it) Z^{it} dt.
MomentSample twisted_moment(const Evaluator& L, double sigma, double T, double Z, double rel_tol = 1e-6);

// int_{t0}^{t1} L(sigma+it) Z^{it} dt on an arbitrary segment (negative t allowed).
QuadResult twisted_integral(const Evaluator& L, double sigma, double t0, double t1, double Z, double rel_tol);

// I_m(sigma, zeta_{Q(zeta_d)}; T) = int_0^T |zeta_K(sigma+it)|^{2m} dt, two_m any real.
double integral_moment(std::int64_t d, double two_m, double sigma, double T, double rel_tol = 1e-4);

struct GrowthFit {
  double Q = 0.0;
  double eta = 0.0;
  double beta = 0.0;
  double residual = 0.0;  // rms of the log-residuals
};

// Least squares of log|v| on (1, log T, log log T); Q is raised until the bound
// majorizes every sample.
GrowthFit fit_growth(const std::vector<MomentSample>& samples, std::optional<double> beta_fixed = std::nullopt);

struct HolderFactor {
  std::string label;        // e.g. "zeta_Q(zeta_4)(3s)"
  int field = 1;            // d with K = Q(zeta_d)
  int degree = 1;           // [K:Q]
  int multiplier = 1;       // argument is multiplier * s
  arith::Rational two_m;    // power inside the moment integral
  arith::Rational weight;   // Hoelder exponent
  arith::Rational log_power;
};

struct HolderBudget {
  int n = 0;
  std::vector<HolderFactor> factors;
  double eta = 1.0;
  int beta = 0;
  bool uses_pointwise_log = false;
};

HolderBudget holder_budget(int n);

// Log power of I_m(sigma, zeta_K; T) at the edge sigma: moment bound with 2m >= 0,
// the one-line bound for 2m < 0. Throws when neither lemma applies.
arith::Rational moment_log_power(const arith::Rational& sigma, const arith::Rational& two_m, int degree);

}  // namespace tauber::moments
