#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tauber/arith.hpp"
#include "tauber/error.hpp"

namespace tauber::tauberian {

using cplx = std::complex<double>;
using arith::Rational;

struct TauberParams {
  double sigma_a = 1.0;
  double delta = 0.5;
  double T0 = std::exp(1.0);
  double eta = 1.0;
  double eta_tilde = 1.0;
  double beta = 0.0;
  double Q = 1.0;
  int b = 1;
  double sup_gamma = 0.0;

  void validate() const;
  // Flat "key = value" lines over base; '#' comments; unknown keys rejected.
  static TauberParams parse(const std::string& text, const TauberParams& base);
  static TauberParams parse(const std::string& text);
  static TauberParams load(const std::string& path, const TauberParams& base);
  static TauberParams load(const std::string& path);
  std::string serialize() const;
};

// X^z R_z(log X), coefficients by ascending power of log X.
struct PolarTerm {
  cplx z;
  std::vector<cplx> R;
};

cplx polar_sum(const std::vector<PolarTerm>& terms, double X);
double abs_polar(const std::vector<PolarTerm>& terms, double X);
// Coefficient of the dominant X^sigma (log X)^{b-1}; 1 for no terms.
double leading_coefficient(const std::vector<PolarTerm>& terms);

// (1/k!) sum_{lambda <= X} a (X - lambda)^k.
template <typename Num>
Num riesz_mean(const std::vector<std::pair<Num, Num>>& jumps, int k, const Num& X) {
  Num fact = 1;
  for (int i = 2; i <= k; ++i) fact *= i;
  Num total = 0;
  for (const auto& [lambda, a] : jumps) {
    if (lambda > X) continue;
    Num term = a;
    for (int i = 0; i < k; ++i) term *= (X - lambda);
    total += term;
  }
  return Num(total / fact);
}

// sum_{j=0}^k (-1)^{k-j} C(k,j) f(x + j y).
template <typename Num, typename F>
Num finite_difference(F&& f, const Num& y, int k, const Num& x) {
  if (k < 1) throw Error("invalid_argument", "finite_difference: k must be at least 1");
  Num total = 0;
  Num binom = 1;
  for (int j = 0; j <= k; ++j) {
    Num term = binom * f(Num(x + j * y));
    if ((k - j) % 2 == 0) {
      total += term;
    } else {
      total -= term;
    }
    binom = binom * (k - j) / (j + 1);
  }
  return total;
}

struct SandwichResult {
  Rational lower;   // A^0(X)
  Rational middle;  // y^{-k} Delta_y^k A^k(X)
  Rational upper;   // A^0(X + ky)
  bool holds = false;
};

// Requires nonnegative jumps and y > 0.
SandwichResult sandwich(const std::vector<std::pair<Rational, Rational>>& jumps, int k, const Rational& X,
                        const Rational& y);

int smoothing_order(double eta, double eta_tilde);

struct GH {
  double g = 0.0;
  double h = 0.0;
};
GH gh_helpers(double eta, double beta, double u);

double theta_exponent(double eta, double beta, int b);

// Monomials c X^p (log X)^q; sums keep every monomial, ordered by (p, q).
class Asymptotic {
 public:
  struct Monomial {
    double coeff = 0.0;
    Rational x_pow;
    Rational log_pow;
  };

  Asymptotic() = default;
  Asymptotic(double c);  // NOLINT(google-explicit-constructor)
  static Asymptotic x();
  static Asymptotic monomial(double c, const Rational& x_pow, const Rational& log_pow);

  const std::vector<Monomial>& terms() const { return terms_; }
  // Largest (p, q) with nonzero coefficient; throws on the zero expression.
  const Monomial& dominant() const;

  friend Asymptotic operator+(const Asymptotic& a, const Asymptotic& b);
  friend Asymptotic operator*(const Asymptotic& a, const Asymptotic& b);
  // Division by a single monomial.
  friend Asymptotic operator/(const Asymptotic& a, const Asymptotic& b);
  // Leading-order power: the dominant monomial raised to e.
  friend Asymptotic pow(const Asymptotic& a, double e);
  // Leading-order log: p log X for p != 0, log c for constants.
  friend Asymptotic log(const Asymptotic& a);

 private:
  void add(const Monomial& m);
  std::vector<Monomial> terms_;
};

struct ErrorTerms {
  double E1 = 0.0;
  double E2 = 0.0;
};

template <typename S>
S e1_generic(const TauberParams& p, const S& X, const S& T, const S& R_abs_at_X) {
  using std::log;
  using std::pow;
  const int k = smoothing_order(p.eta, p.eta_tilde);
  const double kk = std::pow(static_cast<double>(k), k);
  const S log_t = log(T);
  const S r_term = R_abs_at_X / pow(X, p.sigma_a);
  if (p.eta < 1.0) return S(0.0);
  if (p.eta == 1.0) {
    return (pow(X, p.delta) / T) * r_term +
           (S(kk) / log_t + S(std::pow(2.0, p.delta + 1.0) * p.Q)) * pow(log_t, p.beta + 1.0);
  }
  const S scale = pow(X, p.delta / p.eta);
  return (scale / T) * r_term +
         S(kk + std::pow(2.0, p.delta) * p.eta / (p.eta - 1.0) * p.Q) * pow(T / scale, p.eta - 1.0) *
             pow(log_t, p.beta);
}

double e2_value(const TauberParams& p);

// T >= 6, X >= e; R_abs_at_X is R_{N, sigma_a - delta}(X).
ErrorTerms error_terms(const TauberParams& p, double X, double T, double R_abs_at_X);

template <typename S>
S optimal_T_generic(const TauberParams& p, const S& X) {
  using std::log;
  using std::pow;
  if (p.eta <= 1.0) return pow(X, p.delta) * pow(log(X), static_cast<double>(p.b - 1));
  return pow(X, p.delta / p.eta) * pow(log(X), (p.b - 1 - p.beta) / p.eta);
}

double optimal_T_raw(const TauberParams& p, double X);
// optimal_T_raw floored at 6.
double optimal_T(const TauberParams& p, double X);

// Log power of E1 at T = optimal_T, with R_abs ~ X^{sigma_a} (log X)^{b-1}.
// Throws if a positive power of X survives.
Rational symbolic_log_power(const TauberParams& p);

// The unsmoothing bound before choosing y and k; requires k y <= X / 2 and T >= T0.
double unoptimized_bound(const TauberParams& p, double X, double T, double y, int k, double R_abs_at_X);

enum class BoundMode { optimized, unoptimized };

struct Sample {
  double X = 0.0;
  double N = 0.0;
};

struct Majorant {
  std::vector<Sample> samples;
  std::vector<PolarTerm> terms;
  TauberParams params;
};

struct BoundReport {
  double C = 0.0;
  double slope = 0.0;  // log D against log X over samples with D > 0
  double worst_X = 0.0;
  std::vector<double> deviation;
  std::vector<double> envelope;
};

double envelope(const TauberParams& p, const std::vector<PolarTerm>& terms, double X, BoundMode mode);

BoundReport bound_check(const std::vector<Sample>& samples, const std::vector<PolarTerm>& terms,
                        const TauberParams& p, BoundMode mode = BoundMode::optimized,
                        const std::optional<Majorant>& majorant = std::nullopt);

std::string to_json(const BoundReport& r);

}  // namespace tauber::tauberian
