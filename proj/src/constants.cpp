#include "tauber/constants.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>
#include <json.hpp>

#include "tauber/error.hpp"
#include "tauber/io.hpp"
#include "tauber/lfunctions.hpp"
#include "tauber/parallel.hpp"

namespace tauber::constants {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = 2.220446049250313e-16;

lfun::EvalOptions precise_options() {
  lfun::EvalOptions o;
  o.bernoulli_order = 40;
  o.target_abs_error = 1e-15;
  return o;
}

double eval_poly(const std::vector<double>& c, double v) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * v + *it;
  return acc;
}

std::vector<double> trimmed(std::vector<double> c) {
  while (c.size() > 1 && c.back() == 0.0) c.pop_back();
  return c;
}

std::vector<double> poly_mul(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> r(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

// Coefficients 1..J of log(num/den) as a power series; both have constant term 1.
std::vector<double> log_series(const std::vector<double>& num, const std::vector<double>& den, int J) {
  std::vector<double> f(J + 1, 0.0);
  // f = num / den
  for (int j = 0; j <= J; ++j) {
    double acc = j < static_cast<int>(num.size()) ? num[j] : 0.0;
    for (int i = 1; i <= j && i < static_cast<int>(den.size()); ++i) acc -= den[i] * f[j - i];
    f[j] = acc;
  }
  std::vector<double> g(J + 1, 0.0);
  for (int j = 1; j <= J; ++j) {
    double acc = j * f[j];
    for (int i = 1; i < j; ++i) acc -= i * g[i] * f[j - i];
    g[j] = acc / j;
  }
  return g;
}

// Moduli of the roots of a polynomial with nonzero constant term.
std::vector<double> root_moduli(const std::vector<double>& c) {
  const auto p = trimmed(c);
  const int deg = static_cast<int>(p.size()) - 1;
  if (deg < 1) return {};
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -p[i] / p[deg];
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
  std::vector<double> r;
  for (int i = 0; i < deg; ++i) r.push_back(std::abs(es.eigenvalues()[i]));
  return r;
}

bool in_classes(const ClassEulerProduct& s, std::int64_t p) {
  if (std::find(s.excluded.begin(), s.excluded.end(), p) != s.excluded.end()) return false;
  const std::int64_t r = p % s.modulus;
  return std::find(s.residues.begin(), s.residues.end(), r) != s.residues.end();
}

// sum_{p > P} p^{-sigma} <= 1.3 sigma P^{1-sigma} / ((sigma - 1) log P).
double prime_power_tail(double sigma, double P) {
  return 1.3 * sigma * std::pow(P, 1.0 - sigma) / ((sigma - 1.0) * std::log(P));
}

void check_spec(const ClassEulerProduct& s) {
  if (s.modulus < 1) throw Error("invalid_argument", "class_euler_product: modulus must be positive");
  if (s.P < 3) throw Error("invalid_argument", "class_euler_product: P must be at least 3");
  if (!(s.x > 0.0)) throw Error("invalid_argument", "class_euler_product: x must be positive");
  if (s.numerator.empty() || s.denominator.empty() || s.numerator[0] != 1.0 || s.denominator[0] != 1.0) {
    throw Error("invalid_argument", "class_euler_product: numerator and denominator need constant term 1");
  }
}

struct Decay {
  bool trivial = false;
  int j0 = 0;
  double w = 0.0;
};

Decay decay_of(const ClassEulerProduct& s) {
  const std::size_t len = std::max(s.numerator.size(), s.denominator.size());
  for (std::size_t j = 1; j < len; ++j) {
    const double a = j < s.numerator.size() ? s.numerator[j] : 0.0;
    const double b = j < s.denominator.size() ? s.denominator[j] : 0.0;
    if (a != b) return {false, static_cast<int>(j), static_cast<double>(j) * s.x};
  }
  return {true, 0, 0.0};
}

// Finite part: sum of log term over included p <= P, in fixed block order.
double finite_log_sum(const ClassEulerProduct& s, const std::vector<std::int64_t>& primes) {
  constexpr std::size_t kBlock = 4096;
  const std::size_t blocks = (primes.size() + kBlock - 1) / kBlock;
  std::vector<double> partial(blocks, 0.0);
  parallel_for(blocks, [&](std::size_t b) {
    double acc = 0.0;
    const std::size_t end = std::min(primes.size(), (b + 1) * kBlock);
    for (std::size_t i = b * kBlock; i < end; ++i) {
      const std::int64_t p = primes[i];
      if (!in_classes(s, p)) continue;
      const double v = std::pow(static_cast<double>(p), -s.x);
      const double t = eval_poly(s.numerator, v) / eval_poly(s.denominator, v);
      if (!(t > 0.0)) throw Error("invalid_argument", "class_euler_product: nonpositive term");
      acc += std::log(t);
    }
    partial[b] = acc;
  });
  double total = 0.0;
  for (double v : partial) total += v;
  return total;
}

}  // namespace

ProductValue class_euler_product(const ClassEulerProduct& spec) {
  check_spec(spec);
  ProductValue out;
  const Decay dec = decay_of(spec);
  if (dec.trivial) return out;
  out.decay = dec.w;
  if (dec.w <= 1.0) throw Error("slow_convergence", "class_euler_product: decay exponent w <= 1");

  // |term - 1| <= c v^{j0} for v <= v0 = P^{-x}.
  const double P = static_cast<double>(spec.P);
  const double v0 = std::pow(P, -spec.x);
  const std::size_t len = std::max(spec.numerator.size(), spec.denominator.size());
  double diff = 0.0, den_dev = 0.0;
  for (std::size_t j = 1; j < len; ++j) {
    const double a = j < spec.numerator.size() ? spec.numerator[j] : 0.0;
    const double b = j < spec.denominator.size() ? spec.denominator[j] : 0.0;
    if (static_cast<int>(j) >= dec.j0) diff += std::abs(a - b) * std::pow(v0, static_cast<double>(j) - dec.j0);
    den_dev += std::abs(b) * std::pow(v0, static_cast<double>(j));
  }
  if (den_dev >= 0.5) throw Error("tail_bound_failure", "class_euler_product: denominator not bounded away from 0");
  const double c = diff / (1.0 - den_dev);
  if (c * std::pow(v0, dec.j0) > 0.5) throw Error("tail_bound_failure", "class_euler_product: |term - 1| > 1/2 past P");

  const auto primes = arith::primes_up_to(spec.P);
  const double log_value = finite_log_sum(spec, primes);
  out.tail_bound = 2.0 * c * prime_power_tail(dec.w, P);
  out.value = std::exp(log_value);
  const double rounding = 4.0 * kEps * static_cast<double>(primes.size());
  out.error_bound = out.value * std::expm1(out.tail_bound + rounding);
  return out;
}

ProductValue class_euler_product_accelerated(const ClassEulerProduct& spec) {
  check_spec(spec);
  ProductValue out;
  const Decay dec = decay_of(spec);
  if (dec.trivial) return out;
  out.decay = dec.w;
  if (dec.w <= 1.0) throw Error("slow_convergence", "class_euler_product: decay exponent w <= 1");
  for (auto [p, e] : arith::factorize(spec.modulus)) {
    if (p > spec.P) throw Error("invalid_argument", "class_euler_product: P must cover the modulus");
  }

  // |c_j| <= (sum over roots z of num and den of |z|^{-j}) / j.
  std::vector<double> inv_roots;
  for (double r : root_moduli(spec.numerator)) inv_roots.push_back(1.0 / r);
  for (double r : root_moduli(spec.denominator)) inv_roots.push_back(1.0 / r);
  const double P = static_cast<double>(spec.P);
  const double v0 = std::pow(P, -spec.x);
  double rho_inv = 0.0;
  for (double r : inv_roots) rho_inv = std::max(rho_inv, r);
  if (rho_inv * v0 >= 0.9) return class_euler_product(spec);

  auto coeff_bound = [&](int j) {
    double acc = 0.0;
    for (double r : inv_roots) acc += std::pow(r, j);
    return acc / j;
  };
  auto remainder = [&](int J) {
    // sum_{j > J} |c_j| sum_{p > P} p^{-jx}, geometric in j once jx > 2.
    double acc = 0.0;
    for (int j = J + 1; j <= J + 400; ++j) {
      if (j * spec.x <= 1.0) continue;
      acc += coeff_bound(j) * prime_power_tail(j * spec.x, P);
    }
    return acc;
  };
  int J = dec.j0;
  while (remainder(J) > 1e-16) {
    ++J;
    if (J > 2000) throw Error("tail_bound_failure", "class_euler_product: series tail does not converge");
  }

  const auto c = log_series(spec.numerator, spec.denominator, J);
  const auto opts = precise_options();
  std::vector<std::int64_t> units;
  for (std::int64_t r : spec.residues) {
    if (arith::gcd(r, spec.modulus) == 1) units.push_back(r);
  }
  std::vector<double> tail_terms(static_cast<std::size_t>(J) + 1, 0.0);
  parallel_for(static_cast<std::size_t>(J) + 1, [&](std::size_t j) {
    if (j == 0 || c[j] == 0.0) return;
    const double sigma = static_cast<double>(j) * spec.x;
    if (sigma <= 1.0) throw Error("slow_convergence", "class_euler_product: log series has a term with jx <= 1");
    double sum = 0.0;
    for (std::int64_t r : units) sum += lfun::prime_zeta_class(spec.modulus, r, sigma, spec.P, opts);
    tail_terms[j] = c[j] * sum;
  });
  double tail = 0.0;
  double c_abs = 0.0;
  for (int j = 1; j <= J; ++j) {
    tail += tail_terms[j];
    c_abs += std::abs(c[j]);
  }

  const auto primes = arith::primes_up_to(spec.P);
  const double log_value = finite_log_sum(spec, primes) + tail;
  // The class prime sums are differences of log L against the finite Euler factors.
  const double numeric = kEps * static_cast<double>(primes.size()) * (8.0 + 4.0 * c_abs * units.size());
  out.tail_bound = remainder(J) + numeric;
  out.value = std::exp(log_value);
  out.error_bound = out.value * std::expm1(out.tail_bound);
  return out;
}

std::string to_json(const ConstantResult& r) {
  std::string s = "{\"name\":" + nlohmann::json(r.name).dump() + ",\"value\":" + io::format_real(r.value) +
                  ",\"error_bound\":" + io::format_real(r.error_bound) + ",\"factors\":{";
  for (std::size_t i = 0; i < r.factors.size(); ++i) {
    s += (i ? "," : "") + nlohmann::json(r.factors[i].first).dump() + ":" + io::format_real(r.factors[i].second);
  }
  return s + "}}";
}

namespace {

constexpr std::int64_t kProductCutoff = 100000;

ClassEulerProduct c4_class_product(double x, std::vector<double> num, std::vector<double> den) {
  ClassEulerProduct s;
  s.modulus = 4;
  s.residues = {1};
  s.numerator = std::move(num);
  s.denominator = std::move(den);
  s.x = x;
  s.P = kProductCutoff;
  return s;
}

}  // namespace

ConstantResult c2_C4(const arith::TruncPoly& wild_at_2) {
  const double zeta2 = kPi * kPi / 6.0;
  const double w = wild_at_2.evaluate(std::pow(2.0, -0.5));
  // W(2^{-1/2}) (1 - 1/2) prod_{p odd} (1 - p^{-2}) = W (2/3) / zeta(2)
  const double prefactor = w * (2.0 / 3.0) / zeta2;
  const auto prod = class_euler_product_accelerated(c4_class_product(0.5, {1, 0, 0, 2, -1, -2}, {1, 0, 0, 0, -1}));
  ConstantResult r;
  r.name = "c2_C4";
  r.value = prefactor * prod.value - 1.0 / zeta2;
  r.error_bound = prefactor * prod.error_bound + 8.0 * kEps * (prefactor * prod.value + 1.0 / zeta2);
  r.factors = {{"wild_factor_at_2", w},
               {"prefactor", prefactor},
               {"euler_product_p1mod4", prod.value},
               {"subtracted", -1.0 / zeta2}};
  return r;
}

ConstantResult c2_C4() { return c2_C4(series::WildFactorTable::builtin().get(4, 2)); }

ConstantResult c3_C4(const arith::TruncPoly& wild_at_2) {
  const auto opts = precise_options();
  const double zeta23 = lfun::riemann_zeta(2.0 / 3.0, opts).real();
  const double zeta43 = lfun::riemann_zeta(4.0 / 3.0, opts).real();
  const double zeta2 = kPi * kPi / 6.0;
  const double L1 = kPi / 4.0;
  const double w = wild_at_2.evaluate(std::pow(2.0, -1.0 / 3.0));
  const double prefactor = w * (1.0 - std::pow(2.0, -2.0 / 3.0)) * 0.5;
  // prod_{p odd} (1 - p^{-4/3})(1 - p^{-2})
  const double base = 1.0 / (zeta43 * (1.0 - std::pow(2.0, -4.0 / 3.0)) * zeta2 * 0.75);
  const auto prod = class_euler_product_accelerated(
      c4_class_product(1.0 / 3.0, {1, 0, 0, 0, -1, -2, -3, 2, 4, 2, -1, -2}, {1, 0, 0, 0, -1, 0, -1, 0, 0, 0, 1}));
  ConstantResult r;
  r.name = "c3_C4";
  r.value = zeta23 * L1 * prefactor * base * prod.value;
  // Each zeta value carries at most the Euler-Maclaurin target error.
  const double rel = opts.target_abs_error / std::abs(zeta23) + opts.target_abs_error / zeta43 +
                     prod.error_bound / prod.value + 16.0 * kEps;
  r.error_bound = std::abs(r.value) * rel;
  r.factors = {{"zeta(2/3)", zeta23},
               {"L(1,chi_4)", L1},
               {"wild_factor_at_2", w},
               {"prefactor", prefactor},
               {"euler_product_odd", base},
               {"euler_product_p1mod4", prod.value}};
  return r;
}

ConstantResult c3_C4() { return c3_C4(series::WildFactorTable::builtin().get(4, 2)); }

ConstantResult leading_residue(int n, const series::WildFactorTable& table) {
  if (n < 2) throw Error("invalid_argument", "leading_residue: n must be at least 2");
  const auto fac = arith::factorize(n);
  const std::int64_t ell = fac.front().first;
  const int a = static_cast<int>(n - n / ell);
  // The pole of zeta_{Q(zeta_ell)}(as)^{|G_ell| / phi(ell)} is simple for cyclic groups.
  const auto sys = series::make_local_factor_system(n, table);
  const auto opts = precise_options();

  ConstantResult r;
  r.name = "leading_residue(" + std::to_string(n) + ")";
  const double rho = lfun::dedekind_residue(ell, opts);
  r.factors.push_back({"residue_zeta_Q(zeta_" + std::to_string(ell) + ")", rho});
  double value = rho;
  double rel = static_cast<double>(ell) * opts.target_abs_error / rho;

  // Local inverse of zeta_{Q(zeta_ell)}(as) at s = 1/a, v = p^{-1/a}: (1 - v^{af})^{(ell-1)/f}.
  auto inverse_zeta_factor = [&](std::int64_t p) {
    std::vector<double> poly{1.0};
    if (p == ell) {
      std::vector<double> f(static_cast<std::size_t>(a) + 1, 0.0);
      f[0] = 1.0;
      f[a] = -1.0;
      return f;
    }
    const std::int64_t f = arith::multiplicative_order(p % ell, ell);
    const std::int64_t g = (ell - 1) / f;
    std::vector<double> one(static_cast<std::size_t>(a * f) + 1, 0.0);
    one[0] = 1.0;
    one[static_cast<std::size_t>(a * f)] = -1.0;
    for (std::int64_t i = 0; i < g; ++i) poly = poly_mul(poly, one);
    return poly;
  };
  auto to_doubles = [](const arith::TruncPoly& t) {
    std::vector<double> c;
    for (const auto& x : t.coeffs()) c.push_back(x.get_d());
    return c;
  };

  std::vector<std::int64_t> wild;
  for (auto [p, e] : fac) {
    wild.push_back(p);
    const double v = std::pow(static_cast<double>(p), -1.0 / a);
    const double local = eval_poly(to_doubles(sys.wild_overrides.at(p)), v) * eval_poly(inverse_zeta_factor(p), v);
    r.factors.push_back({"local_factor_p" + std::to_string(p), local});
    value *= local;
    rel += 8.0 * kEps;
  }
  for (const auto& rule : sys.tame_rules) {
    ClassEulerProduct s;
    s.modulus = n;
    s.residues = {rule.residue};
    s.numerator = trimmed(poly_mul(to_doubles(rule.factor), inverse_zeta_factor(rule.residue)));
    s.x = 1.0 / a;
    s.P = kProductCutoff;
    s.excluded = wild;
    const auto prod = class_euler_product_accelerated(s);
    r.factors.push_back({"euler_product_class_" + std::to_string(rule.residue) + "_mod_" + std::to_string(n),
                         prod.value});
    value *= prod.value;
    rel += prod.error_bound / prod.value;
  }
  r.value = value;
  r.error_bound = std::abs(value) * rel;
  return r;
}

NonvanishingReport nonvanishing_check(int n, int d) {
  if (n < 2 || d < 2 || n % d != 0) throw Error("invalid_argument", "nonvanishing_check: need d | n with d > 1");
  NonvanishingReport rep;
  rep.n = n;
  rep.d = d;
  const auto opts = precise_options();
  double rel = 0.0;
  for (std::int64_t m : arith::divisors(n)) {
    if (m <= 1 || m >= d) continue;
    NonvanishingFactor f;
    f.m = static_cast<int>(m);
    f.s = arith::Rational(m - 1, m) / arith::Rational(d - 1, d);
    f.s.canonicalize();
    if (f.s >= 1) throw Error("pole", "nonvanishing_check: argument reaches s = 1");
    const double s = f.s.get_d();
    f.value = lfun::dedekind_zeta_cyclotomic(m, s, opts).real();
    // Each L(s, chi*) sums phi(f) Hurwitz values, each within the target error, scaled by f^{-s}.
    double frel = 0.0;
    for (const auto& chi : fields::all_characters(m)) {
      const auto prim = chi.primitive();
      const std::int64_t cond = prim.modulus();
      const double L = std::abs(cond == 1 ? lfun::riemann_zeta(s, opts) : lfun::dirichlet_L(s, prim, opts));
      frel += static_cast<double>(arith::euler_phi(cond)) * opts.target_abs_error * std::pow(cond, -s) / L;
    }
    frel += 8.0 * kEps;
    f.error_bound = std::abs(f.value) * frel;
    rel += frel;
    rep.product *= f.value;
    rep.factors.push_back(f);
  }
  rep.error_bound = std::abs(rep.product) * rel;
  rep.nonvanishing = std::abs(rep.product) > 10.0 * rep.error_bound;
  return rep;
}

}  // namespace tauber::constants
