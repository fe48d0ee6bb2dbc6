#include "tauber/lfunctions.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <vector>

#include "tauber/error.hpp"

namespace tauber::lfun {

namespace {

constexpr int kMaxBernoulli = 200;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct BernoulliTable {
  std::vector<double> b;         // B_k
  std::vector<double> b_over_f;  // B_{2j} / (2j)!
};

const BernoulliTable& bernoulli_table() {
  static const BernoulliTable table = [] {
    // Akiyama-Tanigawa, exact.
    std::vector<arith::Rational> row(kMaxBernoulli + 1), exact(kMaxBernoulli + 1);
    for (int m = 0; m <= kMaxBernoulli; ++m) {
      row[m] = arith::Rational(1, m + 1);
      for (int j = m; j >= 1; --j) {
        row[j - 1] = j * (row[j - 1] - row[j]);
        row[j - 1].canonicalize();
      }
      exact[m] = row[0];
    }
    exact[1] = arith::Rational(-1, 2);
    BernoulliTable t;
    t.b.resize(kMaxBernoulli + 1);
    t.b_over_f.resize(kMaxBernoulli / 2 + 1, 0.0);
    arith::Rational fact = 1;
    for (int k = 0; k <= kMaxBernoulli; ++k) {
      if (k > 0) fact *= k;
      t.b[k] = exact[k].get_d();
      if (k % 2 == 0) {
        arith::Rational q = exact[k] / fact;
        q.canonicalize();
        t.b_over_f[k / 2] = q.get_d();
      }
    }
    return t;
  }();
  return table;
}

bool is_one(cplx s) { return s.real() == 1.0 && s.imag() == 0.0; }

}  // namespace

void EvalOptions::validate() const {
  if (bernoulli_order < 2 || bernoulli_order % 2 != 0 || bernoulli_order > kMaxBernoulli - 2) {
    throw Error("invalid_argument", "bernoulli_order must be even, >= 2 and <= " + std::to_string(kMaxBernoulli - 2));
  }
  if (!(target_abs_error > 0.0)) throw Error("invalid_argument", "target_abs_error must be positive");
  if (euler_maclaurin_terms < 1) throw Error("invalid_argument", "euler_maclaurin_terms must be positive");
}

double bernoulli(int k) {
  if (k < 0 || k > kMaxBernoulli) throw Error("invalid_argument", "bernoulli: index out of range");
  return bernoulli_table().b[k];
}

cplx hurwitz_zeta(cplx s, double a, const EvalOptions& opts) {
  opts.validate();
  if (is_one(s)) throw Error("pole", "hurwitz_zeta: pole at s = 1");
  if (!(a > 0.0 && a <= 1.0)) throw Error("invalid_argument", "hurwitz_zeta: a must lie in (0, 1]");
  const auto& bf = bernoulli_table().b_over_f;
  const int big_b = opts.bernoulli_order / 2;

  // Size of the first omitted correction term, times the usual |s+2B+1|/(Re s+2B+1) factor.
  auto omitted = [&](double n_a) {
    double poch = 1.0;
    for (int i = 0; i < 2 * big_b + 1; ++i) poch *= std::abs(s + static_cast<double>(i));
    const double sigma_tail = s.real() + 2 * big_b + 1;
    const double factor = sigma_tail > 0 ? std::abs(s + static_cast<double>(2 * big_b + 1)) / sigma_tail : 1e300;
    return std::abs(bf[big_b + 1]) * poch * std::pow(n_a, -s.real() - 2 * big_b - 1) * factor;
  };

  double n = std::max<double>(opts.euler_maclaurin_terms, std::ceil(std::abs(s) / (kTwoPi * 0.4)));
  while (omitted(n + a) > opts.target_abs_error) {
    n *= 1.5;
    if (n > 1e7) throw Error("nonconvergent", "hurwitz_zeta: Euler-Maclaurin shift exceeds 1e7");
  }
  const std::int64_t big_n = static_cast<std::int64_t>(n);

  // Re s < 0: the partial sum and the integral term cancel, so accumulate in long double.
  if (s.real() < 0.0) {
    using lcplx = std::complex<long double>;
    const lcplx ls(s.real(), s.imag());
    lcplx lsum = 0.0L;
    for (std::int64_t k = big_n - 1; k >= 0; --k) lsum += std::exp(-ls * std::log(static_cast<long double>(k) + a));
    const long double na = static_cast<long double>(big_n) + a;
    const lcplx na_pow = std::exp(-ls * std::log(na));
    lsum += na_pow * na / (ls - 1.0L) + 0.5L * na_pow;
    lcplx poch = ls;
    lcplx power = na_pow / na;
    for (int j = 1; j <= big_b; ++j) {
      lsum += static_cast<long double>(bf[j]) * poch * power;
      poch *= (ls + static_cast<long double>(2 * j - 1)) * (ls + static_cast<long double>(2 * j));
      power /= na * na;
    }
    return {static_cast<double>(lsum.real()), static_cast<double>(lsum.imag())};
  }

  cplx sum = 0.0;
  if (s.imag() == 0.0) {
    double acc = 0.0;
    for (std::int64_t k = big_n - 1; k >= 0; --k) acc += std::pow(static_cast<double>(k) + a, -s.real());
    sum = acc;
  } else {
    for (std::int64_t k = big_n - 1; k >= 0; --k) sum += std::exp(-s * std::log(static_cast<double>(k) + a));
  }
  const double na = static_cast<double>(big_n) + a;
  const cplx na_pow = std::exp(-s * std::log(na));  // (N+a)^{-s}
  sum += na_pow * na / (s - 1.0) + 0.5 * na_pow;
  // sum_j B_{2j}/(2j)! s(s+1)...(s+2j-2) (N+a)^{-s-2j+1}
  cplx poch = s;
  double inv_na2 = 1.0 / (na * na);
  cplx power = na_pow / na;
  for (int j = 1; j <= big_b; ++j) {
    sum += bf[j] * poch * power;
    poch *= (s + static_cast<double>(2 * j - 1)) * (s + static_cast<double>(2 * j));
    power *= inv_na2;
  }
  return sum;
}

cplx riemann_zeta(cplx s, const EvalOptions& opts) { return hurwitz_zeta(s, 1.0, opts); }

double digamma(double x) {
  if (!(x > 0.0)) throw Error("invalid_argument", "digamma: x must be positive");
  double shift = 0.0;
  while (x < 20.0) {
    shift -= 1.0 / x;
    x += 1.0;
  }
  const double inv2 = 1.0 / (x * x);
  double series = 0.0, pw = inv2;
  for (int k = 1; k <= 10; ++k) {
    series += bernoulli(2 * k) / (2.0 * k) * pw;
    pw *= inv2;
  }
  return shift + std::log(x) - 0.5 / x - series;
}

namespace {

cplx l_from_hurwitz(cplx s, const std::vector<cplx>& chi, const EvalOptions& opts) {
  const std::int64_t m = static_cast<std::int64_t>(chi.size());
  cplx sum = 0.0;
  for (std::int64_t r = 1; r <= m; ++r) {
    const cplx c = chi[r % m];
    if (c == 0.0) continue;
    sum += c * hurwitz_zeta(s, static_cast<double>(r) / static_cast<double>(m), opts);
  }
  return std::exp(-s * std::log(static_cast<double>(m))) * sum;
}

}  // namespace

cplx dirichlet_L(cplx s, const fields::DirichletCharacter& chi, const EvalOptions& opts) {
  if (!chi.is_primitive()) throw Error("not_primitive", "dirichlet_L: character must be primitive");
  const std::int64_t m = chi.modulus();
  if (m == 1) return riemann_zeta(s, opts);
  const auto vals = chi.values();
  if (is_one(s)) {
    cplx sum = 0.0;
    for (std::int64_t r = 1; r < m; ++r) {
      if (vals[r] == 0.0) continue;
      sum += vals[r] * digamma(static_cast<double>(r) / static_cast<double>(m));
    }
    return -sum / static_cast<double>(m);
  }
  return l_from_hurwitz(s, vals, opts);
}

cplx dedekind_zeta_cyclotomic(std::int64_t d, cplx s, const EvalOptions& opts) {
  if (d < 1) throw Error("invalid_argument", "dedekind_zeta_cyclotomic: d must be positive");
  if (is_one(s)) throw Error("pole", "dedekind_zeta_cyclotomic: pole at s = 1");
  // Hurwitz values are shared by every character of the same conductor.
  std::map<std::int64_t, std::vector<cplx>> hurwitz_by_conductor;
  cplx product = 1.0;
  for (const auto& chi : fields::all_characters(d)) {
    const auto prim = chi.primitive();
    const std::int64_t f = prim.modulus();
    if (f == 1) {
      product *= riemann_zeta(s, opts);
      continue;
    }
    auto& hz = hurwitz_by_conductor[f];
    if (hz.empty()) {
      hz.resize(static_cast<std::size_t>(f));
      for (std::int64_t r = 1; r < f; ++r) {
        if (arith::gcd(r, f) == 1) hz[r] = hurwitz_zeta(s, static_cast<double>(r) / static_cast<double>(f), opts);
      }
    }
    const auto vals = prim.values();
    cplx sum = 0.0;
    for (std::int64_t r = 1; r < f; ++r) {
      if (vals[r] != 0.0) sum += vals[r] * hz[r];
    }
    product *= std::exp(-s * std::log(static_cast<double>(f))) * sum;
  }
  return product;
}

double dedekind_residue(std::int64_t d, const EvalOptions& opts) {
  if (d < 1) throw Error("invalid_argument", "dedekind_residue: d must be positive");
  cplx product = 1.0;
  for (const auto& chi : fields::all_characters(d)) {
    if (chi.is_principal()) continue;
    product *= dirichlet_L(1.0, chi.primitive(), opts);
  }
  return product.real();
}

double prime_zeta_class(std::int64_t q, std::int64_t r, double s, std::int64_t p0, const EvalOptions& opts) {
  if (!(s > 1.0)) throw Error("invalid_argument", "prime_zeta_class: s must exceed 1");
  if (q < 1 || arith::gcd(r, q) != 1) throw Error("invalid_argument", "prime_zeta_class: r must be a unit mod q");
  for (auto [p, e] : arith::factorize(q)) {
    if (p > p0) throw Error("invalid_argument", "prime_zeta_class: p0 must cover the primes dividing q");
  }
  const auto primes = arith::primes_up_to(p0);
  const auto chars = fields::all_characters(q);
  const double phi_q = static_cast<double>(arith::euler_phi(q));

  // log of prod_{p > p0} (1 - psi(p) p^{-sigma})^{-1} for psi = chi^k.
  auto log_l_tail = [&](const fields::DirichletCharacter& psi, double sigma) {
    const auto prim = psi.primitive();
    const auto vals = prim.values();
    const std::int64_t f = prim.modulus();
    cplx value = dirichlet_L(sigma, prim, opts);
    for (std::int64_t p : primes) {
      const cplx c = vals[p % f];
      if (c != 0.0) value *= 1.0 - c * std::pow(static_cast<double>(p), -sigma);
    }
    return std::log(value);
  };

  const double log_p0 = std::log(static_cast<double>(std::max<std::int64_t>(p0, 2)));
  cplx total = 0.0;
  for (const auto& chi : chars) {
    const cplx weight = std::conj(chi.value(r)) / phi_q;
    cplx p_chi = 0.0;
    for (int k = 1;; ++k) {
      const double ks = k * s;
      // sum_{p > p0} p^{-ks} <= p0^{1-ks}/(ks-1)
      if (k > 1 && std::exp((1.0 - ks) * log_p0) / (ks - 1.0) < 1e-18) break;
      const int mu = arith::mobius(k);
      if (mu == 0) continue;
      p_chi += static_cast<double>(mu) / k * log_l_tail(chi.pow(k), ks);
    }
    total += weight * p_chi;
  }
  return total.real();
}

}  // namespace tauber::lfun
