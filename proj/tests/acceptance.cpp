// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "tauber/arith.hpp"
#include "tauber/constants.hpp"
#include "tauber/error.hpp"
#include "tauber/fields.hpp"
#include "tauber/lfunctions.hpp"
#include "tauber/moments.hpp"
#include "tauber/series.hpp"
#include "tauber/tauberian.hpp"

using namespace tauber;
using cplx = std::complex<double>;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

// #F(C_d; X^{d/n}) for every X <= x_max, from the field enumeration.
std::vector<std::int64_t> field_count_at_scaled(int n, int d, std::int64_t x_max) {
  const std::int64_t y_max = fields::integer_root(x_max, n / d);
  std::vector<std::int64_t> out(static_cast<std::size_t>(x_max) + 1, 0);
  const auto fc = fields::count_fields(d, std::max<std::int64_t>(y_max, 1));
  for (auto disc : fc.discriminants) {
    const std::int64_t first = arith::ipow(disc, n / d);  // disc <= X^{d/n}  <=>  disc^{n/d} <= X
    if (first <= x_max) ++out[static_cast<std::size_t>(first)];
  }
  for (std::size_t i = 1; i < out.size(); ++i) out[i] += out[i - 1];
  return out;
}

Outcome oracle_equivalence(int n, std::int64_t x_max) {
  const auto sieve = series::coefficient_sieve(series::make_local_factor_system(n), x_max);
  const auto sums = series::prefix_sums(sieve);
  const auto weights = series::frozen_etale_weights(n);
  std::vector<std::vector<std::int64_t>> counts;
  std::vector<int> ds;
  for (auto d : arith::divisors(n)) {
    if (d == 1) continue;
    ds.push_back(static_cast<int>(d));
    counts.push_back(field_count_at_scaled(n, static_cast<int>(d), x_max));
  }
  std::int64_t mismatches = 0, first_bad = -1;
  for (std::int64_t X = 1; X <= x_max; ++X) {
    std::map<int, std::int64_t> fc;
    for (std::size_t i = 0; i < ds.size(); ++i) fc[ds[i]] = counts[i][static_cast<std::size_t>(X)];
    if (series::etale_field_decomposition(n, fc, weights) != sums[static_cast<std::size_t>(X)]) {
      if (first_bad < 0) first_bad = X;
      ++mismatches;
    }
  }
  std::string w;
  for (auto [d, wd] : weights) w += (w.empty() ? "" : ",") + std::string("w") + std::to_string(d) + "=" + std::to_string(wd);
  return {mismatches == 0, "n=" + std::to_string(n) + " X<=" + std::to_string(x_max) + " mismatches=" +
                               std::to_string(mismatches) + " first=" + std::to_string(first_bad) + " " + w};
}

Outcome factorization() {
  std::string detail;
  bool ok = true;
  for (int n : {2, 3, 4, 6}) {
    const int two_a = 2 * arith::group_invariants(n).a;
    const auto r = series::zeta_factorization_check(n, two_a);
    ok = ok && r.passed();
    detail += "n=" + std::to_string(n) + (r.passed() ? ":ok " : ":bad ");
  }
  return {ok, detail};
}

Outcome c4_fit() {
  const double c2 = constants::c2_C4().value + 1.0 / (std::numbers::pi * std::numbers::pi / 6.0);
  const double c3 = constants::c3_C4().value;
  const auto sums = series::prefix_sums(series::coefficient_sieve(series::make_local_factor_system(4), 10000000));
  std::vector<double> lx, ly;
  for (double X : {1e3, 1e4, 1e5, 1e6, 1e7}) {
    const double N = static_cast<double>(sums[static_cast<std::size_t>(X)]);
    lx.push_back(std::log(X));
    ly.push_back(std::log(std::abs(N - c2 * std::sqrt(X) - c3 * std::cbrt(X))));
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i] / lx.size();
    my += ly[i] / ly.size();
  }
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  const double slope = sxy / sxx;
  return {slope <= 0.30, fmt("slope=%.4f", slope) + fmt(" c2=%.10f", c2) + fmt(" c3=%.10f", c3)};
}

Outcome sandwich_invariant() {
  using arith::Rational;
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<int> njumps(1, 12), num(0, 40), den(1, 7), kd(1, 5);
  int violations = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::pair<Rational, Rational>> jumps;
    Rational lambda = 0;
    for (int j = njumps(rng); j > 0; --j) {
      lambda += Rational(num(rng) + 1, den(rng));
      Rational a(num(rng), den(rng));
      a.canonicalize();
      lambda.canonicalize();
      jumps.emplace_back(lambda, a);
    }
    const int k = 1 + trial % 5;
    Rational X(num(rng) * 3 + 1, den(rng));
    Rational y(num(rng) + 1, den(rng) * 4);
    X.canonicalize();
    y.canonicalize();
    if (!tauberian::sandwich(jumps, k, X, y).holds) ++violations;
  }
  return {violations == 0, "200 cases violations=" + std::to_string(violations)};
}

Outcome symbolic_theta() {
  struct Triple {
    double delta, beta;
    int b;
  };
  bool ok = true;
  std::string detail;
  for (auto t : {Triple{0.5, 0.0, 1}, Triple{0.5, 3.0, 1}, Triple{1.0 / 3.0, 2.0, 2}}) {
    tauberian::TauberParams p;
    p.delta = t.delta;
    p.beta = t.beta;
    p.b = t.b;
    const auto got = tauberian::symbolic_log_power(p);
    const arith::Rational want(tauberian::theta_exponent(p.eta, p.beta, p.b));
    ok = ok && got == want;
    detail += "(" + fmt("%.3g", t.delta) + "," + fmt("%g", t.beta) + "," + std::to_string(t.b) + ")->" +
              got.get_str() + "/" + want.get_str() + " ";
  }
  return {ok, detail};
}

Outcome moment_sanity() {
  std::vector<moments::MomentSample> samples;
  bool band = true;
  std::string detail;
  for (double T : {250.0, 500.0, 1000.0, 2000.0}) {
    const double I = moments::integral_moment(1, 2.0, 0.5, T, 1e-4);
    const double ratio = I / (T * std::log(T / (2 * std::numbers::pi)));
    if (T >= 500.0) {
      band = band && ratio >= 0.8 && ratio <= 1.25;
      detail += fmt("T=%g", T) + fmt(":%.4f ", ratio);
    }
    moments::MomentSample s;
    s.sigma = 0.5;
    s.T = T;
    s.value = I;
    s.abs_value = I;
    samples.push_back(s);
  }
  const auto fit = moments::fit_growth(samples, 1.0);
  const bool eta_ok = fit.eta >= 0.85 && fit.eta <= 1.15;
  return {band && eta_ok, detail + fmt("eta=%.4f (beta=1)", fit.eta)};
}

Outcome twisted_closed_form() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> tdist(3.0, 2000.0), zdist(1.5, 50.0);
  double worst = 0;
  for (int i = 0; i < 20; ++i) {
    const double T = tdist(rng), Z = zdist(rng), sigma = 0.5;
    const auto got = moments::twisted_moment([](cplx) { return cplx(1.0); }, sigma, T, Z, 1e-12).value;
    const cplx I(0, 1);
    const double lz = std::log(Z);
    const cplx want = (std::exp(I * (2 * T * lz)) - std::exp(I * (T * lz))) / (I * lz);
    worst = std::max(worst, std::abs(got - want) / std::abs(want));
  }
  return {worst <= 1e-9, fmt("worst rel=%.3e", worst)};
}

// sum_{k>=0} (k+a)^{-s} in long double: direct sum to N, then integral and endpoint corrections.
cplx hurwitz_oracle(cplx s_in, double a) {
  using lcplx = std::complex<long double>;
  const int N = 500;
  const lcplx s(s_in.real(), s_in.imag());
  lcplx sum = 0;
  for (int k = 0; k < N; ++k) sum += std::pow(lcplx(k + a), -s);
  const lcplx x(N + a);
  sum += std::pow(x, 1.0L - s) / (s - 1.0L) + 0.5L * std::pow(x, -s) + s * std::pow(x, -s - 1.0L) / 12.0L -
         s * (s + 1.0L) * (s + 2.0L) * std::pow(x, -s - 3.0L) / 720.0L;
  return {static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
}

Outcome l_values() {
  double worst_rec = 0;
  for (cplx s : {cplx(2, 0), cplx(0.5, 14), cplx(2.0 / 3.0, 0), cplx(3, -7), cplx(1.25, 40)}) {
    for (double a : {0.25, 0.5, 0.9, 1.0}) {
      // zeta(s, a) = a^{-s} + zeta(s, a + 1), the second term from the oracle
      const cplx lhs = lfun::hurwitz_zeta(s, a);
      const cplx rhs = std::pow(cplx(a), -s) + hurwitz_oracle(s, a + 1.0);
      worst_rec = std::max(worst_rec, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
    }
  }
  const auto chi4 = fields::characters_of_exact_order(4, 2).at(0);
  const double l1 = lfun::dirichlet_L(1.0, chi4).real();
  const double l1_err = std::abs(l1 - std::numbers::pi / 4);

  bool dz_ok = true;
  std::string dz;
  const auto primes = arith::primes_up_to(1000000);
  for (double s : {2.0, 3.0}) {
    double prod = 1;
    for (auto p : primes) {
      const double u = std::pow(static_cast<double>(p), -s);
      if (p == 3) {
        prod /= 1 - u;
      } else if (p % 3 == 1) {
        prod /= (1 - u) * (1 - u);
      } else {
        prod /= 1 - u * u;
      }
    }
    // |log of omitted factors| <= sum_{m > P} 2.1 m^{-s}
    const double P = 1e6;
    const double tail = 2.1 * std::pow(P, 1 - s) / (s - 1);
    const double bound = prod * std::expm1(tail) + 1e-14 * prod;
    const double got = lfun::dedekind_zeta_cyclotomic(3, s).real();
    const bool ok = std::abs(got - prod) <= bound;
    dz_ok = dz_ok && ok;
    dz += fmt(" s=%g", s) + fmt(" diff=%.2e", std::abs(got - prod)) + fmt("<=%.2e", bound);
  }
  return {worst_rec <= 1e-10 && l1_err <= 1e-10 && dz_ok,
          fmt("recurrence=%.2e", worst_rec) + fmt(" L(1,chi4) err=%.2e", l1_err) + dz};
}

Outcome nonvanishing_table() {
  bool ok = true;
  int pairs = 0;
  std::string bad;
  for (int n : {3, 4, 6, 8, 16}) {
    for (auto d : arith::divisors(n)) {
      if (d == 1) continue;
      const auto r = constants::nonvanishing_check(n, static_cast<int>(d));
      ++pairs;
      if (!r.nonvanishing) {
        ok = false;
        bad += " (" + std::to_string(n) + "," + std::to_string(d) + ")";
      }
    }
  }
  return {ok, std::to_string(pairs) + " pairs" + (bad.empty() ? "" : " failing:" + bad)};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
    double time_limit = std::numeric_limits<double>::infinity();
  };
  const std::vector<Criterion> criteria = {
      {"C3 oracle equivalence", [] { return oracle_equivalence(3, 100000); }, 30},
      {"C4 oracle equivalence", [] { return oracle_equivalence(4, 100000); }, 60},
      {"zeta factorization n in {2,3,4,6}", factorization, 1},
      {"C4 expansion fit", c4_fit, 300},
      {"sandwich invariant", sandwich_invariant},
      {"symbolic log power", symbolic_theta},
      {"second moment of zeta", moment_sanity, 600},
      {"twisted moment closed form", twisted_closed_form},
      {"L-value regression", l_values},
      {"nonvanishing table", nonvanishing_table},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const Error& e) {
      o = {false, "error " + e.code() + ": " + e.what()};
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > criteria[i].time_limit) {
      o.pass = false;
      o.detail += fmt(" over time limit %gs", criteria[i].time_limit);
    }
    if (!o.pass) ++failures;
    std::printf("criterion %2zu %s: %s [%s] (%.2fs)\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].name,
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
