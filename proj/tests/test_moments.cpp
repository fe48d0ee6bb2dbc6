#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "tauber/arith.hpp"
#include "tauber/error.hpp"
#include "tauber/lfunctions.hpp"
#include "tauber/moments.hpp"

using namespace tauber;
using cplx = std::complex<double>;
using arith::Rational;

namespace {

const moments::Evaluator kOne = [](cplx) { return cplx(1.0); };
const moments::Evaluator kZeta = [](cplx s) { return lfun::riemann_zeta(s); };

cplx closed_form_one(double T, double Z) {
  const cplx I(0, 1);
  const double lz = std::log(Z);
  return (std::exp(I * (2 * T * lz)) - std::exp(I * (T * lz))) / (I * lz);
}

}  // namespace

TEST_CASE("gauss-kronrod quadrature") {
  const auto r = moments::integrate([](double t) { return cplx(std::cos(t), 0.0); }, 0.0, 10.0, 1.0, 1e-12);
  CHECK(std::abs(r.value - std::sin(10.0)) < 1e-12);
  const auto p = moments::integrate([](double t) { return cplx(t * t, t); }, 0.0, 3.0, 5.0, 1e-12);
  CHECK(std::abs(p.value - cplx(9.0, 4.5)) < 1e-12);
  CHECK_THROWS_AS(moments::integrate([](double) { return cplx(1.0); }, 1.0, 1.0, 1.0, 1e-6), Error);
}

TEST_CASE("twisted moment of the constant function") {
  for (double T : {3.0, 57.5, 400.0}) {
    for (double Z : {2.0, std::numbers::e, 30.0}) {
      const auto m = moments::twisted_moment(kOne, 0.5, T, Z, 1e-12);
      CHECK(std::abs(m.value - closed_form_one(T, Z)) < 1e-10 * std::abs(closed_form_one(T, Z)) + 1e-14);
      CHECK(m.abs_value <= 2 / std::log(Z) + 1e-12);
    }
  }
  CHECK_THROWS_AS(moments::twisted_moment(kZeta, 0.5, 100.0, 1.0), Error);
  CHECK_THROWS_AS(moments::twisted_moment(kOne, 0.5, 1.0, 3.0), Error);
  CHECK_THROWS_AS(moments::twisted_moment(kOne, 0.5, 4000.0, 3.0), Error);
}

TEST_CASE("twisted moment of zeta at sigma = 2 against termwise integration") {
  const double T = 10, Z = std::numbers::e, sigma = 2;
  const int N = 1000000;
  cplx oracle = 0;
  const cplx I(0, 1);
  for (int n = 1; n <= N; ++n) {
    const double c = std::log(Z) - std::log(static_cast<double>(n));
    const cplx piece = (std::exp(I * (2 * T * c)) - std::exp(I * (T * c))) / (I * c);
    oracle += std::pow(static_cast<double>(n), -sigma) * piece;
  }
  const double tail = T / N;
  const auto m = moments::twisted_moment(kZeta, sigma, T, Z, 1e-10);
  CHECK(std::abs(m.value - oracle) < tail + 1e-8);
  CHECK(m.abs_value <= std::numbers::pi * std::numbers::pi / 6 * T);
}

TEST_CASE("conjugate symmetry for a real Dirichlet polynomial") {
  const moments::Evaluator poly = [](cplx s) { return 1.0 + 0.5 * std::pow(cplx(2.0), -s) - 0.25 * std::pow(cplx(3.0), -s); };
  const double sigma = 0.7, T = 40, Z = 5;
  const auto pos = moments::twisted_moment(poly, sigma, T, Z, 1e-12);
  const auto neg = moments::twisted_integral(poly, sigma, -2 * T, -T, Z, 1e-12);
  CHECK(std::abs(std::conj(pos.value) - neg.value) < 1e-10);
  // Z -> 1/Z on the polynomial with conjugated argument gives the same integral.
  const auto flip = moments::twisted_integral(poly, sigma, -2 * T, -T, 1 / Z, 1e-12);
  const auto flip_pos = moments::twisted_integral(poly, sigma, T, 2 * T, 1 / Z, 1e-12);
  CHECK(std::abs(std::conj(flip_pos.value) - flip.value) < 1e-10);
}

TEST_CASE("integral moments") {
  CHECK(moments::integral_moment(1, 0.0, 0.7, 123.0) == doctest::Approx(123.0));
  // int_0^T |zeta(2+it)|^2 dt = sum_{j,k} (jk)^{-2} int_0^T (k/j)^{it} dt
  const double T = 10;
  const int J = 3000;
  double oracle = 0;
  for (int j = 1; j <= J; ++j) {
    for (int k = 1; k <= J; ++k) {
      const double w = 1.0 / (static_cast<double>(j) * j * static_cast<double>(k) * k);
      const double c = std::log(static_cast<double>(k) / j);
      oracle += j == k ? w * T : w * std::sin(T * c) / c;
    }
  }
  const double zeta2 = std::numbers::pi * std::numbers::pi / 6;
  const double tail = 2 * zeta2 * T / J + T / (static_cast<double>(J) * J);
  CHECK(std::abs(moments::integral_moment(1, 2.0, 2.0, T, 1e-10) - oracle) < tail);
  const double I = moments::integral_moment(1, 2.0, 0.5, 500.0, 1e-4);
  const double ratio = I / (500.0 * std::log(500.0 / (2 * std::numbers::pi)));
  CHECK(ratio >= 0.8);
  CHECK(ratio <= 1.25);
  CHECK_THROWS_AS(moments::integral_moment(1, 2.0, 1.0, 10.0), Error);
  CHECK_THROWS_AS(moments::integral_moment(1, -2.0, 0.5, 10.0), Error);
}

TEST_CASE("growth fit") {
  std::vector<moments::MomentSample> lin, cubic;
  for (double T : {100.0, 200.0, 400.0, 800.0, 1600.0}) {
    moments::MomentSample s;
    s.T = T;
    s.abs_value = 3.5 * T;
    lin.push_back(s);
    s.abs_value = T * std::pow(std::log(T), 3.0);
    cubic.push_back(s);
  }
  const auto f = moments::fit_growth(lin);
  CHECK(f.Q == doctest::Approx(3.5).epsilon(1e-8));
  CHECK(f.eta == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(std::abs(f.beta) < 1e-7);
  const auto g = moments::fit_growth(cubic);
  CHECK(g.eta == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(g.beta == doctest::Approx(3.0).epsilon(1e-8));
  lin.resize(3);
  CHECK_THROWS_AS(moments::fit_growth(lin), Error);
}

TEST_CASE("growth fit of zeta on the critical line") {
  std::vector<moments::MomentSample> samples;
  for (double T : {100.0, 200.0, 400.0, 800.0}) {
    moments::MomentSample s;
    s.sigma = 0.5;
    s.T = T;
    s.abs_value = moments::integral_moment(1, 2.0, 0.5, T, 1e-4);
    samples.push_back(s);
  }
  CHECK(std::abs(moments::fit_growth(samples, 1.0).eta - 1.0) <= 0.15);
}

TEST_CASE("holder budgets") {
  const auto b3 = moments::holder_budget(3);
  CHECK(b3.beta == 1);
  CHECK(b3.eta == 1.0);
  const auto b16 = moments::holder_budget(16);
  CHECK(b16.beta == 16);
  CHECK(b16.uses_pointwise_log);
  for (int n : {10, 14, 22}) CHECK(moments::holder_budget(n).beta == 2);
  for (int n : {3, 4, 6, 8, 16, 10}) {
    Rational total = 0;
    for (const auto& f : moments::holder_budget(n).factors) total += f.weight;
    CAPTURE(n);
    CHECK(total == 1);
  }
  CHECK_THROWS_AS(moments::holder_budget(9), Error);
}

TEST_CASE("moment log powers") {
  CHECK(moments::moment_log_power(Rational(1, 2), 2, 1) == 1);
  CHECK(moments::moment_log_power(Rational(3, 5), 2, 1) == 0);
  CHECK_THROWS_AS(moments::moment_log_power(Rational(1, 4), 2, 1), Error);
  CHECK(moments::moment_log_power(Rational(1, 2), 4, 1) == 4);
  CHECK(moments::moment_log_power(Rational(1, 2), 2, 2) == 2);
  CHECK(moments::moment_log_power(Rational(3, 4), 4, 2) == 8);
  CHECK_THROWS_AS(moments::moment_log_power(Rational(1, 2), 3, 1), Error);
  CHECK(moments::moment_log_power(Rational(3, 2), -2, 1) == 0);
  CHECK_THROWS_AS(moments::moment_log_power(Rational(1, 2), -2, 1), Error);
}
