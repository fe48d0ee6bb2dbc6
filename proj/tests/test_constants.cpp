#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>

#include "tauber/arith.hpp"
#include "tauber/constants.hpp"
#include "tauber/error.hpp"
#include "tauber/fields.hpp"
#include "tauber/lfunctions.hpp"
#include "tauber/series.hpp"

using namespace tauber;
using constants::ClassEulerProduct;
constexpr double kPi = std::numbers::pi;
constexpr double kZeta2 = kPi * kPi / 6;

namespace {

double factor(const constants::ConstantResult& r, const std::string& name) {
  for (const auto& [k, v] : r.factors) {
    if (k == name) return v;
  }
  FAIL("missing factor " << name);
  return 0;
}

}  // namespace

TEST_CASE("class euler products") {
  ClassEulerProduct one;
  const auto t = constants::class_euler_product(one);
  CHECK(t.value == 1.0);
  CHECK(t.tail_bound == 0.0);

  ClassEulerProduct all;
  all.numerator = {1, -1};
  all.x = 2;
  const auto direct = constants::class_euler_product(all);
  CHECK(std::abs(direct.value - 1 / kZeta2) <= direct.error_bound);
  const auto fast = constants::class_euler_product_accelerated(all);
  CHECK(std::abs(fast.value - 1 / kZeta2) <= fast.error_bound + 1e-15);
  CHECK(fast.error_bound < 1e-3 * direct.error_bound);

  // prod_{p = 1 mod 4} (1 - p^{-2})^2 = 1 / (zeta(2) (3/4) L(2, chi_4) prod_{p = 3 mod 4} (1 - p^{-4}))
  double d3 = 1;
  for (auto p : arith::primes_up_to(1000000)) {
    if (p % 4 == 3) d3 *= 1 - std::pow(static_cast<double>(p), -4.0);
  }
  const double L2 = lfun::dirichlet_L(2.0, fields::characters_of_exact_order(4, 2).at(0)).real();
  const double oracle = std::sqrt(1 / (kZeta2 * 0.75 * L2 * d3));
  ClassEulerProduct c1;
  c1.modulus = 4;
  c1.residues = {1};
  c1.numerator = {1, -1};
  c1.x = 2;
  const auto got = constants::class_euler_product_accelerated(c1);
  CHECK(std::abs(got.value - oracle) <= got.error_bound + 1e-13);
  const auto got_direct = constants::class_euler_product(c1);
  CHECK(std::abs(got_direct.value - oracle) <= got_direct.error_bound + 1e-13);

  ClassEulerProduct slow;
  slow.numerator = {1, -1};
  slow.x = 1;
  CHECK_THROWS_AS(constants::class_euler_product(slow), Error);
}

TEST_CASE("c2 for C4") {
  const auto printed = constants::c2_C4(series::printed_wild_factor_4_2());
  CHECK(factor(printed, "prefactor") == doctest::Approx((28 + std::sqrt(2.0)) / (24 * kZeta2)).epsilon(1e-14));
  CHECK(factor(printed, "subtracted") == doctest::Approx(-1 / kZeta2).epsilon(1e-15));
  const auto c2 = constants::c2_C4();
  CHECK(c2.value > 0);
  CHECK(c2.error_bound < 1e-9);
  CHECK(c2.value == doctest::Approx(0.2441053465).epsilon(1e-9));
}

TEST_CASE("c3 for C4") {
  const auto printed = constants::c3_C4(series::printed_wild_factor_4_2());
  CHECK(factor(printed, "L(1,chi_4)") == doctest::Approx(kPi / 4).epsilon(1e-15));
  CHECK(factor(printed, "prefactor") == doctest::Approx(3 * (4 - std::pow(2.0, 2.0 / 3)) / 16).epsilon(1e-14));
  const auto c3 = constants::c3_C4();
  CHECK(factor(c3, "zeta(2/3)") < 0);
  CHECK(c3.value < 0);
  CHECK(c3.error_bound < 1e-9);
}

TEST_CASE("c2 agrees with a fit of the enumerated C4 count") {
  const auto s = series::prefix_sums(series::coefficient_sieve(series::make_local_factor_system(4), 10000000));
  const double c3 = constants::c3_C4().value;
  const double X = 1e7;
  const double c2_fit = (static_cast<double>(s[10000000]) - c3 * std::cbrt(X)) / std::sqrt(X) - 1 / kZeta2;
  CHECK(c2_fit == doctest::Approx(constants::c2_C4().value).epsilon(0.02));
}

TEST_CASE("leading residues") {
  const auto r2 = constants::leading_residue(2);
  CHECK(std::abs(r2.value - 1 / kZeta2) <= r2.error_bound + 1e-14);
  const auto r4 = constants::leading_residue(4);
  CHECK(std::abs(r4.value - (constants::c2_C4().value + 1 / kZeta2)) < 1e-8);
  for (int n : {3, 5, 6, 8, 16}) {
    CAPTURE(n);
    const auto r = constants::leading_residue(n);
    CHECK(r.value > 0);
    CHECK(r.error_bound < 1e-6 * r.value);
  }
}

TEST_CASE("leading residue matches enumerated counts") {
  // hom_count(n, X) ~ c X^{1/a}; compare with the count itself at the top of the range.
  struct Case {
    int n;
    double tol;
  };
  for (auto c : {Case{2, 0.05}, Case{3, 0.03}, Case{4, 0.05}}) {
    CAPTURE(c.n);
    const int a = arith::group_invariants(c.n).a;
    const auto s = series::prefix_sums(series::coefficient_sieve(series::make_local_factor_system(c.n), 10000000));
    // least squares of N(X) on X^{1/a} over [1e5, 1e7]
    double num = 0, den = 0;
    for (double X = 1e5; X <= 1e7 * 1.0001; X *= std::sqrt(10.0)) {
      const double b = std::pow(X, 1.0 / a);
      num += b * static_cast<double>(s[static_cast<std::size_t>(X)]);
      den += b * b;
    }
    CHECK(num / den == doctest::Approx(constants::leading_residue(c.n).value).epsilon(c.tol));
  }
}

TEST_CASE("nonvanishing") {
  for (int n : {3, 4, 6, 8, 16}) {
    for (auto d : arith::divisors(n)) {
      if (d == 1) continue;
      const auto r = constants::nonvanishing_check(n, static_cast<int>(d));
      CAPTURE(n);
      CAPTURE(d);
      CHECK(r.nonvanishing);
      CHECK(std::abs(r.product) > 10 * r.error_bound);
      if (d == arith::factorize(n).front().first) CHECK(r.factors.empty());
    }
  }
  const auto r44 = constants::nonvanishing_check(4, 4);
  REQUIRE(r44.factors.size() == 1);
  CHECK(r44.product == doctest::Approx(lfun::riemann_zeta(2.0 / 3.0).real()).epsilon(1e-12));
  CHECK(r44.product < 0);
  const auto r66 = constants::nonvanishing_check(6, 6);
  const double expect = lfun::riemann_zeta(0.6).real() * lfun::dedekind_zeta_cyclotomic(3, 0.8).real();
  CHECK(r66.product == doctest::Approx(expect).epsilon(1e-10));
  CHECK_THROWS_AS(constants::nonvanishing_check(4, 3), Error);
}

TEST_CASE("constant json") {
  const auto j = constants::to_json(constants::c2_C4());
  CHECK(j.find("\"name\":\"c2_C4\"") != std::string::npos);
  CHECK(j.find("\"error_bound\":") != std::string::npos);
}
