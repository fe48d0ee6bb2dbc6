#include <doctest.h>

#include <cstdint>
#include <vector>

#include "tauber/arith.hpp"
#include "tauber/error.hpp"

using namespace tauber;
using arith::TruncPoly;

namespace {

bool is_prime_trial(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::int64_t phi_brute(std::int64_t n) {
  std::int64_t c = 0;
  for (std::int64_t k = 1; k <= n; ++k) c += arith::gcd(k, n) == 1;
  return c;
}

int mobius_brute(std::int64_t n) {
  int sign = 1;
  for (std::int64_t d = 2; d <= n; ++d) {
    if (n % d) continue;
    if (!is_prime_trial(d)) continue;
    if ((n / d) % d == 0) return 0;
    sign = -sign;
  }
  return sign;
}

}  // namespace

TEST_CASE("primes_up_to") {
  CHECK(arith::primes_up_to(10) == std::vector<std::int64_t>{2, 3, 5, 7});
  CHECK(arith::primes_up_to(1).empty());
  CHECK(arith::primes_up_to(100).size() == 25);
  std::vector<std::int64_t> oracle;
  for (std::int64_t n = 0; n <= 5000; ++n) {
    if (is_prime_trial(n)) oracle.push_back(n);
  }
  CHECK(arith::primes_up_to(5000) == oracle);
}

TEST_CASE("multiplicative functions against brute force") {
  for (std::int64_t n = 1; n <= 400; ++n) {
    CAPTURE(n);
    CHECK(arith::euler_phi(n) == phi_brute(n));
    CHECK(arith::mobius(n) == mobius_brute(n));
    std::int64_t prod = 1;
    for (auto [p, e] : arith::factorize(n)) prod *= arith::ipow(p, e);
    CHECK(prod == n);
    std::int64_t count = 0;
    for (std::int64_t d = 1; d <= n; ++d) count += n % d == 0;
    CHECK(static_cast<std::int64_t>(arith::divisors(n).size()) == count);
  }
  const auto spf = arith::smallest_prime_factors(100);
  CHECK(spf[91] == 7);
  CHECK(spf[97] == 97);
}

TEST_CASE("modular helpers") {
  CHECK(arith::powmod(3, 200, 1000003) == arith::powmod(arith::powmod(3, 100, 1000003), 2, 1000003));
  CHECK(arith::multiplicative_order(2, 7) == 3);
  CHECK(arith::multiplicative_order(3, 7) == 6);
  CHECK(arith::valuation(48, 2) == 4);
  CHECK(arith::lcm(4, 6) == 12);
  CHECK_THROWS_AS(arith::multiplicative_order(2, 4), Error);
  CHECK_THROWS_AS(arith::ipow(10, 30), Error);
}

TEST_CASE("truncated polynomial products") {
  CHECK(arith::poly_mul_trunc(TruncPoly({1, 0, 1}, 10), TruncPoly({1, 0, -1}, 10), 10) == TruncPoly({1, 0, 0, 0, -1}, 10));
  CHECK(arith::poly_mul_trunc(TruncPoly({1, 0, 2}, 10), TruncPoly::one(10), 10) == TruncPoly({1, 0, 2}, 10));
  CHECK(arith::poly_mul_trunc(TruncPoly({1, 0, 1, 2}, 4), TruncPoly({1, 0, -1}, 4), 4) == TruncPoly({1, 0, 0, 2, -1}, 4));
  CHECK(arith::poly_add(TruncPoly({1, 1}, 5), TruncPoly({0, -1, 3}, 5)) == TruncPoly({1, 0, 3}, 5));
}

TEST_CASE("binomial_power matches repeated products") {
  const int trunc = 12;
  TruncPoly base({1, 0, -1}, trunc);
  TruncPoly pow3 = TruncPoly::one(trunc);
  for (int i = 0; i < 3; ++i) pow3 = arith::poly_mul_trunc(pow3, base, trunc);
  CHECK(TruncPoly::binomial_power(2, 3, trunc) == pow3);
  // (1 - u)^{-1} (1 - u) = 1
  CHECK(arith::poly_mul_trunc(TruncPoly::binomial_power(1, -1, trunc), TruncPoly::binomial_power(1, 1, trunc), trunc) ==
        TruncPoly::one(trunc));
  const auto inv2 = TruncPoly::binomial_power(1, -2, trunc);
  for (int k = 0; k <= trunc; ++k) CHECK(inv2.coeff(k) == k + 1);
  CHECK(TruncPoly({1, 0, 0, 5}, 6).first_nonconstant_power() == 3);
  CHECK(TruncPoly::one(6).first_nonconstant_power() == -1);
  CHECK(TruncPoly({1, 0, 1}, 6).evaluate(0.5) == doctest::Approx(1.25));
}

TEST_CASE("group invariants") {
  auto g3 = arith::group_invariants(3);
  CHECK(g3.ell == 3);
  CHECK(g3.a == 2);
  CHECK(g3.b == 1);
  CHECK(g3.gd_sizes.at(3) == 2);
  auto g16 = arith::group_invariants(16);
  CHECK(g16.ell == 2);
  CHECK(g16.a == 8);
  CHECK(g16.b == 1);
  auto g2 = arith::group_invariants(2);
  CHECK(g2.ell == 2);
  CHECK(g2.a == 1);
  CHECK(g2.b == 1);
  CHECK(g2.gd_sizes.at(2) == 1);
  for (int n = 2; n <= 30; ++n) {
    std::int64_t total = 0;
    for (auto [d, size] : arith::group_invariants(n).gd_sizes) {
      CHECK(size == arith::euler_phi(d));
      total += size;
    }
    CHECK(total == n);
  }
  CHECK_THROWS_AS(arith::group_invariants(1), Error);
}
