#pragma once

#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace tauber::arith {

using BigInt = mpz_class;
using Rational = mpq_class;

// ---------------------------------------------------------------------------
// Elementary number theory on machine integers.
// ---------------------------------------------------------------------------

std::vector<std::int64_t> primes_up_to(std::int64_t x);

// Smallest-prime-factor table for 0..x (spf[0] = spf[1] = 0).
std::vector<std::int32_t> smallest_prime_factors(std::int64_t x);

// Prime factorisation as (p, e) pairs with p ascending. n >= 1.
std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n);

std::vector<std::int64_t> divisors(std::int64_t n);
std::int64_t euler_phi(std::int64_t n);
int mobius(std::int64_t n);
std::int64_t gcd(std::int64_t a, std::int64_t b);
std::int64_t lcm(std::int64_t a, std::int64_t b);
std::int64_t powmod(std::int64_t base, std::int64_t exp, std::int64_t mod);
std::int64_t ipow(std::int64_t base, int exp);

// Order of a in (Z/mZ)*; requires gcd(a, m) = 1.
std::int64_t multiplicative_order(std::int64_t a, std::int64_t m);

// p-adic valuation of n != 0.
int valuation(std::int64_t n, std::int64_t p);

// ---------------------------------------------------------------------------
// Truncated integer polynomials in u (u stands for p^{-s}).
// ---------------------------------------------------------------------------

class TruncPoly {
 public:
  TruncPoly() = default;
  TruncPoly(std::vector<BigInt> coeffs, int trunc);
  TruncPoly(std::initializer_list<long> coeffs, int trunc);

  // 1 + 0u + ... as a constant polynomial.
  static TruncPoly one(int trunc);
  // coeff * u^power.
  static TruncPoly monomial(const BigInt& coeff, int power, int trunc);
  // (1 - u^k)^e expanded to degree trunc; e may be negative.
  static TruncPoly binomial_power(int k, long e, int trunc);

  int trunc() const { return trunc_; }
  // Index of the highest nonzero coefficient, or -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<BigInt>& coeffs() const { return coeffs_; }
  BigInt coeff(int power) const;

  // Lowest positive power with a nonzero coefficient, or -1 if none.
  int first_nonconstant_power() const;

  double evaluate(double u) const;
  std::string to_string() const;

  friend bool operator==(const TruncPoly& lhs, const TruncPoly& rhs) {
    return lhs.coeffs_ == rhs.coeffs_;
  }

 private:
  void normalize();

  std::vector<BigInt> coeffs_;
  int trunc_ = 0;
};

TruncPoly poly_mul_trunc(const TruncPoly& p, const TruncPoly& q, int trunc);
TruncPoly poly_add(const TruncPoly& p, const TruncPoly& q);

// ---------------------------------------------------------------------------
// Cyclic-group invariants.
// ---------------------------------------------------------------------------

struct GroupInvariants {
  int n = 0;
  int ell = 0;  // smallest prime divisor of n
  int a = 0;    // n (1 - 1/ell)
  int b = 0;    // (|G[ell]| - 1) / phi(ell)
  std::map<int, int> gd_sizes;  // d -> number of elements of exact order d
};

GroupInvariants group_invariants(int n);

}  // namespace tauber::arith
