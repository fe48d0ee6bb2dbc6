#include "tauber/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "tauber/error.hpp"

namespace tauber::arith {

std::vector<std::int64_t> primes_up_to(std::int64_t x) {
  std::vector<std::int64_t> primes;
  if (x < 2) return primes;
  std::vector<bool> composite(static_cast<std::size_t>(x) + 1, false);
  for (std::int64_t i = 2; i <= x; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    if (i > x / i) continue;
    for (std::int64_t j = i * i; j <= x; j += i) composite[j] = true;
  }
  return primes;
}

std::vector<std::int32_t> smallest_prime_factors(std::int64_t x) {
  std::vector<std::int32_t> spf(static_cast<std::size_t>(std::max<std::int64_t>(x, 1)) + 1, 0);
  for (std::int64_t i = 2; i <= x; ++i) {
    if (spf[i] != 0) continue;
    for (std::int64_t j = i; j <= x; j += i) {
      if (spf[j] == 0) spf[j] = static_cast<std::int32_t>(i);
    }
  }
  return spf;
}

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
  if (n < 1) throw Error("invalid_argument", "factorize: n must be positive");
  std::vector<std::pair<std::int64_t, int>> out;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<std::int64_t> divisors(std::int64_t n) {
  std::vector<std::int64_t> divs{1};
  for (auto [p, e] : factorize(n)) {
    const std::size_t count = divs.size();
    std::int64_t pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < count; ++i) divs.push_back(divs[i] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

std::int64_t euler_phi(std::int64_t n) {
  std::int64_t result = n;
  for (auto [p, e] : factorize(n)) result = result / p * (p - 1);
  return result;
}

int mobius(std::int64_t n) {
  int sign = 1;
  for (auto [p, e] : factorize(n)) {
    if (e > 1) return 0;
    sign = -sign;
  }
  return sign;
}

std::int64_t gcd(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }
std::int64_t lcm(std::int64_t a, std::int64_t b) { return std::lcm(a, b); }

std::int64_t powmod(std::int64_t base, std::int64_t exp, std::int64_t mod) {
  if (mod == 1) return 0;
  __int128 result = 1;
  __int128 b = ((base % mod) + mod) % mod;
  while (exp > 0) {
    if (exp & 1) result = result * b % mod;
    b = b * b % mod;
    exp >>= 1;
  }
  return static_cast<std::int64_t>(result);
}

std::int64_t ipow(std::int64_t base, int exp) {
  std::int64_t result = 1;
  for (int i = 0; i < exp; ++i) {
    if (__builtin_mul_overflow(result, base, &result)) {
      throw Error("overflow", "ipow: result exceeds 64 bits");
    }
  }
  return result;
}

std::int64_t multiplicative_order(std::int64_t a, std::int64_t m) {
  if (gcd(a, m) != 1) throw Error("invalid_argument", "multiplicative_order: gcd(a, m) != 1");
  if (m == 1) return 1;
  std::int64_t order = euler_phi(m);
  for (auto [p, e] : factorize(order)) {
    while (order % p == 0 && powmod(a, order / p, m) == 1) order /= p;
  }
  return order;
}

int valuation(std::int64_t n, std::int64_t p) {
  if (n == 0) throw Error("invalid_argument", "valuation of zero");
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

// ---------------------------------------------------------------------------

TruncPoly::TruncPoly(std::vector<BigInt> coeffs, int trunc) : coeffs_(std::move(coeffs)), trunc_(trunc) {
  if (trunc < 0) throw Error("invalid_argument", "TruncPoly: negative truncation");
  normalize();
}

TruncPoly::TruncPoly(std::initializer_list<long> coeffs, int trunc) : trunc_(trunc) {
  if (trunc < 0) throw Error("invalid_argument", "TruncPoly: negative truncation");
  for (long c : coeffs) coeffs_.emplace_back(c);
  normalize();
}

TruncPoly TruncPoly::one(int trunc) { return TruncPoly({1}, trunc); }

TruncPoly TruncPoly::monomial(const BigInt& coeff, int power, int trunc) {
  std::vector<BigInt> c(static_cast<std::size_t>(power) + 1, 0);
  c[power] = coeff;
  return TruncPoly(std::move(c), trunc);
}

TruncPoly TruncPoly::binomial_power(int k, long e, int trunc) {
  if (k <= 0) throw Error("invalid_argument", "binomial_power: k must be positive");
  std::vector<BigInt> c(static_cast<std::size_t>(trunc) + 1, 0);
  // (1 - x)^e = sum_j binom(e, j) (-x)^j with the generalised binomial for e < 0.
  BigInt term = 1;
  for (long j = 0; static_cast<long>(k) * j <= trunc; ++j) {
    if (j > 0) {
      term *= BigInt(e - (j - 1));
      term /= BigInt(j);
      if (e >= 0 && j > e) break;
    }
    c[static_cast<std::size_t>(k * j)] = (j % 2 == 0) ? term : BigInt(-term);
  }
  return TruncPoly(std::move(c), trunc);
}

BigInt TruncPoly::coeff(int power) const {
  if (power < 0 || power >= static_cast<int>(coeffs_.size())) return 0;
  return coeffs_[power];
}

int TruncPoly::first_nonconstant_power() const {
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    if (coeffs_[i] != 0) return static_cast<int>(i);
  }
  return -1;
}

double TruncPoly::evaluate(double u) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * u + it->get_d();
  return acc;
}

std::string TruncPoly::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) os << ' ';
    os << coeffs_[i].get_str();
  }
  if (coeffs_.empty()) os << '0';
  return os.str();
}

void TruncPoly::normalize() {
  if (coeffs_.size() > static_cast<std::size_t>(trunc_) + 1) coeffs_.resize(static_cast<std::size_t>(trunc_) + 1);
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

TruncPoly poly_mul_trunc(const TruncPoly& p, const TruncPoly& q, int trunc) {
  const auto& a = p.coeffs();
  const auto& b = q.coeffs();
  if (a.empty() || b.empty()) return TruncPoly({}, trunc);
  const std::size_t len = std::min<std::size_t>(a.size() + b.size() - 1, static_cast<std::size_t>(trunc) + 1);
  std::vector<BigInt> c(len, 0);
  for (std::size_t i = 0; i < a.size() && i < len; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size() && i + j < len; ++j) c[i + j] += a[i] * b[j];
  }
  return TruncPoly(std::move(c), trunc);
}

TruncPoly poly_add(const TruncPoly& p, const TruncPoly& q) {
  const int trunc = std::min(p.trunc(), q.trunc());
  std::vector<BigInt> c(std::max(p.coeffs().size(), q.coeffs().size()), 0);
  for (std::size_t i = 0; i < p.coeffs().size(); ++i) c[i] += p.coeffs()[i];
  for (std::size_t i = 0; i < q.coeffs().size(); ++i) c[i] += q.coeffs()[i];
  return TruncPoly(std::move(c), trunc);
}

// ---------------------------------------------------------------------------

GroupInvariants group_invariants(int n) {
  if (n < 2) throw Error("invalid_argument", "group_invariants: n must be at least 2");
  GroupInvariants g;
  g.n = n;
  g.ell = static_cast<int>(factorize(n).front().first);
  g.a = n - n / g.ell;
  // In a cyclic group the ell-torsion has exactly ell elements.
  const int ell_torsion = g.ell;
  g.b = static_cast<int>((ell_torsion - 1) / euler_phi(g.ell));
  for (std::int64_t d : divisors(n)) g.gd_sizes[static_cast<int>(d)] = static_cast<int>(euler_phi(d));
  return g;
}

}  // namespace tauber::arith
