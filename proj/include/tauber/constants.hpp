#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tauber/arith.hpp"
#include "tauber/series.hpp"

namespace tauber::constants {

// prod over primes p <= P with p mod q in residues (and p not excluded) of
// numerator(v) / denominator(v), v = p^{-x}; coefficients by ascending power.
struct ClassEulerProduct {
  std::int64_t modulus = 1;
  std::vector<std::int64_t> residues{0};
  std::vector<double> numerator{1.0};
  std::vector<double> denominator{1.0};
  double x = 1.0;
  std::int64_t P = 1000000;
  std::vector<std::int64_t> excluded;
};

struct ProductValue {
  double value = 1.0;
  double error_bound = 0.0;
  double decay = 0.0;       // w with term - 1 = O(p^{-w})
  double tail_bound = 0.0;  // bound on |log| of the omitted part
};

// Truncated product with tail sum_{p>P} |log term| <= 2c * 1.3 w P^{1-w} / ((w-1) log P).
// Throws "slow_convergence" for w <= 1 and "tail_bound_failure" if |term - 1| > 1/2 past P.
ProductValue class_euler_product(const ClassEulerProduct& spec);

// Same product with the tail summed as sum_j c_j P_{q,r}(j x), where log term = sum c_j v^j
// and P_{q,r} is the prime zeta function of the class beyond P.
ProductValue class_euler_product_accelerated(const ClassEulerProduct& spec);

struct ConstantResult {
  std::string name;
  double value = 0.0;
  double error_bound = 0.0;
  std::vector<std::pair<std::string, double>> factors;
};

std::string to_json(const ConstantResult& r);

// Residue of the C4 etale series at s = 1/2 minus 1/zeta(2), for a given local factor at 2.
ConstantResult c2_C4(const arith::TruncPoly& wild_at_2);
ConstantResult c2_C4();
// Residue at s = 1/3.
ConstantResult c3_C4(const arith::TruncPoly& wild_at_2);
ConstantResult c3_C4();

// Coefficient of X^{1/a} in the etale count of C_n, a = n(1 - 1/ell).
ConstantResult leading_residue(int n, const series::WildFactorTable& table = series::WildFactorTable::standard());

struct NonvanishingFactor {
  int m = 0;
  arith::Rational s;
  double value = 0.0;
  double error_bound = 0.0;
};

struct NonvanishingReport {
  int n = 0;
  int d = 0;
  bool nonvanishing = false;
  double product = 1.0;
  double error_bound = 0.0;
  std::vector<NonvanishingFactor> factors;
};

// prod_{m | n, 1 < m < d} zeta_{Q(zeta_m)}((1 - 1/m) / (1 - 1/d)); nonzero when |value| > 10 error.
NonvanishingReport nonvanishing_check(int n, int d);

}  // namespace tauber::constants
