#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tauber/arith.hpp"

namespace tauber::series {

using arith::TruncPoly;

// Factor for primes p = residue (mod modulus), p not dividing n.
struct TameRule {
  std::int64_t modulus = 1;
  std::int64_t residue = 0;
  TruncPoly factor;
};

// Wild Euler factors keyed by (n, p). Text format: one "n p c0 c1 c2 ..." line per
// entry, coefficients by ascending power of u; '#' starts a comment.
class WildFactorTable {
 public:
  // Only the (4, 2) entry, as recomputed from the local characters.
  static WildFactorTable builtin();
  // builtin() merged with the shipped data file.
  static WildFactorTable standard();
  static WildFactorTable parse(const std::string& text);
  static WildFactorTable load(const std::string& path);

  void set(int n, std::int64_t p, TruncPoly factor);
  bool has(int n, std::int64_t p) const;
  // Throws Error("missing_wild_factor") when absent.
  const TruncPoly& get(int n, std::int64_t p) const;
  std::string serialize() const;
  const std::map<std::pair<int, std::int64_t>, TruncPoly>& entries() const { return entries_; }

 private:
  std::map<std::pair<int, std::int64_t>, TruncPoly> entries_;
};

// The variant (4, 2) factor 1 + u^2 + 2u^6 + 4u^11; it disagrees with the field count at X = 4.
TruncPoly printed_wild_factor_4_2();

std::string default_wild_factor_path();

struct LocalFactorSystem {
  int n = 0;
  std::vector<TameRule> tame_rules;  // one per unit class mod n
  std::map<std::int64_t, TruncPoly> wild_overrides;

  const TruncPoly& factor_for(std::int64_t p) const;
};

// sum_{d | n} phi(d) [p = 1 mod d] u^{n(1 - 1/d)}; rejects p | n.
TruncPoly tame_local_factor(int n, std::int64_t p);
TruncPoly wild_local_factor(int n, std::int64_t p, const WildFactorTable& table);

LocalFactorSystem make_local_factor_system(int n, const WildFactorTable& table = WildFactorTable::standard());

struct CoeffArray {
  std::int64_t bound = 0;
  std::vector<std::int64_t> a;  // a[0] unused

  std::int64_t operator[](std::int64_t m) const { return a[static_cast<std::size_t>(m)]; }
};

CoeffArray coefficient_sieve(const LocalFactorSystem& sys, std::int64_t x);
std::int64_t summatory(const CoeffArray& c, std::int64_t x);
// s[X] = summatory(c, X) for X = 0..bound.
std::vector<std::int64_t> prefix_sums(const CoeffArray& c);

// sum_{d | n} w_d counts[d]; counts[1] defaults to 1.
std::int64_t etale_field_decomposition(int n, const std::map<int, std::int64_t>& field_counts,
                                       const std::map<int, std::int64_t>& weights);
// Weights fixed against the field oracle: w_d = phi(d).
std::map<int, std::int64_t> frozen_etale_weights(int n);

struct ClassResidual {
  std::int64_t modulus = 1;
  std::int64_t residue = 0;
  TruncPoly local_factor;
  TruncPoly residual;
  std::map<int, std::int64_t> zeta_exponents;  // k -> e for the factor (1 - u^k)^e
  int first_bad_degree = -1;                   // -1 when degrees 1..2a vanish
};

struct FactorizationReport {
  int n = 0;
  int trunc = 0;
  int two_a = 0;
  std::vector<ClassResidual> classes;
  bool passed() const;
};

// H = D * prod_{d>1} zeta_{Q(zeta_d)}(n(1-1/d)s)^{-|G_d|/phi(d)}
//       * zeta_{Q(zeta_ell)^+}(2as)^{x} * zeta_{Q(zeta_ell)}(2as)^{y}.
// derived: x = |G_ell|/(ell-1), y = |G_ell|^2/(2ell-2), counting every prime above p.
// printed: x = |G_ell|/2, y = (2ell-3)/(2ell-2)|G_ell|^2 - (ell-2)/2 |G_ell|.
// For ell = 2 both fields are Q, only x + y matters, and the printed split is used.
enum class ExponentRule { derived, printed };

FactorizationReport zeta_factorization_check(int n, int trunc, ExponentRule rule = ExponentRule::derived);

void write_coefficients_csv(std::ostream& os, const CoeffArray& c);

}  // namespace tauber::series
