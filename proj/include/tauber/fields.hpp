#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "tauber/arith.hpp"

namespace tauber::fields {

// Cyclic decomposition of (Z/p^e Z)*. Generators are given modulo p^e.
struct PrimePowerPart {
  std::int64_t p = 0;
  int e = 0;
  std::int64_t modulus = 1;
  std::vector<std::int64_t> local_generators;
  std::vector<std::int64_t> orders;
};

// (Z/mZ)* as a product of prime-power parts, each part cyclic or (for 2^e, e >= 3)
// a product of two cyclic groups generated by -1 and 5.
struct UnitGroup {
  std::int64_t modulus = 1;
  std::vector<PrimePowerPart> parts;

  // Generators lifted to Z/mZ by CRT (1 on the other parts), one per cyclic factor.
  std::vector<std::int64_t> generators() const;
  std::vector<std::int64_t> orders() const;
  std::int64_t size() const;
};

UnitGroup unit_group_structure(std::int64_t m);

// chi(g_i) = exp(2 pi i exponents[i] / orders[i]) on the flattened generators.
class DirichletCharacter {
 public:
  DirichletCharacter(UnitGroup group, std::vector<std::int64_t> exponents);

  // The trivial character modulo 1.
  static DirichletCharacter trivial();

  std::int64_t modulus() const { return group_.modulus; }
  const UnitGroup& group() const { return group_; }
  const std::vector<std::int64_t>& exponents() const { return exponents_; }

  std::int64_t order() const;
  std::int64_t conductor() const;
  bool is_primitive() const { return conductor() == modulus(); }
  bool is_principal() const;
  bool is_real() const { return order() <= 2; }

  DirichletCharacter pow(std::int64_t k) const;
  DirichletCharacter conj() const { return pow(-1); }
  // The primitive character mod conductor() inducing this one.
  DirichletCharacter primitive() const;

  // Values chi(r) for r = 0..m-1; zero off the unit group.
  std::vector<std::complex<double>> values() const;
  std::complex<double> value(std::int64_t r) const;

  friend bool operator==(const DirichletCharacter& a, const DirichletCharacter& b) {
    return a.modulus() == b.modulus() && a.exponents_ == b.exponents_;
  }

 private:
  UnitGroup group_;
  std::vector<std::int64_t> exponents_;
};

std::vector<DirichletCharacter> all_characters(std::int64_t m);
std::vector<DirichletCharacter> characters_of_exact_order(std::int64_t m, std::int64_t n);
std::int64_t conductor(const DirichletCharacter& chi);

// Conductor exponent of a character on a single prime-power part.
int local_conductor_exponent(const PrimePowerPart& part, const std::int64_t* exps);

// One Galois orbit of primitive characters of exact order n, i.e. one C_n-field.
struct CharacterOrbit {
  int n = 0;
  std::vector<std::int64_t> representative;  // lexicographically least exponent list
  std::int64_t conductor = 0;
  std::int64_t field_discriminant = 0;  // |disc| = prod_{k=1}^{n-1} cond(chi^k)
  std::int64_t orbit_size = 0;
};

struct FieldCount {
  std::int64_t count = 0;
  std::vector<std::int64_t> discriminants;  // ascending, with multiplicity
  std::vector<CharacterOrbit> orbits;       // sorted by (disc, conductor, representative)
};

// Cyclic degree-n fields with |disc| <= x. search_bound = 0 means the minimal
// sufficient conductor bound floor(x^{1/phi(n)}).
FieldCount count_fields(int n, std::int64_t x, std::int64_t search_bound = 0);

// 1 + sum_{d | n, d > 1} phi(d) #F(C_d; x^{d/n}).
std::int64_t hom_count(int n, std::int64_t x);

// hom_count(n, X) for every X in 0..x_max (index X).
std::vector<std::int64_t> hom_count_table(int n, std::int64_t x_max);

// Local Euler factor at p of the C_n-etale series, read off from the characters of
// Z_p^* of order dividing n: each contributes u^{v_p(prod_k cond(chi^k))}.
arith::TruncPoly derive_local_factor(int n, std::int64_t p);

// Largest y >= 0 with y^k <= x.
std::int64_t integer_root(std::int64_t x, int k);

}  // namespace tauber::fields
