#include "tauber/fields.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <tuple>

#include "tauber/error.hpp"

namespace tauber::fields {

using arith::euler_phi;
using arith::gcd;
using arith::lcm;

namespace {

std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
  std::int64_t g = m, x = 0, x1 = 1, a1 = ((a % m) + m) % m;
  while (a1 != 0) {
    const std::int64_t q = g / a1;
    std::tie(g, a1) = std::make_pair(a1, g - q * a1);
    std::tie(x, x1) = std::make_pair(x1, x - q * x1);
  }
  if (g != 1) throw Error("invalid_argument", "mod_inverse: not invertible");
  return ((x % m) + m) % m;
}

bool is_primitive_root_mod_p2(std::int64_t g, std::int64_t p) {
  const std::int64_t p2 = p * p;
  for (auto [q, e] : arith::factorize(p - 1)) {
    if (arith::powmod(g, (p - 1) / q, p) == 1) return false;
  }
  return arith::powmod(g, p - 1, p2) != 1;
}

// Smallest g that generates (Z/p^e)* for every e (odd p).
std::int64_t canonical_primitive_root(std::int64_t p) {
  for (std::int64_t g = 2;; ++g) {
    if (is_primitive_root_mod_p2(g, p)) return g;
  }
}

PrimePowerPart make_part(std::int64_t p, int e) {
  PrimePowerPart part;
  part.p = p;
  part.e = e;
  part.modulus = arith::ipow(p, e);
  if (p == 2) {
    if (e == 2) {
      part.local_generators = {3};
      part.orders = {2};
    } else if (e >= 3) {
      part.local_generators = {part.modulus - 1, 5};
      part.orders = {2, part.modulus / 4};
    }
  } else {
    part.local_generators = {canonical_primitive_root(p) % part.modulus};
    part.orders = {part.modulus / p * (p - 1)};
  }
  return part;
}

std::int64_t norm_mod(std::int64_t x, std::int64_t m) { return ((x % m) + m) % m; }

// Iterate over all exponent vectors with 0 <= v[i] < bound[i], stepping by step[i].
template <typename F>
void for_each_tuple(const std::vector<std::int64_t>& bound, const std::vector<std::int64_t>& step, F&& f) {
  std::vector<std::int64_t> v(bound.size(), 0);
  while (true) {
    f(v);
    std::size_t i = 0;
    for (; i < v.size(); ++i) {
      v[i] += step[i];
      if (v[i] < bound[i]) break;
      v[i] = 0;
    }
    if (i == v.size()) return;
  }
}

// Exponent vectors on a part for characters with chi^n = 1.
std::vector<std::vector<std::int64_t>> exponents_dividing(const PrimePowerPart& part, std::int64_t n) {
  std::vector<std::int64_t> step;
  for (std::int64_t o : part.orders) step.push_back(o / std::gcd(o, n));
  std::vector<std::vector<std::int64_t>> out;
  for_each_tuple(part.orders, step, [&](const std::vector<std::int64_t>& v) { out.push_back(v); });
  return out;
}

std::int64_t local_order(const PrimePowerPart& part, const std::int64_t* exps) {
  std::int64_t order = 1;
  for (std::size_t i = 0; i < part.orders.size(); ++i) {
    const std::int64_t o = part.orders[i];
    order = lcm(order, o / std::gcd(o, norm_mod(exps[i], o)));
  }
  return order;
}

// Sum over k = k0..n-1 of the conductor exponent of chi^k on one part.
int local_disc_exponent(const PrimePowerPart& part, const std::vector<std::int64_t>& exps, int n, int k0) {
  int total = 0;
  std::vector<std::int64_t> power(exps.size());
  for (int k = k0; k < n; ++k) {
    for (std::size_t i = 0; i < exps.size(); ++i) power[i] = norm_mod(exps[i] * k, part.orders[i]);
    total += local_conductor_exponent(part, power.data());
  }
  return total;
}

}  // namespace

// ---------------------------------------------------------------------------

std::vector<std::int64_t> UnitGroup::generators() const {
  std::vector<std::int64_t> gens;
  for (const auto& part : parts) {
    const std::int64_t rest = modulus / part.modulus;
    for (std::int64_t g : part.local_generators) {
      if (rest == 1) {
        gens.push_back(g);
        continue;
      }
      // x = g mod part.modulus, x = 1 mod rest
      const std::int64_t t = norm_mod((g - 1) % part.modulus * mod_inverse(rest % part.modulus, part.modulus), part.modulus);
      gens.push_back(norm_mod(1 + rest * t, modulus));
    }
  }
  return gens;
}

std::vector<std::int64_t> UnitGroup::orders() const {
  std::vector<std::int64_t> out;
  for (const auto& part : parts) out.insert(out.end(), part.orders.begin(), part.orders.end());
  return out;
}

std::int64_t UnitGroup::size() const {
  std::int64_t s = 1;
  for (std::int64_t o : orders()) s *= o;
  return s;
}

UnitGroup unit_group_structure(std::int64_t m) {
  if (m < 1) throw Error("invalid_argument", "unit_group_structure: modulus must be positive");
  UnitGroup g;
  g.modulus = m;
  if (m == 1) return g;
  for (auto [p, e] : arith::factorize(m)) {
    auto part = make_part(p, e);
    // (Z/2)* is trivial but the part is kept so the conductor bookkeeping sees p = 2.
    g.parts.push_back(std::move(part));
  }
  return g;
}

int local_conductor_exponent(const PrimePowerPart& part, const std::int64_t* exps) {
  if (part.p == 2) {
    if (part.e <= 1) return 0;
    const std::int64_t a = norm_mod(exps[0], 2);
    if (part.e == 2) return a ? 2 : 0;
    const std::int64_t b = norm_mod(exps[1], part.orders[1]);
    if (b == 0) return a ? 2 : 0;
    return part.e - arith::valuation(b, 2);
  }
  const std::int64_t x = norm_mod(exps[0], part.orders[0]);
  if (x == 0) return 0;
  return part.e - std::min(arith::valuation(x, part.p), part.e - 1);
}

// ---------------------------------------------------------------------------

DirichletCharacter::DirichletCharacter(UnitGroup group, std::vector<std::int64_t> exponents)
    : group_(std::move(group)), exponents_(std::move(exponents)) {
  const auto orders = group_.orders();
  if (orders.size() != exponents_.size()) {
    throw Error("invalid_argument", "DirichletCharacter: one exponent per generator required");
  }
  for (std::size_t i = 0; i < orders.size(); ++i) exponents_[i] = norm_mod(exponents_[i], orders[i]);
}

DirichletCharacter DirichletCharacter::trivial() { return DirichletCharacter(unit_group_structure(1), {}); }

std::int64_t DirichletCharacter::order() const {
  std::int64_t order = 1;
  std::size_t offset = 0;
  for (const auto& part : group_.parts) {
    order = lcm(order, local_order(part, exponents_.data() + offset));
    offset += part.orders.size();
  }
  return order;
}

std::int64_t DirichletCharacter::conductor() const {
  std::int64_t f = 1;
  std::size_t offset = 0;
  for (const auto& part : group_.parts) {
    f *= arith::ipow(part.p, local_conductor_exponent(part, exponents_.data() + offset));
    offset += part.orders.size();
  }
  return f;
}

bool DirichletCharacter::is_principal() const {
  return std::all_of(exponents_.begin(), exponents_.end(), [](std::int64_t e) { return e == 0; });
}

DirichletCharacter DirichletCharacter::pow(std::int64_t k) const {
  std::vector<std::int64_t> exps(exponents_.size());
  const auto orders = group_.orders();
  for (std::size_t i = 0; i < exps.size(); ++i) {
    exps[i] = static_cast<std::int64_t>((static_cast<__int128>(exponents_[i]) * k) % orders[i]);
  }
  return DirichletCharacter(group_, std::move(exps));
}

DirichletCharacter DirichletCharacter::primitive() const {
  UnitGroup g;
  g.modulus = 1;
  std::vector<std::int64_t> exps;
  std::size_t offset = 0;
  for (const auto& part : group_.parts) {
    const std::int64_t* x = exponents_.data() + offset;
    offset += part.orders.size();
    const int c = local_conductor_exponent(part, x);
    if (c == 0) continue;
    auto reduced = make_part(part.p, c);
    g.modulus *= reduced.modulus;
    if (part.p == 2) {
      exps.push_back(x[0]);
      if (c >= 3) exps.push_back(x[1] / arith::ipow(2, part.e - c));
    } else {
      exps.push_back(x[0] / arith::ipow(part.p, part.e - c));
    }
    g.parts.push_back(std::move(reduced));
  }
  return DirichletCharacter(std::move(g), std::move(exps));
}

std::vector<std::complex<double>> DirichletCharacter::values() const {
  const std::int64_t m = modulus();
  std::vector<std::complex<double>> vals(static_cast<std::size_t>(m), {0.0, 0.0});
  if (m == 1) {
    vals[0] = 1.0;
    return vals;
  }
  const auto gens = group_.generators();
  const auto orders = group_.orders();
  std::int64_t big_l = 1;
  for (std::int64_t o : orders) big_l = lcm(big_l, o);
  std::vector<std::int64_t> step(orders.size(), 1);
  // Angles are exact multiples of 1/big_l; fourth roots come out exact.
  std::vector<std::complex<double>> roots(static_cast<std::size_t>(big_l));
  for (std::int64_t k = 0; k < big_l; ++k) {
    if (4 * k % big_l == 0) {
      const std::int64_t quarter = 4 * k / big_l;
      static const std::complex<double> exact[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
      roots[k] = exact[quarter];
    } else {
      const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(big_l);
      roots[k] = {std::cos(theta), std::sin(theta)};
    }
  }
  for_each_tuple(orders, step, [&](const std::vector<std::int64_t>& j) {
    __int128 r = 1;
    std::int64_t angle = 0;
    for (std::size_t i = 0; i < j.size(); ++i) {
      r = r * arith::powmod(gens[i], j[i], m) % m;
      angle = (angle + static_cast<std::int64_t>(static_cast<__int128>(exponents_[i]) * j[i] % orders[i]) *
                           (big_l / orders[i])) %
              big_l;
    }
    vals[static_cast<std::size_t>(r)] = roots[angle];
  });
  return vals;
}

std::complex<double> DirichletCharacter::value(std::int64_t r) const {
  const std::int64_t m = modulus();
  if (gcd(norm_mod(r, m), m) != 1) return {0.0, 0.0};
  return values()[norm_mod(r, m)];
}

std::vector<DirichletCharacter> all_characters(std::int64_t m) {
  const auto group = unit_group_structure(m);
  const auto orders = group.orders();
  std::vector<DirichletCharacter> out;
  for_each_tuple(orders, std::vector<std::int64_t>(orders.size(), 1),
                 [&](const std::vector<std::int64_t>& v) { out.emplace_back(group, v); });
  return out;
}

std::vector<DirichletCharacter> characters_of_exact_order(std::int64_t m, std::int64_t n) {
  if (n < 2) throw Error("invalid_argument", "characters_of_exact_order: n must be at least 2");
  const auto group = unit_group_structure(m);
  const auto orders = group.orders();
  std::vector<std::int64_t> step;
  for (std::int64_t o : orders) step.push_back(o / std::gcd(o, n));
  std::vector<DirichletCharacter> out;
  for_each_tuple(orders, step, [&](const std::vector<std::int64_t>& v) {
    DirichletCharacter chi(group, v);
    if (chi.order() == n) out.push_back(std::move(chi));
  });
  return out;
}

std::int64_t conductor(const DirichletCharacter& chi) { return chi.conductor(); }

// ---------------------------------------------------------------------------

std::int64_t integer_root(std::int64_t x, int k) {
  if (x < 0 || k < 1) throw Error("invalid_argument", "integer_root: need x >= 0, k >= 1");
  if (k == 1 || x < 2) return x;
  auto fits = [&](std::int64_t y) {
    __int128 acc = 1;
    for (int i = 0; i < k; ++i) {
      acc *= y;
      if (acc > x) return false;
    }
    return true;
  };
  std::int64_t y = static_cast<std::int64_t>(std::pow(static_cast<double>(x), 1.0 / k));
  while (y > 0 && !fits(y)) --y;
  while (fits(y + 1)) ++y;
  return y;
}

namespace {

struct LocalChar {
  std::vector<std::int64_t> exps;
  std::int64_t order = 1;
  int disc_exponent = 0;
};

struct LocalTable {
  PrimePowerPart part;
  std::vector<LocalChar> primitive;
};

constexpr std::int64_t kMaxSearchBound = 50'000'000;

}  // namespace

FieldCount count_fields(int n, std::int64_t x, std::int64_t search_bound) {
  if (n < 2) throw Error("invalid_argument", "count_fields: n must be at least 2");
  if (x < 1) throw Error("invalid_argument", "count_fields: X must be at least 1");
  const int phi_n = static_cast<int>(euler_phi(n));
  const std::int64_t bound = search_bound > 0 ? search_bound : integer_root(x, phi_n);
  if (bound > kMaxSearchBound) {
    throw Error("search_bound_overflow", "count_fields: conductor search bound " + std::to_string(bound) +
                                             " exceeds " + std::to_string(kMaxSearchBound));
  }

  FieldCount result;
  if (bound < 2) return result;

  const auto spf = arith::smallest_prime_factors(bound);
  // Primitive local characters of order dividing n for each prime power <= bound.
  std::vector<LocalTable> tables(static_cast<std::size_t>(bound) + 1);
  std::vector<bool> has_table(static_cast<std::size_t>(bound) + 1, false);
  for (std::int64_t p = 2; p <= bound; ++p) {
    if (spf[p] != p) continue;
    std::int64_t q = p;
    for (int e = 1; q <= bound; ++e) {
      LocalTable table;
      table.part = make_part(p, e);
      for (auto& v : exponents_dividing(table.part, n)) {
        if (local_conductor_exponent(table.part, v.data()) != e) continue;
        LocalChar lc;
        lc.order = local_order(table.part, v.data());
        lc.disc_exponent = local_disc_exponent(table.part, v, n, 1);
        lc.exps = std::move(v);
        table.primitive.push_back(std::move(lc));
      }
      tables[q] = std::move(table);
      has_table[q] = true;
      if (q > bound / p) break;
      q *= p;
    }
  }

  std::vector<std::int64_t> coprime_k;
  for (int k = 1; k < n; ++k) {
    if (std::gcd(k, n) == 1) coprime_k.push_back(k);
  }

  for (std::int64_t f = 2; f <= bound; ++f) {
    // Prime-power decomposition of f.
    std::vector<std::int64_t> qs;
    for (std::int64_t r = f; r > 1;) {
      const std::int64_t p = spf[r];
      std::int64_t q = 1;
      while (r % p == 0) {
        r /= p;
        q *= p;
      }
      qs.push_back(q);
    }
    std::reverse(qs.begin(), qs.end());  // primes ascending
    bool empty = false;
    for (std::int64_t q : qs) empty = empty || tables[q].primitive.empty();
    if (empty) continue;

    std::vector<std::size_t> idx(qs.size(), 0);
    while (true) {
      std::int64_t order = 1;
      __int128 disc = 1;
      bool too_big = false;
      for (std::size_t i = 0; i < qs.size() && !too_big; ++i) {
        const auto& lc = tables[qs[i]].primitive[idx[i]];
        order = lcm(order, lc.order);
        const std::int64_t p = tables[qs[i]].part.p;
        for (int j = 0; j < lc.disc_exponent; ++j) {
          disc *= p;
          if (disc > x) {
            too_big = true;
            break;
          }
        }
      }
      if (!too_big && order == n) {
        std::vector<std::int64_t> exps;
        for (std::size_t i = 0; i < qs.size(); ++i) {
          const auto& e = tables[qs[i]].primitive[idx[i]].exps;
          exps.insert(exps.end(), e.begin(), e.end());
        }
        // Keep only the lexicographically least member of the Galois orbit.
        bool canonical = true;
        std::vector<std::int64_t> power(exps.size());
        for (std::int64_t k : coprime_k) {
          if (k == 1) continue;
          std::size_t off = 0;
          for (std::size_t i = 0; i < qs.size(); ++i) {
            const auto& orders = tables[qs[i]].part.orders;
            for (std::size_t t = 0; t < orders.size(); ++t, ++off) power[off] = norm_mod(exps[off] * k, orders[t]);
          }
          if (power < exps) {
            canonical = false;
            break;
          }
        }
        if (canonical) {
          CharacterOrbit orbit;
          orbit.n = n;
          orbit.representative = std::move(exps);
          orbit.conductor = f;
          orbit.field_discriminant = static_cast<std::int64_t>(disc);
          orbit.orbit_size = static_cast<std::int64_t>(coprime_k.size());
          result.orbits.push_back(std::move(orbit));
        }
      }
      std::size_t i = 0;
      for (; i < idx.size(); ++i) {
        if (++idx[i] < tables[qs[i]].primitive.size()) break;
        idx[i] = 0;
      }
      if (i == idx.size()) break;
    }
  }

  std::sort(result.orbits.begin(), result.orbits.end(), [](const CharacterOrbit& a, const CharacterOrbit& b) {
    return std::tie(a.field_discriminant, a.conductor, a.representative) <
           std::tie(b.field_discriminant, b.conductor, b.representative);
  });
  result.count = static_cast<std::int64_t>(result.orbits.size());
  for (const auto& o : result.orbits) result.discriminants.push_back(o.field_discriminant);
  return result;
}

std::int64_t hom_count(int n, std::int64_t x) {
  if (n < 2) throw Error("invalid_argument", "hom_count: n must be at least 2");
  if (x < 1) throw Error("invalid_argument", "hom_count: X must be at least 1");
  std::int64_t total = 1;
  for (std::int64_t d : arith::divisors(n)) {
    if (d == 1) continue;
    const std::int64_t y = integer_root(x, static_cast<int>(n / d));
    if (y < 1) continue;
    total += euler_phi(d) * count_fields(static_cast<int>(d), y).count;
  }
  return total;
}

std::vector<std::int64_t> hom_count_table(int n, std::int64_t x_max) {
  if (x_max < 1) throw Error("invalid_argument", "hom_count_table: x_max must be at least 1");
  std::vector<std::int64_t> table(static_cast<std::size_t>(x_max) + 1, 0);
  table[1] = 1;
  for (std::int64_t d : arith::divisors(n)) {
    if (d == 1) continue;
    const int k = static_cast<int>(n / d);
    const std::int64_t y = integer_root(x_max, k);
    if (y < 1) continue;
    const std::int64_t weight = euler_phi(d);
    for (std::int64_t disc : count_fields(static_cast<int>(d), y).discriminants) {
      table[static_cast<std::size_t>(arith::ipow(disc, k))] += weight;
    }
  }
  for (std::size_t i = 1; i < table.size(); ++i) table[i] += table[i - 1];
  return table;
}

arith::TruncPoly derive_local_factor(int n, std::int64_t p) {
  if (n < 2) throw Error("invalid_argument", "derive_local_factor: n must be at least 2");
  const int vp = (n % p == 0) ? arith::valuation(n, p) : 0;
  const int e = vp == 0 ? 1 : vp + (p == 2 ? 2 : 1);
  const auto part = make_part(p, e);
  std::vector<arith::BigInt> coeffs;
  for (const auto& v : exponents_dividing(part, n)) {
    const int d = local_disc_exponent(part, v, n, 0);
    if (static_cast<std::size_t>(d) >= coeffs.size()) coeffs.resize(static_cast<std::size_t>(d) + 1, 0);
    coeffs[d] += 1;
  }
  const int trunc = static_cast<int>(coeffs.size()) - 1;
  return arith::TruncPoly(std::move(coeffs), trunc);
}

}  // namespace tauber::fields
