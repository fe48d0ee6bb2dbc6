#include "tauber/series.hpp"

#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "tauber/error.hpp"

#ifndef TAUBER_DATA_DIR
#define TAUBER_DATA_DIR "data"
#endif

namespace tauber::series {

using arith::BigInt;
using arith::Rational;

WildFactorTable WildFactorTable::builtin() {
  WildFactorTable t;
  t.set(4, 2, TruncPoly({1, 0, 0, 0, 1, 0, 2, 0, 0, 0, 0, 4}, 11));
  return t;
}

TruncPoly printed_wild_factor_4_2() { return TruncPoly({1, 0, 1, 0, 0, 0, 2, 0, 0, 0, 0, 4}, 11); }

std::string default_wild_factor_path() { return std::string(TAUBER_DATA_DIR) + "/wild_factors.txt"; }

WildFactorTable WildFactorTable::standard() {
  auto table = builtin();
  std::ifstream in(default_wild_factor_path());
  if (!in) return table;
  const auto shipped = load(default_wild_factor_path());
  for (const auto& [key, poly] : shipped.entries()) {
    if (table.has(key.first, key.second) && !(table.get(key.first, key.second) == poly)) {
      throw Error("wild_factor_conflict", "data file disagrees with the built-in factor for n=" +
                                              std::to_string(key.first) + " p=" + std::to_string(key.second));
    }
    table.set(key.first, key.second, poly);
  }
  return table;
}

WildFactorTable WildFactorTable::parse(const std::string& text) {
  WildFactorTable t;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    int n = 0;
    std::int64_t p = 0;
    if (!(fields >> n)) continue;
    if (!(fields >> p) || n < 2 || p < 2 || n % p != 0) {
      throw Error("bad_wild_factor", "wild factor line " + std::to_string(lineno) + ": expected \"n p c0 c1 ...\"");
    }
    std::vector<BigInt> coeffs;
    std::string tok;
    while (fields >> tok) {
      BigInt c;
      if (c.set_str(tok, 10) != 0) {
        throw Error("bad_wild_factor", "wild factor line " + std::to_string(lineno) + ": bad coefficient " + tok);
      }
      coeffs.push_back(c);
    }
    if (coeffs.empty() || coeffs[0] != 1) {
      throw Error("bad_wild_factor", "wild factor line " + std::to_string(lineno) + ": constant term must be 1");
    }
    const int trunc = static_cast<int>(coeffs.size()) - 1;
    t.set(n, p, TruncPoly(std::move(coeffs), trunc));
  }
  return t;
}

WildFactorTable WildFactorTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("io_error", "cannot read wild factor file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

void WildFactorTable::set(int n, std::int64_t p, TruncPoly factor) { entries_[{n, p}] = std::move(factor); }

bool WildFactorTable::has(int n, std::int64_t p) const { return entries_.count({n, p}) != 0; }

const TruncPoly& WildFactorTable::get(int n, std::int64_t p) const {
  auto it = entries_.find({n, p});
  if (it == entries_.end()) {
    throw Error("missing_wild_factor",
                "no wild factor configured for n=" + std::to_string(n) + " p=" + std::to_string(p));
  }
  return it->second;
}

std::string WildFactorTable::serialize() const {
  std::ostringstream os;
  for (const auto& [key, poly] : entries_) os << key.first << ' ' << key.second << ' ' << poly.to_string() << '\n';
  return os.str();
}

// ---------------------------------------------------------------------------

const TruncPoly& LocalFactorSystem::factor_for(std::int64_t p) const {
  if (auto it = wild_overrides.find(p); it != wild_overrides.end()) return it->second;
  for (const auto& rule : tame_rules) {
    if (p % rule.modulus == rule.residue) return rule.factor;
  }
  throw Error("invalid_argument", "no local factor for p=" + std::to_string(p));
}

TruncPoly tame_local_factor(int n, std::int64_t p) {
  if (n < 2) throw Error("invalid_argument", "tame_local_factor: n must be at least 2");
  if (p % n == 0 || std::gcd<std::int64_t>(p, n) != 1) {
    throw Error("invalid_argument", "tame_local_factor: p divides n");
  }
  std::vector<BigInt> coeffs(static_cast<std::size_t>(n), 0);
  for (std::int64_t d : arith::divisors(n)) {
    if ((p - 1) % d != 0) continue;
    coeffs[static_cast<std::size_t>(n - n / d)] += arith::euler_phi(d);
  }
  return TruncPoly(std::move(coeffs), n - 1);
}

TruncPoly wild_local_factor(int n, std::int64_t p, const WildFactorTable& table) {
  if (n % p != 0) throw Error("invalid_argument", "wild_local_factor: p does not divide n");
  return table.get(n, p);
}

LocalFactorSystem make_local_factor_system(int n, const WildFactorTable& table) {
  if (n < 2) throw Error("invalid_argument", "make_local_factor_system: n must be at least 2");
  LocalFactorSystem sys;
  sys.n = n;
  for (std::int64_t r = 1; r < n; ++r) {
    if (std::gcd<std::int64_t>(r, n) != 1) continue;
    sys.tame_rules.push_back({n, r, tame_local_factor(n, r)});
  }
  for (auto [p, e] : arith::factorize(n)) sys.wild_overrides[p] = wild_local_factor(n, p, table);
  return sys;
}

// ---------------------------------------------------------------------------

CoeffArray coefficient_sieve(const LocalFactorSystem& sys, std::int64_t x) {
  if (x < 1) throw Error("invalid_argument", "coefficient_sieve: X must be at least 1");
  CoeffArray c;
  c.bound = x;
  c.a.assign(static_cast<std::size_t>(x) + 1, 0);
  c.a[1] = 1;
  std::vector<std::pair<std::int64_t, std::int64_t>> terms;  // (p^k, c_k)
  for (std::int64_t p : arith::primes_up_to(x)) {
    const auto& f = sys.factor_for(p);
    terms.clear();
    __int128 pk = 1;
    for (int k = 1; k <= f.degree(); ++k) {
      pk *= p;
      if (pk > x) break;
      if (f.coeff(k) == 0) continue;
      if (!f.coeff(k).fits_slong_p()) throw Error("coefficient_overflow", "local factor coefficient too large");
      terms.emplace_back(static_cast<std::int64_t>(pk), f.coeff(k).get_si());
    }
    if (terms.empty()) continue;
    const std::int64_t smallest = terms.front().first;
    for (std::int64_t m = x / smallest; m >= 1; --m) {
      const std::int64_t am = c.a[m];
      if (am == 0) continue;
      for (auto [q, ck] : terms) {
        if (q > x / m) break;
        std::int64_t add = 0;
        std::int64_t& slot = c.a[m * q];
        if (__builtin_mul_overflow(am, ck, &add) || __builtin_add_overflow(slot, add, &slot)) {
          throw Error("coefficient_overflow", "coefficient exceeds 64 bits at m=" + std::to_string(m * q));
        }
      }
    }
  }
  return c;
}

std::int64_t summatory(const CoeffArray& c, std::int64_t x) {
  if (x < 0 || x > c.bound) throw Error("out_of_range", "summatory: X outside the sieved range");
  std::int64_t s = 0;
  for (std::int64_t m = 1; m <= x; ++m) s += c.a[m];
  return s;
}

std::vector<std::int64_t> prefix_sums(const CoeffArray& c) {
  std::vector<std::int64_t> s(c.a.size(), 0);
  for (std::size_t m = 1; m < s.size(); ++m) s[m] = s[m - 1] + c.a[m];
  return s;
}

std::int64_t etale_field_decomposition(int n, const std::map<int, std::int64_t>& field_counts,
                                       const std::map<int, std::int64_t>& weights) {
  if (auto it = weights.find(1); it != weights.end() && it->second != 1) {
    throw Error("invalid_argument", "etale_field_decomposition: weight of d=1 must be 1");
  }
  std::int64_t total = 0;
  for (std::int64_t d64 : arith::divisors(n)) {
    const int d = static_cast<int>(d64);
    std::int64_t count = 1;
    if (auto it = field_counts.find(d); it != field_counts.end()) {
      count = it->second;
    } else if (d != 1) {
      throw Error("missing_divisor", "etale_field_decomposition: no field count for d=" + std::to_string(d));
    }
    std::int64_t w = 1;
    if (auto it = weights.find(d); it != weights.end()) {
      w = it->second;
    } else if (d != 1) {
      throw Error("missing_divisor", "etale_field_decomposition: no weight for d=" + std::to_string(d));
    }
    total += w * count;
  }
  return total;
}

std::map<int, std::int64_t> frozen_etale_weights(int n) {
  std::map<int, std::int64_t> w;
  for (std::int64_t d : arith::divisors(n)) w[static_cast<int>(d)] = arith::euler_phi(d);
  return w;
}

// ---------------------------------------------------------------------------

bool FactorizationReport::passed() const {
  for (const auto& c : classes) {
    if (c.first_bad_degree != -1) return false;
  }
  return !classes.empty();
}

namespace {

// Order of r in (Z/ell)^* / {+-1}.
std::int64_t order_mod_pm1(std::int64_t r, std::int64_t ell) {
  if (ell == 2) return 1;
  std::int64_t x = r % ell;
  for (std::int64_t k = 1;; ++k) {
    if (x == 1 || x == ell - 1) return k;
    x = x * r % ell;
  }
}

}  // namespace

FactorizationReport zeta_factorization_check(int n, int trunc, ExponentRule rule) {
  const auto inv = arith::group_invariants(n);
  FactorizationReport report;
  report.n = n;
  report.trunc = trunc;
  report.two_a = 2 * inv.a;
  if (trunc < report.two_a) throw Error("invalid_argument", "zeta_factorization_check: trunc must be at least 2a");

  const std::int64_t ell = inv.ell;
  const Rational g_ell = inv.gd_sizes.at(static_cast<int>(ell));
  // Powers of zeta_{Q(zeta_ell)^+}(2as) and zeta_{Q(zeta_ell)}(2as) multiplied into D to form H.
  Rational plus_power, full_power;
  if (rule == ExponentRule::derived && ell != 2) {
    plus_power = g_ell / (ell - 1);
    full_power = g_ell * g_ell / (2 * ell - 2);
  } else {
    plus_power = g_ell / 2;
    full_power = Rational(2 * ell - 3, 2 * ell - 2) * g_ell * g_ell - Rational(ell - 2, 2) * g_ell;
  }
  const int two_a = report.two_a;

  for (std::int64_t r = 1; r < n; ++r) {
    if (std::gcd<std::int64_t>(r, n) != 1) continue;
    std::map<int, Rational> expo;
    // D * prod_d zeta_{Q(zeta_d)}(n(1-1/d)s)^{-|G_d|/phi(d)}
    for (std::int64_t d : arith::divisors(n)) {
      if (d == 1) continue;
      const std::int64_t f = arith::multiplicative_order(r % d, d);
      const std::int64_t g = arith::euler_phi(d) / f;
      const int k = static_cast<int>((n - n / d) * f);
      expo[k] += Rational(g * inv.gd_sizes.at(static_cast<int>(d)), arith::euler_phi(d));
    }
    {
      const std::int64_t f = order_mod_pm1(r, ell);
      const std::int64_t deg = ell == 2 ? 1 : (ell - 1) / 2;
      expo[static_cast<int>(two_a * f)] -= Rational(deg / f) * plus_power;
    }
    {
      const std::int64_t f = arith::multiplicative_order(r % ell, ell);
      const std::int64_t g = arith::euler_phi(ell) / f;
      expo[static_cast<int>(two_a * f)] -= Rational(g) * full_power;
    }

    ClassResidual cls;
    cls.modulus = n;
    cls.residue = r % n;
    cls.local_factor = tame_local_factor(n, r);
    TruncPoly acc = TruncPoly(cls.local_factor.coeffs(), trunc);
    for (auto& [k, e] : expo) {
      e.canonicalize();
      if (e == 0) continue;
      if (e.get_den() != 1) {
        throw Error("non_integral_exponent", "zeta_factorization_check: exponent " + e.get_str() + " for (1-u^" +
                                                 std::to_string(k) + ") in class " + std::to_string(r));
      }
      const long ei = e.get_num().get_si();
      cls.zeta_exponents[k] = ei;
      acc = arith::poly_mul_trunc(acc, TruncPoly::binomial_power(k, ei, trunc), trunc);
    }
    cls.residual = acc;
    for (int deg = 1; deg <= two_a; ++deg) {
      if (acc.coeff(deg) != 0) {
        cls.first_bad_degree = deg;
        break;
      }
    }
    report.classes.push_back(std::move(cls));
  }
  return report;
}

void write_coefficients_csv(std::ostream& os, const CoeffArray& c) {
  os << "m,a\n";
  for (std::int64_t m = 1; m <= c.bound; ++m) {
    if (c.a[m] != 0) os << m << ',' << c.a[m] << '\n';
  }
}

}  // namespace tauber::series
