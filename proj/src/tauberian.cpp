#include "tauber/tauberian.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "tauber/io.hpp"

namespace tauber::tauberian {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw Error("invalid_config", "bad value for " + key + ": " + v);
  }
}

cplx eval_R(const std::vector<cplx>& R, double L) {
  cplx acc = 0.0;
  for (auto it = R.rbegin(); it != R.rend(); ++it) acc = acc * L + *it;
  return acc;
}

}  // namespace

void TauberParams::validate() const {
  if (!(delta > 0.0)) throw Error("invalid_params", "delta must be positive");
  if (!(T0 >= std::exp(1.0) - 1e-12)) throw Error("invalid_params", "T0 must be at least e");
  if (b < 1) throw Error("invalid_params", "b must be at least 1");
  if (!(sup_gamma >= 0.0)) throw Error("invalid_params", "sup_gamma must be nonnegative");
  if (!(beta >= 0.0)) throw Error("invalid_params", "beta must be nonnegative");
  if (!(Q > 0.0)) throw Error("invalid_params", "Q must be positive");
}

TauberParams TauberParams::parse(const std::string& text) { return parse(text, TauberParams{}); }

TauberParams TauberParams::parse(const std::string& text, const TauberParams& base) {
  TauberParams p = base;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw Error("invalid_config", "expected key = value: " + line);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "sigma_a") {
      p.sigma_a = parse_double(key, value);
    } else if (key == "delta") {
      p.delta = parse_double(key, value);
    } else if (key == "T0") {
      p.T0 = parse_double(key, value);
    } else if (key == "eta") {
      p.eta = parse_double(key, value);
    } else if (key == "eta_tilde") {
      p.eta_tilde = parse_double(key, value);
    } else if (key == "beta") {
      p.beta = parse_double(key, value);
    } else if (key == "Q") {
      p.Q = parse_double(key, value);
    } else if (key == "b") {
      const double b = parse_double(key, value);
      if (b != std::floor(b)) throw Error("invalid_config", "b must be an integer");
      p.b = static_cast<int>(b);
    } else if (key == "sup_gamma") {
      p.sup_gamma = parse_double(key, value);
    } else {
      throw Error("invalid_config", "unknown key " + key);
    }
  }
  p.validate();
  return p;
}

TauberParams TauberParams::load(const std::string& path) { return load(path, TauberParams{}); }

TauberParams TauberParams::load(const std::string& path, const TauberParams& base) {
  std::ifstream in(path);
  if (!in) throw Error("io_error", "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), base);
}

std::string TauberParams::serialize() const {
  std::ostringstream os;
  os.precision(17);
  os << "sigma_a = " << sigma_a << "\ndelta = " << delta << "\nT0 = " << T0 << "\neta = " << eta
     << "\neta_tilde = " << eta_tilde << "\nbeta = " << beta << "\nQ = " << Q << "\nb = " << b
     << "\nsup_gamma = " << sup_gamma << "\n";
  return os.str();
}

cplx polar_sum(const std::vector<PolarTerm>& terms, double X) {
  const double L = std::log(X);
  cplx total = 0.0;
  for (const auto& t : terms) total += std::exp(t.z * L) * eval_R(t.R, L);
  return total;
}

double abs_polar(const std::vector<PolarTerm>& terms, double X) {
  const double L = std::log(X);
  double total = 0.0;
  for (const auto& t : terms) {
    double r = 0.0;
    for (auto it = t.R.rbegin(); it != t.R.rend(); ++it) r = r * L + std::abs(*it);
    total += std::pow(X, t.z.real()) * r;
  }
  return total;
}

double leading_coefficient(const std::vector<PolarTerm>& terms) {
  bool found = false;
  double best_re = 0.0;
  std::size_t best_deg = 0;
  cplx coeff = 0.0;
  for (const auto& t : terms) {
    std::size_t deg = t.R.size();
    while (deg > 0 && t.R[deg - 1] == 0.0) --deg;
    if (deg == 0) continue;
    --deg;
    const double re = t.z.real();
    if (!found || re > best_re || (re == best_re && deg > best_deg)) {
      found = true;
      best_re = re;
      best_deg = deg;
      coeff = t.R[deg];
    } else if (re == best_re && deg == best_deg) {
      coeff += t.R[deg];
    }
  }
  return found ? coeff.real() : 1.0;
}

SandwichResult sandwich(const std::vector<std::pair<Rational, Rational>>& jumps, int k, const Rational& X,
                        const Rational& y) {
  if (k < 1) throw Error("invalid_argument", "sandwich: k must be at least 1");
  if (y <= 0) throw Error("invalid_argument", "sandwich: y must be positive");
  for (const auto& [lambda, a] : jumps) {
    if (a < 0) throw Error("invalid_argument", "sandwich: jumps must be nonnegative");
  }
  SandwichResult r;
  r.lower = riesz_mean<Rational>(jumps, 0, X);
  r.upper = riesz_mean<Rational>(jumps, 0, Rational(X + k * y));
  Rational diff = finite_difference<Rational>([&](const Rational& x) { return riesz_mean<Rational>(jumps, k, x); },
                                              y, k, X);
  Rational yk = 1;
  for (int i = 0; i < k; ++i) yk *= y;
  r.middle = diff / yk;
  r.middle.canonicalize();
  r.holds = r.lower <= r.middle && r.middle <= r.upper;
  return r;
}

int smoothing_order(double eta, double eta_tilde) {
  return static_cast<int>(std::ceil(std::max({2.0, eta_tilde - 2.0, 3.0 * eta - 3.0})));
}

GH gh_helpers(double eta, double beta, double u) {
  if (!(u > 1.0)) throw Error("invalid_argument", "gh_helpers: u must exceed 1");
  const double lu = std::log(u);
  GH r;
  if (eta == 1.0) {
    r.g = std::pow(lu, beta + 1.0);
    r.h = 1.0;
    return r;
  }
  const double inv = 1.0 / std::abs(eta - 1.0);
  r.g = inv * std::pow(lu, beta);
  r.h = eta < 1.0 ? inv * std::pow(u, eta - 1.0) * std::pow(lu, beta) : inv * std::exp(eta - 1.0);
  return r;
}

double theta_exponent(double eta, double beta, int b) {
  if (eta < 1.0) return 0.0;
  if (eta == 1.0) return beta + 1.0;
  return (b - 1) * (1.0 - 1.0 / eta) + beta / eta;
}

Asymptotic::Asymptotic(double c) {
  if (c != 0.0) terms_.push_back({c, 0, 0});
}

Asymptotic Asymptotic::x() { return monomial(1.0, 1, 0); }

Asymptotic Asymptotic::monomial(double c, const Rational& x_pow, const Rational& log_pow) {
  Asymptotic a;
  a.add({c, x_pow, log_pow});
  return a;
}

void Asymptotic::add(const Monomial& m) {
  if (m.coeff == 0.0) return;
  for (auto it = terms_.begin(); it != terms_.end(); ++it) {
    if (it->x_pow == m.x_pow && it->log_pow == m.log_pow) {
      it->coeff += m.coeff;
      if (it->coeff == 0.0) terms_.erase(it);
      return;
    }
  }
  auto pos = std::find_if(terms_.begin(), terms_.end(), [&](const Monomial& t) {
    return t.x_pow < m.x_pow || (t.x_pow == m.x_pow && t.log_pow < m.log_pow);
  });
  terms_.insert(pos, m);
}

const Asymptotic::Monomial& Asymptotic::dominant() const {
  if (terms_.empty()) throw Error("invalid_argument", "Asymptotic: zero expression has no dominant term");
  return terms_.front();
}

Asymptotic operator+(const Asymptotic& a, const Asymptotic& b) {
  Asymptotic r = a;
  for (const auto& m : b.terms_) r.add(m);
  return r;
}

Asymptotic operator*(const Asymptotic& a, const Asymptotic& b) {
  Asymptotic r;
  for (const auto& m : a.terms_) {
    for (const auto& n : b.terms_) {
      r.add({m.coeff * n.coeff, Rational(m.x_pow + n.x_pow), Rational(m.log_pow + n.log_pow)});
    }
  }
  return r;
}

Asymptotic operator/(const Asymptotic& a, const Asymptotic& b) {
  if (b.terms_.size() != 1) throw Error("invalid_argument", "Asymptotic: divisor must be a single monomial");
  const auto& d = b.terms_.front();
  Asymptotic r;
  for (const auto& m : a.terms_) {
    r.add({m.coeff / d.coeff, Rational(m.x_pow - d.x_pow), Rational(m.log_pow - d.log_pow)});
  }
  return r;
}

Asymptotic pow(const Asymptotic& a, double e) {
  if (e == 0.0) return Asymptotic(1.0);
  const auto& m = a.dominant();
  const Rational re(e);
  return Asymptotic::monomial(std::pow(m.coeff, e), Rational(m.x_pow * re), Rational(m.log_pow * re));
}

Asymptotic log(const Asymptotic& a) {
  const auto& m = a.dominant();
  if (m.x_pow != 0) return Asymptotic::monomial(m.x_pow.get_d(), 0, 1);
  if (m.log_pow != 0) throw Error("invalid_argument", "Asymptotic: log log X is not representable");
  return Asymptotic(std::log(m.coeff));
}

double e2_value(const TauberParams& p) {
  if (p.eta < 1.0) return p.sup_gamma;
  if (p.eta == 1.0) return p.Q + p.sup_gamma;
  return std::exp(p.eta - 1.0) * p.Q / (p.eta - 1.0) + p.sup_gamma;
}

ErrorTerms error_terms(const TauberParams& p, double X, double T, double R_abs_at_X) {
  p.validate();
  if (!(X >= std::exp(1.0) - 1e-12)) throw Error("out_of_range", "error_terms: X must be at least e");
  if (!(T >= 6.0)) throw Error("out_of_range", "error_terms: T must be at least 6");
  if (!(R_abs_at_X >= 0.0)) throw Error("invalid_argument", "error_terms: R_abs must be nonnegative");
  return {e1_generic<double>(p, X, T, R_abs_at_X), e2_value(p)};
}

double optimal_T_raw(const TauberParams& p, double X) {
  if (!(X >= std::exp(1.0) - 1e-12)) throw Error("out_of_range", "optimal_T: X must be at least e");
  return optimal_T_generic<double>(p, X);
}

double optimal_T(const TauberParams& p, double X) { return std::max(6.0, optimal_T_raw(p, X)); }

Rational symbolic_log_power(const TauberParams& p) {
  const Asymptotic X = Asymptotic::x();
  const Asymptotic T = optimal_T_generic<Asymptotic>(p, X);
  const Asymptotic R = Asymptotic::monomial(1.0, Rational(p.sigma_a), Rational(p.b - 1));
  const Asymptotic e1 = e1_generic<Asymptotic>(p, X, T, R);
  if (e1.terms().empty()) return 0;
  const auto& m = e1.dominant();
  if (m.x_pow > 0) throw Error("invalid_argument", "symbolic_log_power: E1 grows like a power of X");
  if (m.x_pow < 0) return 0;
  return m.log_pow;
}

double unoptimized_bound(const TauberParams& p, double X, double T, double y, int k, double R_abs_at_X) {
  p.validate();
  if (k < smoothing_order(p.eta, p.eta_tilde)) throw Error("invalid_argument", "unoptimized_bound: k too small");
  if (!(y > 0.0) || k * y > 0.5 * X * (1.0 + 1e-12)) throw Error("out_of_range", "unoptimized_bound: need 0 < ky <= X/2");
  if (!(T >= p.T0)) throw Error("out_of_range", "unoptimized_bound: T must be at least T0");
  const double edge = std::pow(X, p.sigma_a - p.delta);
  const double lt = std::log(T);
  const GH gT = gh_helpers(p.eta, p.beta, T);
  const GH g0 = gh_helpers(p.eta, p.beta, p.T0);
  const double two_d = std::pow(2.0, p.delta);
  // 3^k y^{-k} X^{sigma_a - delta + k} T^{eta-k-1}, grouped to avoid overflow.
  const double smooth = edge * std::pow(3.0 * X / (y * T), k) * std::pow(T, p.eta - 1.0) * std::pow(lt, p.beta);
  return k * y / X * R_abs_at_X + smooth +
         two_d * p.Q * edge * std::pow(T, p.eta - 1.0) * (std::pow(lt, p.beta) + gT.g) +
         two_d * (p.Q * g0.h + p.sup_gamma) * edge;
}

double envelope(const TauberParams& p, const std::vector<PolarTerm>& terms, double X, BoundMode mode) {
  const double R = abs_polar(terms, X);
  const double T = optimal_T(p, X);
  if (mode == BoundMode::unoptimized) {
    const int k = smoothing_order(p.eta, p.eta_tilde);
    return unoptimized_bound(p, X, std::max(T, p.T0), 3.0 * X / (k * std::max(T, p.T0)), k, R);
  }
  const auto e = error_terms(p, X, T, R);
  return std::pow(X, p.sigma_a - p.delta / std::max(p.eta, 1.0)) * e.E1 +
         std::pow(2.0, p.delta) * e.E2 * std::pow(X, p.sigma_a - p.delta);
}

BoundReport bound_check(const std::vector<Sample>& samples, const std::vector<PolarTerm>& terms,
                        const TauberParams& p, BoundMode mode, const std::optional<Majorant>& majorant) {
  if (samples.empty()) throw Error("empty_samples", "bound_check: no samples");
  double lo = samples.front().X, hi = samples.front().X;
  for (const auto& s : samples) {
    if (!(s.X >= std::exp(1.0))) throw Error("out_of_range", "bound_check: samples must have X >= e");
    lo = std::min(lo, s.X);
    hi = std::max(hi, s.X);
  }
  if (hi < 100.0 * lo) throw Error("insufficient_span", "bound_check: samples must span a factor of 100 in X");
  if (majorant) {
    std::map<double, double> hat;
    for (const auto& s : majorant->samples) hat[s.X] = s.N;
    for (const auto& s : samples) {
      auto it = hat.find(s.X);
      if (it != hat.end() && std::abs(s.N) > it->second) {
        throw Error("majorant_violation", "bound_check: |N(X)| exceeds the majorant");
      }
    }
  }

  BoundReport r;
  double worst = -1.0;
  std::vector<double> lx, ld;
  for (const auto& s : samples) {
    const double d = std::abs(s.N - polar_sum(terms, s.X).real());
    double env = envelope(p, terms, s.X, mode);
    if (majorant) env += envelope(majorant->params, majorant->terms, s.X, mode);
    r.deviation.push_back(d);
    r.envelope.push_back(env);
    const double ratio = d / env;
    if (ratio > worst) {
      worst = ratio;
      r.worst_X = s.X;
    }
    if (d > 0.0) {
      lx.push_back(std::log(s.X));
      ld.push_back(std::log(d));
    }
  }
  r.C = std::max(worst, 0.0);
  if (lx.size() >= 2) {
    const double n = static_cast<double>(lx.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      mx += lx[i];
      my += ld[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      sxy += (lx[i] - mx) * (ld[i] - my);
      sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    r.slope = sxx > 0 ? sxy / sxx : 0.0;
  }
  return r;
}

std::string to_json(const BoundReport& r) {
  return "{\"C\":" + io::format_real(r.C) + ",\"slope\":" + io::format_real(r.slope) +
         ",\"worst_X\":" + io::format_real(r.worst_X) + "}";
}

}  // namespace tauber::tauberian
