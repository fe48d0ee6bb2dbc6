#include "tauber/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "tauber/constants.hpp"
#include "tauber/error.hpp"
#include "tauber/fields.hpp"
#include "tauber/lfunctions.hpp"
#include "tauber/moments.hpp"
#include "tauber/parallel.hpp"
#include "tauber/series.hpp"
#include "tauber/tauberian.hpp"

namespace tauber::cli {

namespace {

constexpr std::int64_t kMaxSieve = 50000000;

void error_line(std::ostream& err, const std::string& code, const std::string& message) {
  nlohmann::ordered_json j;
  j["code"] = code;
  j["message"] = message;
  err << j.dump() << '\n';
}

series::WildFactorTable wild_table(const RunConfig& cfg) {
  if (cfg.wild_path.empty()) return series::WildFactorTable::standard();
  auto table = series::WildFactorTable::builtin();
  for (const auto& [key, poly] : series::WildFactorTable::load(cfg.wild_path).entries()) {
    table.set(key.first, key.second, poly);
  }
  return table;
}

std::string factors_text(const constants::ConstantResult& r) {
  std::string s;
  for (const auto& [k, v] : r.factors) s += (s.empty() ? "" : ";") + k + "=" + io::format_real(v);
  return s;
}

constants::ConstantResult nonvanishing_record(int n, int d) {
  const auto rep = constants::nonvanishing_check(n, d);
  constants::ConstantResult r;
  r.name = "nonvanishing(" + std::to_string(n) + "," + std::to_string(d) + ")";
  r.value = rep.product;
  r.error_bound = rep.error_bound;
  for (const auto& f : rep.factors) {
    r.factors.push_back({"zeta_Q(zeta_" + std::to_string(f.m) + ")(" + f.s.get_str() + ")", f.value});
  }
  r.factors.push_back({"certified", rep.nonvanishing ? 1.0 : 0.0});
  return r;
}

int run_count(const RunConfig& cfg, std::ostream& out) {
  const auto fc = fields::count_fields(cfg.n, cfg.x);
  io::Table t{{"n", "disc", "conductor", "orbit_size"}, {}};
  for (const auto& o : fc.orbits) {
    t.rows.push_back({static_cast<std::int64_t>(cfg.n), o.field_discriminant, o.conductor, o.orbit_size});
  }
  io::emit_table(cfg.output, out, t, cfg.format);
  return 0;
}

int run_series(const RunConfig& cfg, std::ostream& out) {
  if (cfg.x > kMaxSieve) throw Error("invalid_range", "series: X above " + std::to_string(kMaxSieve));
  const auto sys = series::make_local_factor_system(cfg.n, wild_table(cfg));
  const auto c = series::coefficient_sieve(sys, cfg.x);
  io::Table t{{"m", "a"}, {}};
  for (std::int64_t m = 1; m <= c.bound; ++m) {
    if (c[m] != 0) t.rows.push_back({m, c[m]});
  }
  io::emit_table(cfg.output, out, t, cfg.format);
  return 0;
}

int run_constants(const RunConfig& cfg, std::ostream& out) {
  const auto table = wild_table(cfg);
  std::vector<constants::ConstantResult> rows;
  const bool all = cfg.which == "all";
  bool known = all;
  if (all || cfg.which == "c2_C4") {
    rows.push_back(constants::c2_C4(table.get(4, 2)));
    known = true;
  }
  if (all || cfg.which == "c3_C4") {
    rows.push_back(constants::c3_C4(table.get(4, 2)));
    known = true;
  }
  if (all || cfg.which == "leading_residue") {
    if (all) {
      for (int n : {2, 3, 4, 6, 8, 16}) rows.push_back(constants::leading_residue(n, table));
    } else {
      rows.push_back(constants::leading_residue(cfg.n, table));
    }
    known = true;
  }
  if (all || cfg.which == "nonvanishing") {
    const std::vector<int> ns = all ? std::vector<int>{3, 4, 6, 8, 16} : std::vector<int>{cfg.n};
    for (int n : ns) {
      for (auto d : arith::divisors(n)) {
        if (d > 1) rows.push_back(nonvanishing_record(n, static_cast<int>(d)));
      }
    }
    known = true;
  }
  if (!known) throw Error("invalid_argument", "constants: unknown --which " + cfg.which);

  std::ostringstream buf;
  if (cfg.format == io::Format::json) {
    buf << '[';
    for (std::size_t i = 0; i < rows.size(); ++i) buf << (i ? ",\n " : "\n ") << constants::to_json(rows[i]);
    buf << (rows.empty() ? "]\n" : "\n]\n");
  } else {
    io::Table t{{"name", "value", "error_bound", "factors"}, {}};
    for (const auto& r : rows) t.rows.push_back({r.name, r.value, r.error_bound, factors_text(r)});
    io::emit_table(buf, t, cfg.format);
  }
  if (cfg.output.empty() || cfg.output == "-") {
    out << buf.str();
  } else {
    std::ofstream f(cfg.output, std::ios::binary | std::ios::trunc);
    if (!(f << buf.str())) throw Error("io_error", "cannot write " + cfg.output);
  }
  return 0;
}

int run_moments(const RunConfig& cfg, std::ostream& out) {
  const std::int64_t d = cfg.field;
  const moments::Evaluator L = [d](moments::cplx s) { return lfun::dedekind_zeta_cyclotomic(d, s); };
  std::vector<moments::MomentSample> samples;
  for (double T = cfg.t_min; T <= cfg.t_max * (1.0 + 1e-12); T *= 2.0) {
    samples.push_back(moments::twisted_moment(L, cfg.sigma, T, cfg.z, cfg.rel_tol));
  }
  if (cfg.fit) {
    const auto g = moments::fit_growth(samples);
    io::Table t{{"Q", "eta", "beta", "residual"}, {{g.Q, g.eta, g.beta, g.residual}}};
    io::emit_table(cfg.output, out, t, cfg.format);
    return 0;
  }
  io::Table t{{"sigma", "T", "Z", "re", "im", "abs"}, {}};
  for (const auto& s : samples) t.rows.push_back({s.sigma, s.T, s.Z, s.value.real(), s.value.imag(), s.abs_value});
  io::emit_table(cfg.output, out, t, cfg.format);
  return 0;
}

int run_check(const RunConfig& cfg, std::ostream& out) {
  const std::int64_t x_max = static_cast<std::int64_t>(std::floor(cfg.x_max));
  if (x_max > kMaxSieve) throw Error("invalid_range", "check: x-max above " + std::to_string(kMaxSieve));
  const auto fac = arith::factorize(cfg.n);
  const bool prime = fac.size() == 1 && fac.front().second == 1;
  if (!prime && cfg.n != 4) throw Error("unsupported_n", "check: polar data available for prime n and n = 4");
  const auto table = wild_table(cfg);
  const int a = static_cast<int>(cfg.n - cfg.n / fac.front().first);

  std::vector<tauberian::PolarTerm> terms;
  terms.push_back({1.0 / a, {constants::leading_residue(cfg.n, table).value}});
  if (cfg.n == 4) terms.push_back({1.0 / 3.0, {constants::c3_C4(table.get(4, 2)).value}});

  tauberian::TauberParams p;
  p.sigma_a = 1.0 / a;
  p.delta = 0.5 / a;
  if (cfg.n == 3 || cfg.n == 4) {
    const auto budget = moments::holder_budget(cfg.n);
    p.eta = budget.eta;
    p.beta = budget.beta;
  }
  if (!cfg.params_path.empty()) p = tauberian::TauberParams::load(cfg.params_path, p);

  const auto sys = series::make_local_factor_system(cfg.n, table);
  const auto sums = series::prefix_sums(series::coefficient_sieve(sys, x_max));
  std::vector<tauberian::Sample> samples;
  for (double X = cfg.x_min; X <= cfg.x_max * (1.0 + 1e-12); X *= std::sqrt(10.0)) {
    const auto xi = static_cast<std::int64_t>(std::floor(X + 1e-9));
    samples.push_back({static_cast<double>(xi), static_cast<double>(sums[static_cast<std::size_t>(xi)])});
  }
  const auto mode = cfg.mode == "unoptimized" ? tauberian::BoundMode::unoptimized : tauberian::BoundMode::optimized;
  const auto rep = tauberian::bound_check(samples, terms, p, mode);
  io::Table t{{"C", "slope", "worst_X"}, {{rep.C, rep.slope, rep.worst_X}}};
  io::emit_table(cfg.output, out, t, cfg.format);
  return 0;
}

int run_factorize(const RunConfig& cfg, std::ostream& out) {
  const int ell = static_cast<int>(arith::factorize(cfg.n).front().first);
  const int two_a = 2 * (cfg.n - cfg.n / ell);
  const int trunc = cfg.trunc > 0 ? cfg.trunc : two_a;
  const auto rule = cfg.rule == "printed" ? series::ExponentRule::printed : series::ExponentRule::derived;
  const auto rep = series::zeta_factorization_check(cfg.n, trunc, rule);
  io::Table t{{"modulus", "residue", "passed", "first_bad_degree", "zeta_exponents", "residual"}, {}};
  for (const auto& c : rep.classes) {
    std::string ex;
    for (const auto& [k, e] : c.zeta_exponents) ex += (ex.empty() ? "" : ";") + std::to_string(k) + ":" + std::to_string(e);
    t.rows.push_back({c.modulus, c.residue, c.first_bad_degree < 0, static_cast<std::int64_t>(c.first_bad_degree), ex,
                      c.residual.to_string()});
  }
  io::emit_table(cfg.output, out, t, cfg.format);
  return 0;
}

}  // namespace

void RunConfig::validate() const {
  static const std::vector<std::string> commands{"count", "series", "constants", "moments", "check", "factorize"};
  if (std::find(commands.begin(), commands.end(), command) == commands.end()) {
    throw Error("unknown_command", "unknown command '" + command + "'");
  }
  if (n < 2) throw Error("invalid_range", "n must be at least 2");
  if ((command == "count" || command == "series") && x < 1) throw Error("invalid_range", "X must be at least 1");
  if (command == "check" && !(x_min >= std::exp(1.0) && x_max >= x_min)) {
    throw Error("invalid_range", "need e <= x-min <= x-max");
  }
  if (command == "moments") {
    if (!(t_min >= std::exp(1.0) && t_max >= t_min)) throw Error("invalid_range", "need e <= t-min <= t-max");
    if (!(z >= std::exp(1.0) / 2.0)) throw Error("invalid_range", "Z must be at least e/2");
    if (field < 1) throw Error("invalid_range", "field must be positive");
  }
  if (command == "factorize" && trunc < 0) throw Error("invalid_range", "trunc must be nonnegative");
  if (rule != "derived" && rule != "printed") throw Error("invalid_argument", "rule must be derived or printed");
  if (mode != "optimized" && mode != "unoptimized") throw Error("invalid_argument", "mode must be optimized or unoptimized");
}

int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    cfg.validate();
    if (cfg.threads > 0) set_max_threads(cfg.threads);
    if (cfg.command == "count") return run_count(cfg, out);
    if (cfg.command == "series") return run_series(cfg, out);
    if (cfg.command == "constants") return run_constants(cfg, out);
    if (cfg.command == "moments") return run_moments(cfg, out);
    if (cfg.command == "check") return run_check(cfg, out);
    return run_factorize(cfg, out);
  } catch (const Error& e) {
    error_line(err, e.code(), e.what());
  } catch (const std::exception& e) {
    error_line(err, "internal_error", e.what());
  }
  return 1;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  std::string format = "csv";
  CLI::App app{"Explicit Tauberian bounds and abelian field counts"};
  app.set_config("--config", "", "TOML/INI file; command-line flags take precedence");
  app.add_option("--threads", cfg.threads, "worker cap (0: TAUBER_THREADS or all cores)");
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--output,-o", cfg.output, "output file (default stdout)");
  app.require_subcommand(1);

  auto* count = app.add_subcommand("count", "cyclic fields of degree n with |disc| <= X");
  count->add_option("--n", cfg.n)->required();
  count->add_option("--x", cfg.x)->required();

  auto* ser = app.add_subcommand("series", "nonzero coefficients of the etale series up to X");
  ser->add_option("--n", cfg.n)->required();
  ser->add_option("--x", cfg.x)->required();
  ser->add_option("--wild", cfg.wild_path, "wild factor file overriding the shipped table");

  auto* cons = app.add_subcommand("constants", "expansion constants with error bounds");
  cons->add_option("--which", cfg.which, "all, c2_C4, c3_C4, leading_residue, nonvanishing");
  cons->add_option("--n", cfg.n);
  cons->add_option("--wild", cfg.wild_path);

  auto* mom = app.add_subcommand("moments", "twisted moments int_T^{2T} zeta_K(sigma+it) Z^{it} dt");
  mom->add_option("--sigma", cfg.sigma);
  mom->add_option("--t-min", cfg.t_min);
  mom->add_option("--t-max", cfg.t_max);
  mom->add_option("--z", cfg.z);
  mom->add_option("--field", cfg.field, "d with K = Q(zeta_d)");
  mom->add_option("--rel-tol", cfg.rel_tol);
  mom->add_flag("--fit", cfg.fit, "report the (Q, eta, beta) fit instead of samples");

  auto* chk = app.add_subcommand("check", "empirical Tauberian bound check on the etale summatory");
  chk->add_option("--n", cfg.n)->required();
  chk->add_option("--x-min", cfg.x_min);
  chk->add_option("--x-max", cfg.x_max);
  chk->add_option("--params", cfg.params_path, "TauberParams key = value file");
  chk->add_option("--mode", cfg.mode, "optimized or unoptimized");
  chk->add_option("--wild", cfg.wild_path);

  auto* fac = app.add_subcommand("factorize", "per-class residuals of the zeta factorization");
  fac->add_option("--n", cfg.n)->required();
  fac->add_option("--trunc", cfg.trunc, "degree cutoff (default 2a)");
  fac->add_option("--rule", cfg.rule, "derived or printed exponents");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    error_line(err, "usage", e.what());
    return 2;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  try {
    cfg.format = io::parse_format(format);
  } catch (const Error& e) {
    error_line(err, e.code(), e.what());
    return 2;
  }
  return dispatch(cfg, out, err);
}

}  // namespace tauber::cli
