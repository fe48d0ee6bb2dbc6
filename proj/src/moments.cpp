#include "tauber/moments.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>

#include "tauber/error.hpp"
#include "tauber/lfunctions.hpp"
#include "tauber/parallel.hpp"

namespace tauber::moments {

using arith::Rational;

namespace {

constexpr double kGaussWeights[4] = {0.417959183673469387755102040816327, 0.381830050505118944950369775488975,
                                     0.279705391489276667901467771423780, 0.129484966168869693270611432679082};
constexpr double kKronrodNodes[8] = {0.000000000000000000000000000000000, 0.207784955007898467600689403773245,
                                     0.405845151377397166906606412076961, 0.586087235467691130294144845693013,
                                     0.741531185599394439863864773280788, 0.864864423359769072789712788640926,
                                     0.949107912342758524526189684047851, 0.991455371120812639206854697526329};
constexpr double kKronrodWeights[8] = {0.209482141084727828012999174891714, 0.204432940075298892414161999234649,
                                       0.190350578064785409913256402421014, 0.169004726639267902826583426598550,
                                       0.140653259715525918745189590510238, 0.104790010322250183839876322541518,
                                       0.063092092629978553290700663189204, 0.022935322010529224963732008058970};

constexpr double kEps = 2.220446049250313e-16;

struct Panel {
  double a = 0.0, b = 0.0;
  cplx value;
  double error = 0.0;
  double abs_value = 0.0;

  bool operator<(const Panel& o) const { return error < o.error || (error == o.error && a > o.a); }
};

Panel gauss_kronrod(const std::function<cplx(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  cplx kronrod = 0.0, gauss = 0.0;
  double abs_sum = 0.0;
  cplx values[15];
  const cplx f0 = f(c);
  kronrod += kKronrodWeights[0] * f0;
  gauss += kGaussWeights[0] * f0;
  abs_sum += kKronrodWeights[0] * std::abs(f0);
  for (int i = 1; i < 8; ++i) {
    const cplx fl = f(c - h * kKronrodNodes[i]);
    const cplx fr = f(c + h * kKronrodNodes[i]);
    values[2 * i - 1] = fl;
    values[2 * i] = fr;
    kronrod += kKronrodWeights[i] * (fl + fr);
    abs_sum += kKronrodWeights[i] * (std::abs(fl) + std::abs(fr));
    if (i % 2 == 0) gauss += kGaussWeights[i / 2] * (fl + fr);
  }
  // QUADPACK error scaling against the mean deviation, with a roundoff floor.
  const cplx mean = 0.5 * kronrod;
  double asc = kKronrodWeights[0] * std::abs(f0 - mean);
  for (int i = 1; i < 8; ++i) {
    asc += kKronrodWeights[i] * (std::abs(values[2 * i - 1] - mean) + std::abs(values[2 * i] - mean));
  }
  asc *= std::abs(h);
  double err = std::abs((kronrod - gauss) * h);
  if (asc != 0.0 && err != 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
  Panel p;
  p.a = a;
  p.b = b;
  p.value = kronrod * h;
  p.abs_value = abs_sum * std::abs(h);
  p.error = std::max(err, 50.0 * kEps * p.abs_value);
  return p;
}

}  // namespace

QuadResult integrate(const std::function<cplx(double)>& f, double a, double b, double max_panel, double rel_tol,
                     double abs_tol, int max_panels) {
  if (!(b > a)) throw Error("invalid_argument", "integrate: need b > a");
  if (!(max_panel > 0.0)) throw Error("invalid_argument", "integrate: max_panel must be positive");
  const auto initial = static_cast<std::size_t>(std::ceil((b - a) / max_panel));
  if (initial > static_cast<std::size_t>(max_panels)) {
    throw Error("quadrature_nonconvergence", "integrate: interval needs more panels than allowed");
  }
  std::vector<Panel> panels(initial);
  const double width = (b - a) / static_cast<double>(initial);
  parallel_for(initial, [&](std::size_t i) {
    const double lo = a + width * static_cast<double>(i);
    const double hi = i + 1 == initial ? b : a + width * static_cast<double>(i + 1);
    panels[i] = gauss_kronrod(f, lo, hi);
  });

  std::priority_queue<Panel> queue(panels.begin(), panels.end());
  // Totals are re-summed from the queue at the end to avoid drift.
  cplx total = 0.0;
  double err = 0.0, abs_total = 0.0;
  for (const auto& p : panels) {
    total += p.value;
    err += p.error;
    abs_total += p.abs_value;
  }
  auto tolerance = [&] { return std::max({rel_tol * std::abs(total), abs_tol, 100.0 * kEps * abs_total}); };
  int count = static_cast<int>(initial);
  while (err > tolerance()) {
    if (count >= max_panels) {
      throw Error("quadrature_nonconvergence", "integrate: error estimate " + std::to_string(err) +
                                                   " above tolerance " + std::to_string(tolerance()));
    }
    Panel worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    Panel left = gauss_kronrod(f, worst.a, mid), right = gauss_kronrod(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    abs_total += left.abs_value + right.abs_value - worst.abs_value;
    queue.push(left);
    queue.push(right);
    ++count;
  }
  std::vector<Panel> done;
  done.reserve(queue.size());
  while (!queue.empty()) {
    done.push_back(queue.top());
    queue.pop();
  }
  std::sort(done.begin(), done.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  QuadResult r;
  for (const auto& p : done) {
    r.value += p.value;
    r.error += p.error;
    r.abs_integral += p.abs_value;
  }
  r.panels = count;
  return r;
}

// ---------------------------------------------------------------------------

namespace {

double oscillation_panel(double sigma, double log_z) {
  double width = std::numbers::pi / (4.0 * std::abs(log_z));
  if (sigma <= 1.0) width = std::min(width, 0.25);
  return std::min(width, 1.0);
}

}  // namespace

QuadResult twisted_integral(const Evaluator& L, double sigma, double t0, double t1, double Z, double rel_tol) {
  if (!(Z > 0.0) || Z == 1.0) throw Error("invalid_argument", "twisted_integral: Z must be positive and != 1");
  const double log_z = std::log(Z);
  auto f = [&](double t) { return L(cplx(sigma, t)) * std::polar(1.0, t * log_z); };
  return integrate(f, t0, t1, oscillation_panel(sigma, log_z), rel_tol);
}

MomentSample twisted_moment(const Evaluator& L, double sigma, double T, double Z, double rel_tol) {
  if (!(T >= std::numbers::e)) throw Error("invalid_argument", "twisted_moment: T must be at least e");
  if (T > kMaxT) throw Error("out_of_range", "twisted_moment: T above the desk-scale cap 2000");
  if (!(Z >= std::numbers::e / 2)) throw Error("invalid_argument", "twisted_moment: Z must be at least e/2");
  const auto q = twisted_integral(L, sigma, T, 2 * T, Z, rel_tol);
  MomentSample s;
  s.sigma = sigma;
  s.T = T;
  s.Z = Z;
  s.value = q.value;
  s.abs_value = std::abs(q.value);
  s.error = q.error;
  s.abs_integral = q.abs_integral;
  return s;
}

double integral_moment(std::int64_t d, double two_m, double sigma, double T, double rel_tol) {
  if (d < 1) throw Error("invalid_argument", "integral_moment: d must be positive");
  if (!(T > 0.0)) throw Error("invalid_argument", "integral_moment: T must be positive");
  if (T > kMaxT) throw Error("out_of_range", "integral_moment: T above the desk-scale cap 2000");
  if (two_m == 0.0) return T;
  if (sigma == 1.0) throw Error("pole_on_path", "integral_moment: zeta_K has its pole at s = 1 on the segment");
  if (two_m < 0.0 && sigma <= 0.5) {
    throw Error("zero_on_path", "integral_moment: negative powers need sigma > 1/2");
  }
  lfun::EvalOptions opts;
  opts.target_abs_error = 1e-10;
  auto f = [&](double t) -> cplx {
    const double z = std::abs(lfun::dedekind_zeta_cyclotomic(d, cplx(sigma, t), opts));
    return std::pow(z, two_m);
  };
  const double panel = sigma <= 1.0 ? 0.25 : 1.0;
  return integrate(f, 0.0, T, panel, rel_tol).value.real();
}

// ---------------------------------------------------------------------------

GrowthFit fit_growth(const std::vector<MomentSample>& samples, std::optional<double> beta_fixed) {
  if (samples.size() < 4) throw Error("degenerate_spread", "fit_growth: need at least 4 samples");
  double t_min = samples.front().T, t_max = samples.front().T;
  for (const auto& s : samples) {
    t_min = std::min(t_min, s.T);
    t_max = std::max(t_max, s.T);
    if (!(s.abs_value > 0.0)) throw Error("degenerate_spread", "fit_growth: sample with zero modulus");
  }
  if (t_max < 8.0 * t_min) throw Error("degenerate_spread", "fit_growth: samples must span a factor of 8 in T");

  const Eigen::Index rows = static_cast<Eigen::Index>(samples.size());
  const Eigen::Index cols = beta_fixed ? 2 : 3;
  Eigen::MatrixXd A(rows, cols);
  Eigen::VectorXd y(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& s = samples[static_cast<std::size_t>(i)];
    const double lt = std::log(s.T), llt = std::log(lt);
    A(i, 0) = 1.0;
    A(i, 1) = lt;
    y(i) = std::log(s.abs_value);
    if (beta_fixed) {
      y(i) -= *beta_fixed * llt;
    } else {
      A(i, 2) = llt;
    }
  }
  const Eigen::VectorXd coef = A.colPivHouseholderQr().solve(y);
  const Eigen::VectorXd resid = y - A * coef;
  GrowthFit fit;
  fit.eta = coef(1);
  fit.beta = beta_fixed ? *beta_fixed : coef(2);
  fit.residual = std::sqrt(resid.squaredNorm() / static_cast<double>(rows));
  fit.Q = std::exp(coef(0) + resid.maxCoeff());
  return fit;
}

// ---------------------------------------------------------------------------

Rational moment_log_power(const Rational& sigma, const Rational& two_m, int degree) {
  if (two_m < 0) {
    if (sigma >= 1) return 0;
    throw Error("lemma_not_applicable", "negative moment needs sigma >= 1");
  }
  Rational m = two_m / 2;
  m.canonicalize();
  if (m == 0) return 0;
  if (m.get_den() != 1) throw Error("lemma_not_applicable", "moment bound needs an integer m");
  Rational threshold = 1 - 1 / (m * degree);
  if (threshold < Rational(1, 2)) threshold = Rational(1, 2);
  if (sigma > threshold) return 0;
  if (sigma == threshold) return m * m * degree;
  throw Error("lemma_not_applicable", "sigma below 1 - 1/(m [K:Q])");
}

HolderBudget holder_budget(int n) {
  struct Spec {
    int field, multiplier;
    long two_m;
    Rational weight;
  };
  std::vector<Spec> specs;
  bool pointwise = false;
  auto is_prime = [](int p) { return p >= 2 && arith::factorize(p).size() == 1 && arith::factorize(p)[0].second == 1; };
  switch (n) {
    case 3:
      specs = {{3, 2, 2, Rational(1, 2)}, {1, 4, -4, Rational(1, 4)}, {3, 4, -4, Rational(1, 4)}};
      break;
    case 4:
      specs = {{1, 2, 4, Rational(1, 4)}, {4, 3, 4, Rational(1, 4)}, {1, 4, -2, Rational(1, 2)}};
      break;
    case 6:
      specs = {{1, 3, 4, Rational(1, 4)}, {3, 4, 2, Rational(1, 2)}, {6, 5, 6, Rational(1, 6)}, {1, 6, -12, Rational(1, 12)}};
      break;
    case 8:
      specs = {{1, 4, 4, Rational(1, 4)}, {4, 6, 4, Rational(1, 4)}, {8, 7, 4, Rational(1, 4)}, {1, 8, -4, Rational(1, 4)}};
      break;
    case 16:
      specs = {{1, 8, 4, Rational(1, 4)}, {4, 12, 4, Rational(1, 4)}, {8, 14, 4, Rational(1, 4)}, {16, 15, 4, Rational(1, 4)}};
      pointwise = true;
      break;
    default:
      if (n % 2 == 0 && n / 2 >= 5 && is_prime(n / 2)) {
        const int p = n / 2;
        specs = {{1, p, 4, Rational(1, 4)}, {p, 2 * p - 2, 2, Rational(1, 2)}, {2 * p, 2 * p - 1, 4, Rational(1, 4)}};
        pointwise = true;
      } else {
        throw Error("unsupported_n", "holder_budget: n must be 3, 4, 6, 8, 16 or 2p with p >= 5 prime");
      }
  }
  const auto inv = arith::group_invariants(n);
  const Rational edge(1, 2 * inv.a);
  HolderBudget budget;
  budget.n = n;
  budget.uses_pointwise_log = pointwise;
  Rational beta = pointwise ? 1 : 0;
  for (const auto& s : specs) {
    HolderFactor f;
    f.field = s.field;
    f.degree = static_cast<int>(arith::euler_phi(s.field));
    f.multiplier = s.multiplier;
    f.two_m = s.two_m;
    f.weight = s.weight;
    f.label = (s.field <= 2 ? std::string("zeta") : "zeta_Q(zeta_" + std::to_string(s.field) + ")") + "(" +
              std::to_string(s.multiplier) + "s)";
    f.log_power = moment_log_power(edge * s.multiplier, f.two_m, f.degree);
    beta += f.weight * f.log_power;
    budget.factors.push_back(std::move(f));
  }
  beta.canonicalize();
  if (beta.get_den() != 1) throw Error("internal", "holder_budget: non-integral log power");
  budget.beta = static_cast<int>(beta.get_num().get_si());
  return budget;
}

}  // namespace tauber::moments
