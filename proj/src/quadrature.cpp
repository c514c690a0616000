#include "sharp/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "sharp/mrs.hpp"

namespace sharp {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

GaussRule make_gauss_legendre(int order) {
  GaussRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute the derivative at the converged node
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= order; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = order == 1 ? 1.0 : order * (x * p1 - p0) / (x * x - 1.0);
    const double wgt = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[order - 1 - i] = x;
    rule.weights[i] = wgt;
    rule.weights[order - 1 - i] = wgt;
  }
  if (order % 2 == 1) rule.nodes[order / 2] = 0.0;
  return rule;
}

double log_sum_exp(const std::vector<double>& terms) {
  double m = -kInf;
  for (double t : terms) m = std::max(m, t);
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double t : terms) s += std::exp(t - m);
  return m + std::log(s);
}

// log of int x^k W(x)^p dx over the rule (restricted to x > 0; the integrand is even).
double log_moment(const QuadratureRule& rule, const WeightSpec& w, int k, double p) {
  std::vector<double> terms;
  terms.reserve(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double x = rule.nodes[i];
    if (x <= 0.0) continue;
    terms.push_back(std::log(rule.weights[i]) + k * std::log(x) - p * w.Q(x));
  }
  return log_sum_exp(terms);
}

// log of an upper bound for int_R^c x^k e^{-pQ(x)} dx, using that
// log f is concave-decreasing past R once k/R < p Q'(R).
double log_tail_bound(const WeightSpec& w, int k, double p, double R) {
  const double slope = p * w.Qp(R) - k / R;
  if (!(slope > 0.0)) return kInf;
  const double log_f = k * std::log(R) - p * w.Q(R);
  double bound = log_f - std::log(slope);
  if (w.is_bounded()) bound = std::min(bound, log_f + std::log(w.c() - R));
  return bound;
}

// int_0^h T_m(x/h)^2 W(x)^p dx, sensitive to under-resolved oscillation
double oscillatory_moment(const QuadratureRule& rule, const WeightSpec& w, int m, double p,
                          double h) {
  double s = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double x = rule.nodes[i];
    if (x <= 0.0) continue;
    const double t = std::cos(m * std::acos(std::clamp(x / h, -1.0, 1.0)));
    s += rule.weights[i] * t * t * std::exp(-p * w.Q(x));
  }
  return s;
}

// Q has a fractional power singularity at 0 unless alpha is an even integer
int zero_grading(const WeightSpec& w) {
  switch (w.kind()) {
    case WeightKind::Freud:
    case WeightKind::ErdosExp: {
      const double a = w.alpha();
      return a == std::floor(a) && static_cast<long>(a) % 2 == 0 ? 0 : 16;
    }
    case WeightKind::Custom:
      return 16;
    default:
      return 0;
  }
}

double effective_p(double p) { return std::isfinite(p) ? p : 2.0; }

}  // namespace

bool Interval::finite() const { return std::isfinite(lo) && std::isfinite(hi); }

const GaussRule& gauss_legendre(int order) {
  if (order < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<GaussRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[order];
  if (!slot) slot = std::make_unique<GaussRule>(make_gauss_legendre(order));
  return *slot;
}

QuadratureRule QuadratureRule::positive_half() const {
  QuadratureRule half;
  half.interval = interval;
  half.truncation_bound = truncation_bound;
  half.tail_estimate = tail_estimate;
  for (std::size_t i = 0; i < size(); ++i) {
    if (nodes[i] > 0.0) {
      half.nodes.push_back(nodes[i]);
      half.weights.push_back(2.0 * weights[i]);
    } else if (nodes[i] == 0.0) {
      half.nodes.push_back(0.0);
      half.weights.push_back(weights[i]);
    }
  }
  return half;
}

QuadratureRule composite_rule(Interval window, int panels, int order, int zero_levels) {
  if (!window.finite() || !(window.hi > window.lo)) {
    throw DomainError("composite_rule: window must be finite and nonempty");
  }
  if (panels < 1) throw std::invalid_argument("composite_rule: panels must be >= 1");
  // breakpoints cluster like Chebyshev points so every panel spans the same
  // phase of a high degree polynomial
  const double centre = 0.5 * (window.lo + window.hi);
  const double half_width = 0.5 * (window.hi - window.lo);
  std::vector<double> breaks(panels + 1);
  for (int j = 0; j <= panels; ++j) {
    breaks[j] = j == 0 ? window.lo : j == panels ? window.hi : centre - half_width * std::cos(kPi * j / panels);
  }
  if (zero_levels > 0 && window.lo <= 0.0 && window.hi >= 0.0) {
    double gap = kInf;
    for (double& b : breaks) {
      if (std::abs(b) < 1e-12 * half_width) b = 0.0;  // a Chebyshev breakpoint at cos(pi/2)
      if (b != 0.0) gap = std::min(gap, std::abs(b));
    }
    breaks.push_back(0.0);
    for (int k = 1; k <= zero_levels; ++k) {
      gap *= 0.2;
      if (window.lo < 0.0) breaks.push_back(-gap);
      if (window.hi > 0.0) breaks.push_back(gap);
    }
  }
  QuadratureRule rule = panel_rule(std::move(breaks), order);
  rule.interval = window;
  rule.truncation_bound = std::max(std::abs(window.lo), std::abs(window.hi));
  return rule;
}

QuadratureRule panel_rule(std::vector<double> breakpoints, int order) {
  std::sort(breakpoints.begin(), breakpoints.end());
  if (breakpoints.size() < 2 || !(breakpoints.back() > breakpoints.front())) {
    throw DomainError("panel_rule: need at least two distinct breakpoints");
  }
  const double min_width = 1e-14 * (breakpoints.back() - breakpoints.front());
  std::vector<double> kept{breakpoints.front()};
  for (std::size_t j = 1; j < breakpoints.size(); ++j) {
    if (breakpoints[j] - kept.back() > min_width) kept.push_back(breakpoints[j]);
  }
  kept.back() = breakpoints.back();
  const GaussRule& g = gauss_legendre(order);
  QuadratureRule rule;
  rule.interval = {kept.front(), kept.back()};
  rule.truncation_bound = std::max(std::abs(kept.front()), std::abs(kept.back()));
  for (std::size_t j = 0; j + 1 < kept.size(); ++j) {
    const double h = kept[j + 1] - kept[j];
    const double mid = kept[j] + 0.5 * h;
    for (int i = 0; i < order; ++i) {
      rule.nodes.push_back(mid + 0.5 * h * g.nodes[i]);
      rule.weights.push_back(0.5 * h * g.weights[i]);
    }
  }
  return rule;
}

std::vector<double> sign_changes(const std::function<double(double)>& f, Interval window,
                                 int samples) {
  if (!window.finite()) throw DomainError("sign_changes: window must be finite");
  samples = std::max(samples, 3);
  const double mid = 0.5 * (window.lo + window.hi);
  const double half = window.half_width();
  std::vector<double> roots;
  double x0 = window.lo, f0 = f(x0);
  for (int j = 1; j < samples; ++j) {
    const double x1 = j == samples - 1 ? window.hi : mid - half * std::cos(kPi * j / (samples - 1));
    const double f1 = f(x1);
    if (f1 == 0.0) continue;  // exact zeros (or underflow) are bracketed by the next sample
    if ((f0 < 0.0 && f1 > 0.0) || (f0 > 0.0 && f1 < 0.0)) {
      std::uintmax_t iters = 100;
      const auto bracket = boost::math::tools::toms748_solve(
          f, x0, x1, f0, f1, boost::math::tools::eps_tolerance<double>(52), iters);
      roots.push_back(0.5 * (bracket.first + bracket.second));
    }
    x0 = x1;
    f0 = f1;
  }
  return roots;
}

QuadratureRule root_aligned_rule(const std::function<double(double)>& f, Interval window,
                                 int panels, int samples, int order, int grading_levels) {
  if (!window.finite() || !(window.hi > window.lo)) {
    throw DomainError("root_aligned_rule: window must be finite and nonempty");
  }
  panels = std::max(panels, 1);
  const std::vector<double> roots = sign_changes(f, window, samples);
  std::vector<double> breaks = roots;
  const double centre = 0.5 * (window.lo + window.hi);
  const double half_width = window.half_width();
  for (int j = 0; j <= panels; ++j) {
    breaks.push_back(j == 0         ? window.lo
                     : j == panels ? window.hi
                                   : centre - half_width * std::cos(kPi * j / panels));
  }
  if (grading_levels > 0) {
    std::sort(breaks.begin(), breaks.end());
    std::vector<double> extra;
    for (double r : roots) {
      const auto it = std::lower_bound(breaks.begin(), breaks.end(), r);
      const double left = it == breaks.begin() ? 0.0 : r - *std::prev(it);
      const double right = std::next(it) == breaks.end() ? 0.0 : *std::next(it) - r;
      double scale = 1.0;
      for (int k = 0; k < grading_levels; ++k) {
        scale *= 0.2;
        if (left > 0.0) extra.push_back(r - scale * left);
        if (right > 0.0) extra.push_back(r + scale * right);
      }
    }
    breaks.insert(breaks.end(), extra.begin(), extra.end());
  }
  QuadratureRule rule = panel_rule(std::move(breaks), order);
  rule.interval = window;
  return rule;
}

namespace {

// Doubles the panel count until the moments k = 0, n, 2n of W^p agree between
// successive rules.
QuadratureRule refine_panels(const WeightSpec& w, Interval window, int n, double p,
                             const RuleOptions& opt) {
  int panels = std::max({2, opt.min_panels, 2 * ((n + 10) / 10)});
  if (panels % 2) ++panels;
  const std::array<int, 3> ks{0, n, 2 * n};
  const int zero_levels = zero_grading(w);
  QuadratureRule coarse = composite_rule(window, panels, opt.order, zero_levels);
  while (true) {
    if (static_cast<std::size_t>(2 * panels) * opt.order > opt.node_budget) {
      throw NumericalError("build_rule: node budget exhausted before convergence");
    }
    QuadratureRule fine = composite_rule(window, 2 * panels, opt.order, zero_levels);
    bool converged = true;
    for (int k : ks) {
      const double diff = std::expm1(log_moment(coarse, w, k, p) - log_moment(fine, w, k, p));
      if (!(std::abs(diff) < opt.tol)) converged = false;
    }
    const double h = std::max(std::abs(window.lo), std::abs(window.hi));
    const double osc = oscillatory_moment(fine, w, 2 * n, p, h);
    if (!(std::abs(oscillatory_moment(coarse, w, 2 * n, p, h) - osc) <
          opt.tol * std::exp(log_moment(fine, w, 0, p)))) {
      converged = false;
    }
    if (converged) return fine;
    coarse = std::move(fine);
    panels *= 2;
  }
}

}  // namespace

QuadratureRule build_rule(const WeightSpec& w, int n, double p, double tol) {
  RuleOptions opt;
  opt.tol = tol;
  return build_rule(w, n, p, opt);
}

QuadratureRule build_rule(const WeightSpec& w, int n, double p, const RuleOptions& opt) {
  if (!(opt.tol > 0.0)) throw std::invalid_argument("build_rule: tol must be > 0");
  if (n < 1) throw std::invalid_argument("build_rule: n must be >= 1");
  if (!(p > 0.0)) throw std::invalid_argument("build_rule: p must be > 0");
  const double pe = effective_p(p);

  if (w.is_unweighted()) {
    QuadratureRule rule = refine_panels(w, {-1.0, 1.0}, n, pe, opt);
    rule.interval = {-1.0, 1.0};
    rule.truncation_bound = 1.0;
    return rule;
  }

  const double a2n = compute_a_n(w, 2 * n);
  const double c = w.c();
  double R = w.is_bounded() ? a2n + 0.5 * (c - a2n) / opt.window_scale
                            : 1.5 * a2n * opt.window_scale;
  const int k_max = 2 * n;
  double log_tail = kInf;
  for (int attempt = 0;; ++attempt) {
    if (attempt > 400) throw NumericalError("build_rule: tail bound cannot be met");
    QuadratureRule probe = composite_rule({-R, R}, std::max(8, 2 * ((n + 10) / 10)), opt.order);
    bool ok = true;
    log_tail = -kInf;
    for (int k : {0, k_max}) {
      const double lt = log_tail_bound(w, k, pe, R);
      const double li = log_moment(probe, w, k, pe);
      log_tail = std::max(log_tail, lt - li);
      if (!(lt - li < std::log(opt.tol))) ok = false;
    }
    if (ok) break;
    R = w.is_bounded() ? c - 0.5 * (c - R) : 1.25 * R;
  }
  QuadratureRule rule = refine_panels(w, {-R, R}, n, pe, opt);
  rule.interval = {-c, c};
  rule.truncation_bound = R;
  rule.tail_estimate = std::exp(log_tail);
  return rule;
}

QuadratureRule build_rule_on(const WeightSpec& w, Interval domain, int n, double p,
                             const RuleOptions& opt) {
  if (!domain.finite()) throw DomainError("build_rule_on: domain must be finite");
  if (domain.lo < -w.c() || domain.hi > w.c()) throw DomainError("build_rule_on: domain outside I");
  QuadratureRule rule = refine_panels(w, domain, std::max(n, 1), effective_p(p), opt);
  rule.interval = domain;
  return rule;
}

double integrate(const QuadratureRule& rule, const std::function<double(double)>& f) {
  double s = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) s += rule.weights[i] * f(rule.nodes[i]);
  return s;
}

SupResult sup_search(const std::function<double(double)>& f, Interval window, int samples) {
  if (!window.finite()) throw DomainError("sup_search: window must be finite");
  samples = std::max(samples, 16);
  const double mid = 0.5 * (window.lo + window.hi);
  const double half = window.half_width();
  std::vector<double> xs(samples), ys(samples);
  for (int j = 0; j < samples; ++j) {
    // ascending Chebyshev-Lobatto points including both ends
    xs[j] = mid - half * std::cos(kPi * j / (samples - 1));
    ys[j] = std::abs(f(xs[j]));
  }
  xs.front() = window.lo;
  xs.back() = window.hi;

  SupResult out;
  auto consider = [&](double x, double y) {
    if (y > out.value) {
      out.value = y;
      out.argmax = x;
    }
  };
  for (int j = 0; j < samples; ++j) {
    const bool left_ok = j == 0 || ys[j] >= ys[j - 1];
    const bool right_ok = j == samples - 1 || ys[j] >= ys[j + 1];
    if (!(left_ok && right_ok) || ys[j] == 0.0) continue;
    const double a = xs[std::max(j - 1, 0)];
    const double b = xs[std::min(j + 1, samples - 1)];
    auto neg = [&](double x) { return -std::abs(f(x)); };
    const auto [x_best, neg_best] = boost::math::tools::brent_find_minima(neg, a, b, 52);
    double x = x_best, y = -neg_best;
    if (ys[j] > y) {
      x = xs[j];
      y = ys[j];
    }
    out.local_maxima.push_back(x);
    consider(x, y);
  }
  return out;
}

double weighted_Lp_norm(const std::function<double(double)>& pw, int degree, double p,
                        Interval domain, const QuadratureRule& rule) {
  if (!(p > 0.0)) throw std::invalid_argument("weighted_Lp_norm: p must be > 0");
  if (!std::isfinite(p)) {
    Interval window = domain;
    if (!window.finite()) window = {-rule.truncation_bound, rule.truncation_bound};
    return sup_search(pw, window, 16 * (degree + 1)).value;
  }
  const bool covers = (domain.finite() && rule.interval.lo == domain.lo &&
                       rule.interval.hi == domain.hi) ||
                      (!domain.finite() && !rule.interval.finite());
  if (!covers) throw DomainError("weighted_Lp_norm: rule does not cover the domain");
  double s = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    s += rule.weights[i] * std::pow(std::abs(pw(rule.nodes[i])), p);
  }
  return std::pow(s, 1.0 / p);
}

double integrate_graded(const std::function<double(double)>& f, double a, double b,
                        double rel_tol) {
  constexpr int kOrder = 20;
  constexpr double kRatio = 0.2;
  constexpr int kLevels = 44;  // kRatio^44 ~ 1e-31
  const GaussRule& g = gauss_legendre(kOrder);
  auto panel = [&](double lo, double hi) {
    const double mid = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
    double s = 0.0;
    for (int i = 0; i < kOrder; ++i) s += g.weights[i] * f(mid + h * g.nodes[i]);
    return s * h;
  };

  const double len = b - a;
  double graded = 0.0;
  double hi = a + kRatio * len;
  for (int j = 0; j < kLevels; ++j) {
    const double lo = a + (hi - a) * kRatio;
    graded += panel(lo, hi);
    hi = lo;
  }
  // power-law patch on [a, hi]: f ~ C (x - a)^s
  const double d = hi - a;
  const double f1 = f(a + d), f2 = f(a + 0.5 * d);
  if (f1 != 0.0 && f2 != 0.0 && (f1 > 0) == (f2 > 0)) {
    const double s = std::log2(f1 / f2);
    if (s > -1.0) graded += f1 * d / (s + 1.0);
  }

  auto uniform = [&](int panels) {
    const double lo = a + kRatio * len;
    const double h = (b - lo) / panels;
    double s = 0.0;
    for (int j = 0; j < panels; ++j) s += panel(lo + j * h, lo + (j + 1) * h);
    return s;
  };
  int panels = 4;
  double prev = uniform(panels);
  for (int it = 0; it < 14; ++it) {
    panels *= 2;
    const double cur = uniform(panels);
    const double total = std::abs(cur + graded);
    if (std::abs(cur - prev) <= rel_tol * total || cur == prev) return cur + graded;
    prev = cur;
  }
  throw NumericalError("integrate_graded: no convergence");
}

double mrs_integrand_a(const WeightSpec& w, double a) {
  if (!(a > 0.0 && a < w.c())) throw DomainError("mrs_integrand_a: need 0 < a < c");
  auto f = [&](double theta) {
    const double s = std::sin(theta);
    return a * s * w.Qp(a * s);
  };
  return 2.0 / kPi * integrate_graded(f, 0.0, 0.5 * kPi, 1e-14);
}

double mrs_integral_b(const WeightSpec& w, double a) {
  if (!(a > 0.0 && a < w.c())) throw DomainError("mrs_integral_b: need 0 < a < c");
  // x = sin(theta): dx sqrt(1 - x^2) / x = cos^2(theta) / sin(theta) dtheta
  auto f = [&](double theta) {
    const double s = std::sin(theta), co = std::cos(theta);
    return w.Qp(a * s) * co * co / s;
  };
  return 2.0 / kPi * integrate_graded(f, 0.0, 0.5 * kPi, 1e-14);
}

}  // namespace sharp
