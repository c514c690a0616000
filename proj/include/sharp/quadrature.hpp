#pragma once

#include <functional>
#include <span>
#include <vector>

#include "sharp/weights.hpp"

namespace sharp {

struct Interval {
  double lo;
  double hi;
  bool finite() const;
  double half_width() const { return 0.5 * (hi - lo); }
};

/// Gauss-Legendre nodes and weights on [-1, 1]; cached per order.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussRule& gauss_legendre(int order);

/// A symmetric composite Gauss-Legendre rule for plain dx integration.
///
/// `interval` is the nominal integration interval (possibly infinite); the
/// nodes live in the finite window [-truncation_bound, truncation_bound].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  Interval interval{0.0, 0.0};
  double truncation_bound = 0.0;
  double tail_estimate = 0.0;

  std::size_t size() const { return nodes.size(); }
  /// Nodes with x > 0 and doubled weights; valid for even integrands.
  QuadratureRule positive_half() const;
};

struct RuleOptions {
  double tol = 1e-12;
  int order = 20;
  int min_panels = 0;
  std::size_t node_budget = 1'000'000;
  /// Multiplies the initial window (unbounded I), or divides the gap to c
  /// (bounded I). Used to check that a truncated result is window-independent.
  double window_scale = 1.0;
};

/// Gauss-Legendre panels with Chebyshev-spaced breakpoints. zero_levels > 0 adds
/// a breakpoint at 0 and that many geometrically shrinking panels (ratio 0.2)
/// on each side of it, for weights that are not smooth at the origin.
QuadratureRule composite_rule(Interval window, int panels, int order = 20, int zero_levels = 0);

/// Gauss-Legendre panels between consecutive (sorted, deduplicated) breakpoints.
QuadratureRule panel_rule(std::vector<double> breakpoints, int order = 20);

/// Sign changes of f sampled at `samples` Chebyshev-Lobatto points of the
/// window, refined to full precision.
std::vector<double> sign_changes(const std::function<double(double)>& f, Interval window,
                                 int samples);

/// Composite rule on the window whose breakpoints also include the sign changes
/// of f, so |f|^p is smooth on every panel. With grading_levels > 0 the panels
/// next to each root are split geometrically (ratio 0.2) toward the root.
QuadratureRule root_aligned_rule(const std::function<double(double)>& f, Interval window,
                                 int panels, int samples, int order = 20,
                                 int grading_levels = 0);

/// Rule over I for integrands x^k W(x)^p, k <= 2n. For p = inf the window is
/// chosen as for p = 2.
QuadratureRule build_rule(const WeightSpec& w, int n, double p, double tol = 1e-12);
QuadratureRule build_rule(const WeightSpec& w, int n, double p, const RuleOptions& opt);

/// Rule over a finite subdomain [lo, hi] of I; no truncation.
QuadratureRule build_rule_on(const WeightSpec& w, Interval domain, int n, double p,
                             const RuleOptions& opt = {});

double integrate(const QuadratureRule& rule, const std::function<double(double)>& f);

/// Largest |f| on [lo, hi]: dense Chebyshev-distributed sampling followed by
/// Brent refinement around every sampled local maximum.
struct SupResult {
  double value = 0.0;
  double argmax = 0.0;
  std::vector<double> local_maxima;  // refined abscissas of sampled local maxima
};
SupResult sup_search(const std::function<double(double)>& f, Interval window, int samples);

/// (int_domain |P W|^p dx)^{1/p}, or ess sup |P W| for p = inf.
/// `pw` evaluates P(x) W(x). For finite p the rule must cover the domain.
double weighted_Lp_norm(const std::function<double(double)>& pw, int degree, double p,
                        Interval domain, const QuadratureRule& rule);

/// F(a) = (2/pi) int_0^1 a x Q'(ax) / sqrt(1 - x^2) dx.
double mrs_integrand_a(const WeightSpec& w, double a);

/// (2/pi) int_0^1 Q'(a x) sqrt(1 - x^2) / x dx.
double mrs_integral_b(const WeightSpec& w, double a);

/// Integral over [a, b] of a function with a possible integrable power
/// singularity at a: geometric panels toward a, uniform panels elsewhere,
/// refined until successive results agree to rel_tol.
double integrate_graded(const std::function<double(double)>& f, double a, double b,
                        double rel_tol = 1e-14);

}  // namespace sharp
