#include "sharp/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "sharp/linprog.hpp"
#include "sharp/mrs.hpp"

namespace sharp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_query(const SharpConstantQuery& q) {
  if (!(q.p > 0.0)) throw std::invalid_argument("sharp constant query: p must be in (0, inf]");
  if (q.N < 0) throw std::invalid_argument("sharp constant query: N must be >= 0");
  if (q.n < 1) throw std::invalid_argument("sharp constant query: n must be >= 1");
}

// Everything a solver needs about one discretized problem instance.
struct Setup {
  MRSNumbers mrs;
  Interval domain;
  Interval window;  // finite window actually sampled
  QuadratureRule rule;
  std::shared_ptr<const OrthoBasis> basis;
  std::vector<int> ks;     // basis indices with the parity of N
  Eigen::VectorXd g;       // pi_k^{(N)}(0) for k in ks
  std::vector<double> mass;  // rule weight * W^2 at each node
};

Setup prepare(const SharpConstantQuery& q, const SolveOptions& opt, double rule_p,
              double window_scale, int min_nodes) {
  Setup s;
  s.mrs = mrs_numbers(q.w, q.n);
  s.domain = restricted_domain(q);

  RuleOptions ro;
  ro.tol = opt.rule_tol;
  ro.window_scale = window_scale;
  ro.min_panels = (min_nodes + ro.order - 1) / ro.order;
  if (q.w.is_unweighted() || q.variant == Variant::Restricted) {
    s.rule = build_rule_on(q.w, s.domain, q.n, rule_p, ro);
    s.window = s.domain;
  } else {
    s.rule = build_rule(q.w, q.n, rule_p, ro);
    s.window = {-s.rule.truncation_bound, s.rule.truncation_bound};
  }

  s.mass.resize(s.rule.size());
  for (std::size_t i = 0; i < s.rule.size(); ++i) {
    s.mass[i] = s.rule.weights[i] * std::exp(-2.0 * q.w.Q(s.rule.nodes[i]));
  }
  s.basis = std::make_shared<const OrthoBasis>(OrthoBasis::stieltjes(s.rule.nodes, s.mass, q.n));

  const auto d = s.basis->derivatives_at_zero(q.N);
  for (int k = q.N % 2; k <= q.n; k += 2) s.ks.push_back(k);
  s.g.resize(static_cast<Eigen::Index>(s.ks.size()));
  for (std::size_t j = 0; j < s.ks.size(); ++j) s.g[j] = d[s.ks[j]];
  return s;
}

// Rows pi_k(x) W(x), k in ks, for each x.
Eigen::MatrixXd design_matrix(const Setup& s, const WeightSpec& w, std::span<const double> xs) {
  Eigen::MatrixXd A(static_cast<Eigen::Index>(xs.size()), static_cast<Eigen::Index>(s.ks.size()));
  std::vector<double> vals(s.basis->degree() + 1);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    s.basis->eval_weighted(xs[i], w.Q(xs[i]), vals);
    for (std::size_t j = 0; j < s.ks.size(); ++j) A(i, j) = vals[s.ks[j]];
  }
  return A;
}

std::vector<double> full_coeffs(const Setup& s, const Eigen::VectorXd& c) {
  std::vector<double> out(s.basis->degree() + 1, 0.0);
  for (std::size_t j = 0; j < s.ks.size(); ++j) out[s.ks[j]] = c[j];
  return out;
}

SharpConstantResult trivial_result(const SharpConstantQuery& q) {
  // N > n: P^{(N)} vanishes identically
  SharpConstantResult r;
  r.query = q;
  const MRSNumbers m = mrs_numbers(q.w, q.n);
  r.a_n = m.a_n;
  r.b_n = m.b_n;
  r.domain = restricted_domain(q);
  r.extremal = Polynomial({1.0});
  r.certificate.method = "trivial";
  r.certified = true;
  return r;
}

void finish(SharpConstantResult& r, const SharpConstantQuery& q, const Setup& s,
            const Eigen::VectorXd& c, double unnormalized) {
  r.query = q;
  r.a_n = s.mrs.a_n;
  r.b_n = s.mrs.b_n;
  r.domain = s.domain;
  r.unnormalized = unnormalized;
  const double inv_p = std::isfinite(q.p) ? 1.0 / q.p : 0.0;
  r.value = std::pow(s.mrs.b_n, -q.N - inv_p) * unnormalized;
  Eigen::VectorXd cc = c;
  if (s.g.dot(cc) < 0.0) cc = -cc;
  r.expansion = WeightedExpansion(s.basis, full_coeffs(s, cc), q.w);
  r.extremal = r.expansion.to_monomial();
}

template <class Impl>
SharpConstantResult with_window_check(const SharpConstantQuery& q, const SolveOptions& opt,
                                      Impl impl) {
  check_query(q);
  if (q.N > q.n) return trivial_result(q);
  SharpConstantResult r = impl(1.0);
  const bool truncated = q.variant == Variant::FullInterval && !q.w.is_unweighted();
  if (opt.window_check && truncated) {
    const SharpConstantResult wide = impl(2.0);
    r.certificate.window_change = std::abs(wide.value - r.value) / r.value;
    r.certified = r.certified && r.certificate.window_change < 1e-8;
  } else {
    r.certificate.window_change = kNaN;
  }
  return r;
}

// ---- p = 2 ----------------------------------------------------------------

using Mp = boost::multiprecision::cpp_bin_float_100;

double gram_value(const SharpConstantQuery& q, const Setup& s) {
  // moments of the scaled variable u = x / h, restricted to the parity block of N
  const double h = std::max(std::abs(s.window.lo), std::abs(s.window.hi));
  const int K = static_cast<int>(s.ks.size());
  std::vector<Mp> moments(2 * q.n + 1, Mp(0));
  for (std::size_t i = 0; i < s.rule.size(); ++i) {
    if (!(s.mass[i] > 0.0)) continue;
    const Mp u = Mp(s.rule.nodes[i]) / Mp(h);
    const Mp m = Mp(s.mass[i]);
    Mp pw = m;
    for (int j = 0; j <= 2 * q.n; ++j) {
      moments[j] += pw;
      pw *= u;
    }
  }
  // Cholesky of G_{ab} = moments[k_a + k_b]
  std::vector<std::vector<Mp>> L(K, std::vector<Mp>(K, Mp(0)));
  for (int a = 0; a < K; ++a) {
    for (int b = 0; b <= a; ++b) {
      Mp sum = moments[s.ks[a] + s.ks[b]];
      for (int j = 0; j < b; ++j) sum -= L[a][j] * L[b][j];
      if (a == b) {
        if (sum <= 0) return kNaN;
        L[a][a] = boost::multiprecision::sqrt(sum);
      } else {
        L[a][b] = sum / L[b][b];
      }
    }
  }
  // e has a single entry N! h^{-N} at index N; e^T G^{-1} e = |L^{-1} e|^2
  const int idx = static_cast<int>(std::find(s.ks.begin(), s.ks.end(), q.N) - s.ks.begin());
  std::vector<Mp> y(K, Mp(0));
  Mp e = Mp(factorial(q.N)) / boost::multiprecision::pow(Mp(h), q.N);
  for (int a = idx; a < K; ++a) {
    Mp sum = a == idx ? e : Mp(0);
    for (int j = idx; j < a; ++j) sum -= L[a][j] * y[j];
    y[a] = sum / L[a][a];
  }
  Mp quad = 0;
  for (int a = idx; a < K; ++a) quad += y[a] * y[a];
  const double unnormalized = static_cast<double>(boost::multiprecision::sqrt(quad));
  return std::pow(s.mrs.b_n, -q.N - 0.5) * unnormalized;
}

// ---- p = inf ----------------------------------------------------------------

std::vector<double> chebyshev_nonnegative(double hi, int count) {
  std::vector<double> xs;
  for (int j = 0; j < count; ++j) {
    const double x = hi * std::cos(std::numbers::pi * (j + 0.5) / count);
    if (x >= 0.0) xs.push_back(x);
  }
  xs.push_back(0.0);
  xs.push_back(hi);
  std::sort(xs.begin(), xs.end());
  return xs;
}

// ---- finite p ----------------------------------------------------------------

struct Objective {
  const Eigen::MatrixXd& A;
  const Eigen::VectorXd& omega;
  double p;

  double value(const Eigen::VectorXd& c, double eps) const {
    const Eigen::VectorXd r = A * c;
    double s = 0.0;
    for (Eigen::Index i = 0; i < r.size(); ++i) {
      s += omega[i] * (eps > 0.0 ? std::pow(r[i] * r[i] + eps * eps, 0.5 * p)
                                 : std::pow(std::abs(r[i]), p));
    }
    return s;
  }
};

// Minimizes the (smoothed) objective under g^T c = 1 by Newton's method with
// backtracking. Returns iterations used.
int newton_stage(const Objective& obj, const Eigen::VectorXd& g, double eps, Eigen::VectorXd& c) {
  const double p = obj.p;
  int it = 0, polish = 0;
  for (; it < 200; ++it) {
    const Eigen::VectorXd r = obj.A * c;
    Eigen::VectorXd d1(r.size()), d2(r.size());
    for (Eigen::Index i = 0; i < r.size(); ++i) {
      const double r2 = r[i] * r[i] + eps * eps;
      if (eps > 0.0) {
        d1[i] = p * r[i] * std::pow(r2, 0.5 * p - 1.0);
        d2[i] = p * std::pow(r2, 0.5 * p - 2.0) * ((p - 1.0) * r[i] * r[i] + eps * eps);
      } else {
        const double ar = std::abs(r[i]);
        d1[i] = p * std::pow(ar, p - 1.0) * (r[i] < 0 ? -1.0 : 1.0);
        d2[i] = ar == 0.0 ? 0.0 : p * (p - 1.0) * std::pow(ar, p - 2.0);
      }
    }
    const Eigen::VectorXd grad = obj.A.transpose() * obj.omega.cwiseProduct(d1);
    Eigen::MatrixXd H = obj.A.transpose() * obj.omega.cwiseProduct(d2).asDiagonal() * obj.A;
    H.diagonal().array() += 1e-15 * H.diagonal().maxCoeff();
    const Eigen::LDLT<Eigen::MatrixXd> ldlt(H);
    const Eigen::VectorXd Hg = ldlt.solve(g), Hgrad = ldlt.solve(grad);
    const double lambda = -((1.0 - g.dot(c)) + g.dot(Hgrad)) / g.dot(Hg);
    const Eigen::VectorXd d = -(Hgrad + lambda * Hg);

    const double f0 = obj.value(c, eps);
    const double slope = grad.dot(d);
    if (-slope <= 1e-12 * f0) {
      // quadratic region: the decrease is below rounding, so take full steps
      c += d;
      if (d.norm() <= 1e-14 * c.norm() || ++polish >= 3) break;
      continue;
    }
    double step = 1.0;
    Eigen::VectorXd trial = c + d;
    while (obj.value(trial, eps) > f0 + 1e-4 * step * slope && step > 1e-12) {
      step *= 0.5;
      trial = c + step * d;
    }
    c = trial;
    if (step * d.norm() <= 1e-15 * c.norm()) break;
  }
  return it;
}

// Relative size of the component of the gradient orthogonal to g, measured
// against the gradient built from absolute values (the rounding scale).
double projected_gradient(const Objective& obj, const Eigen::VectorXd& g, double eps,
                          const Eigen::VectorXd& c) {
  const Eigen::VectorXd r = obj.A * c;
  Eigen::VectorXd d1(r.size());
  for (Eigen::Index i = 0; i < r.size(); ++i) {
    d1[i] = obj.p * r[i] * std::pow(r[i] * r[i] + eps * eps, 0.5 * obj.p - 1.0);
    if (r[i] == 0.0) d1[i] = 0.0;
  }
  const Eigen::VectorXd wd = obj.omega.cwiseProduct(d1);
  const Eigen::VectorXd grad = obj.A.transpose() * wd;
  const Eigen::VectorXd scale = obj.A.cwiseAbs().transpose() * wd.cwiseAbs();
  const Eigen::VectorXd proj = grad - (g.dot(grad) / g.squaredNorm()) * g;
  return proj.norm() / scale.norm();
}

// Iteratively reweighted least squares for p <= 1 at a fixed smoothing eps.
int irls_stage(const Objective& obj, const Eigen::VectorXd& g, double eps, Eigen::VectorXd& c) {
  const double p = obj.p;
  double prev = obj.value(c, eps);
  int it = 0;
  for (; it < 60; ++it) {
    const Eigen::VectorXd r = obj.A * c;
    Eigen::VectorXd u(r.size());
    for (Eigen::Index i = 0; i < r.size(); ++i) {
      u[i] = obj.omega[i] * std::pow(r[i] * r[i] + eps * eps, 0.5 * p - 1.0);
    }
    Eigen::MatrixXd H = obj.A.transpose() * u.asDiagonal() * obj.A;
    H.diagonal().array() += 1e-15 * H.diagonal().maxCoeff();
    const Eigen::VectorXd y = H.ldlt().solve(g);
    c = y / g.dot(y);
    const double cur = obj.value(c, eps);
    if (std::abs(prev - cur) <= 1e-13 * cur) break;
    prev = cur;
  }
  return it;
}

struct IrlsOutcome {
  Eigen::VectorXd c;
  double objective = kInf;
  double drift = kInf;
  int iterations = 0;
};

IrlsOutcome irls_continuation(const Objective& obj, const Eigen::VectorXd& g, Eigen::VectorXd c,
                              double eps_start) {
  IrlsOutcome out;
  const double scale = (obj.A * c).cwiseAbs().maxCoeff();
  std::vector<double> history;
  for (double eps_rel = eps_start; eps_rel >= 1e-10 * 0.999; eps_rel *= 0.5) {
    out.iterations += irls_stage(obj, g, eps_rel * scale, c);
    history.push_back(obj.value(c, 0.0));
  }
  out.c = c;
  out.objective = history.back();
  out.drift = 0.0;
  const std::size_t n = history.size();
  for (std::size_t i = n >= 4 ? n - 3 : 1; i < n; ++i) {
    out.drift = std::max(out.drift, std::abs(history[i] - history[i - 1]) / history.back());
  }
  return out;
}

// p = 1 on the continuous problem. With panels split at the roots of f = P W,
// Phi(c) = int |f| is smooth: its gradient is int sign(f) pi_k W and its Hessian
// comes from the motion of the roots, sum_r 2 a(r) a(r)^T / |f'(r)|.
struct RootNewton {
  Eigen::VectorXd c;
  double phi = 0.0;  // half-line integral
  double gap = kInf;
  int iterations = 0;
  bool converged = false;
};

RootNewton l1_root_newton(const Setup& s, const WeightSpec& w, Eigen::VectorXd c, double hi,
                          int panels, int samples) {
  const Eigen::VectorXd& g = s.g;
  struct Local {
    Eigen::VectorXd grad, scale;
    Eigen::MatrixXd H;
    double phi = 0.0;
  };
  auto local = [&](const Eigen::VectorXd& cc, bool with_hessian) {
    const WeightedExpansion e(s.basis, full_coeffs(s, cc), w);
    auto f = [&e](double x) { return e(x); };
    const QuadratureRule rule = root_aligned_rule(f, {0.0, hi}, panels, samples);
    const Eigen::MatrixXd A = design_matrix(s, w, rule.nodes);
    const Eigen::VectorXd vals = A * cc;
    Eigen::VectorXd ws(vals.size()), wa(vals.size());
    Local out;
    for (Eigen::Index i = 0; i < vals.size(); ++i) {
      const double sign = vals[i] > 0.0 ? 1.0 : vals[i] < 0.0 ? -1.0 : 0.0;
      ws[i] = rule.weights[i] * sign;
      wa[i] = rule.weights[i];
      out.phi += rule.weights[i] * std::abs(vals[i]);
    }
    out.grad = A.transpose() * ws;
    out.scale = A.cwiseAbs().transpose() * wa;
    if (with_hessian) {
      const std::vector<double> roots = sign_changes(f, {0.0, hi}, samples);
      const Eigen::MatrixXd R = design_matrix(s, w, roots);
      out.H = Eigen::MatrixXd::Zero(cc.size(), cc.size());
      for (std::size_t j = 0; j < roots.size(); ++j) {
        const double h = 1e-6 * std::max(hi, 1e-300);
        const double slope = std::abs(f(roots[j] + h) - f(roots[j] - h)) / (2.0 * h);
        if (!(slope > 0.0)) continue;
        const Eigen::VectorXd a = R.row(static_cast<Eigen::Index>(j)).transpose();
        out.H += (2.0 / slope) * a * a.transpose();
      }
    }
    return out;
  };
  auto projected = [&](const Local& l) {
    const Eigen::VectorXd proj = l.grad - (g.dot(l.grad) / g.squaredNorm()) * g;
    return proj.norm() / l.scale.norm();
  };

  RootNewton out;
  Local cur = local(c, true);
  out.gap = projected(cur);
  const Eigen::Index m = c.size();
  for (; out.iterations < 40; ++out.iterations) {
    if (out.gap < 1e-13) {
      out.converged = true;
      break;
    }
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(m + 1, m + 1);
    K.topLeftCorner(m, m) = cur.H;
    K.topLeftCorner(m, m).diagonal().array() += 1e-13 * std::max(cur.H.diagonal().maxCoeff(), 1e-300);
    K.block(0, m, m, 1) = g;
    K.block(m, 0, 1, m) = g.transpose();
    Eigen::VectorXd rhs(m + 1);
    rhs.head(m) = -cur.grad;
    rhs[m] = 1.0 - g.dot(c);
    const Eigen::VectorXd sol = K.fullPivLu().solve(rhs);
    const Eigen::VectorXd d = sol.head(m);
    if (!d.allFinite()) break;
    double step = 1.0;
    Local trial;
    Eigen::VectorXd next;
    bool accepted = false;
    for (int k = 0; k < 30; ++k, step *= 0.5) {
      next = c + step * d;
      next /= g.dot(next);
      trial = local(next, false);
      if (trial.phi <= cur.phi * (1.0 + 1e-15)) {
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
    const double decrease = (cur.phi - trial.phi) / cur.phi;
    c = next;
    cur = local(c, true);
    out.gap = projected(cur);
    if (decrease < 1e-15 && step * d.norm() <= 1e-13 * c.norm()) {
      out.converged = out.gap < 1e-9;
      break;
    }
  }
  out.c = std::move(c);
  out.phi = cur.phi;
  return out;
}

}  // namespace

Interval restricted_domain(const SharpConstantQuery& q) {
  if (q.w.is_unweighted()) return {-1.0, 1.0};
  if (q.variant == Variant::Restricted) {
    const double a = compute_a_n(q.w, q.n);
    return {-a, a};
  }
  return {-q.w.c(), q.w.c()};
}

double p2_gram_value(const SharpConstantQuery& q, const SolveOptions& opt) {
  check_query(q);
  if (q.N > q.n) return 0.0;
  const Setup s = prepare(q, opt, 2.0, 1.0, 0);
  return gram_value(q, s);
}

SharpConstantResult solve_p2(const SharpConstantQuery& q_in, const SolveOptions& opt) {
  SharpConstantQuery q = q_in;
  q.p = 2.0;
  return with_window_check(q, opt, [&](double scale) {
    const Setup s = prepare(q, opt, 2.0, scale, 0);
    SharpConstantResult r;
    const double norm_g = s.g.norm();
    finish(r, q, s, s.g / (norm_g * norm_g), norm_g);
    r.certificate.method = "orthonormal-recurrence";
    if (q.n <= opt.gram_check_max_n) {
      const double gram = gram_value(q, s);
      r.certificate.gram_residual = std::abs(gram - r.value) / r.value;
      r.certified = r.certificate.gram_residual < 1e-8;
    } else {
      r.certificate.gram_residual = kNaN;
      r.certified = true;
    }
    return r;
  });
}

SharpConstantResult solve_pinf(const SharpConstantQuery& q_in, const SolveOptions& opt) {
  SharpConstantQuery q = q_in;
  q.p = kInf;
  return with_window_check(q, opt, [&](double scale) {
    const Setup s = prepare(q, opt, kInf, scale, 0);
    const double hi = s.window.hi;
    std::vector<double> grid = chebyshev_nonnegative(hi, 8 * (q.n + 1));
    Eigen::MatrixXd A = design_matrix(s, q.w, grid);

    SharpConstantResult r;
    BoxLpResult lp;
    SupResult sup;
    int rounds = 0, iterations = 0;
    auto weighted = [&](const Eigen::VectorXd& c) {
      const WeightedExpansion e(s.basis, full_coeffs(s, c), q.w);
      return [e](double x) { return e(x); };
    };
    for (;; ++rounds) {
      lp = maximize_in_box(A, s.g);
      iterations += lp.iterations;
      if (!lp.converged && lp.primal <= 0.0) throw NumericalError("solve_pinf: LP failed");
      sup = sup_search(weighted(lp.x), {0.0, hi}, 16 * (q.n + 1));
      if (sup.value <= 1.0 + 1e-10) break;
      if (rounds >= 50) throw NumericalError("solve_pinf: refinement did not converge");
      std::vector<double> added;
      const auto f = weighted(lp.x);
      for (double x : sup.local_maxima) {
        if (std::abs(f(x)) > 1.0) added.push_back(x);
      }
      added.push_back(sup.argmax);
      const Eigen::MatrixXd rows = design_matrix(s, q.w, added);
      Eigen::MatrixXd grown(A.rows() + rows.rows(), A.cols());
      grown << A, rows;
      A = std::move(grown);
      grid.insert(grid.end(), added.begin(), added.end());
    }
    const double unnormalized = lp.primal / sup.value;
    finish(r, q, s, lp.x / sup.value, unnormalized);

    const auto f = weighted(lp.x);
    int active = 0;
    for (double x : grid) active += std::abs(f(x)) >= (1.0 - 1e-6) * sup.value;
    r.certificate.method = "lp-interior-point";
    r.certificate.active_constraints = active;
    r.certificate.duality_gap = (lp.dual - unnormalized) / unnormalized;
    r.certificate.iterations = iterations;
    r.certificate.refinement_rounds = rounds;
    r.certified = lp.converged && std::abs(r.certificate.duality_gap) < 1e-8;
    return r;
  });
}

SharpConstantResult solve_general_p(const SharpConstantQuery& q, const SolveOptions& opt) {
  if (!std::isfinite(q.p)) throw std::invalid_argument("solve_general_p: p must be finite");
  return with_window_check(q, opt, [&](double scale) {
    const Setup s = prepare(q, opt, q.p, scale, 16 * (q.n + 1));
    const Eigen::VectorXd& g = s.g;
    const double p = q.p;

    // objective on the positive half; the even integrand doubles the weights
    Eigen::MatrixXd A;
    Eigen::VectorXd omega;
    auto load = [&](const QuadratureRule& half) {
      A = design_matrix(s, q.w, half.nodes);
      omega = 2.0 * Eigen::Map<const Eigen::VectorXd>(
                        half.weights.data(), static_cast<Eigen::Index>(half.weights.size()));
    };
    const QuadratureRule half = s.rule.positive_half();
    load(half);
    // positive_half already doubled the weights
    omega *= 0.5;

    struct Outcome {
      Eigen::VectorXd c;
      double phi = kInf;
      double gap = 0.0;
      double drift = 0.0;
      int iterations = 0;
    };
    // cold: full continuation (and multistart for p < 1); warm: short continuation from c
    auto optimize = [&](Eigen::VectorXd c, bool warm) {
      const Objective obj{A, omega, p};
      Outcome out;
      if (p > 1.0) {
        // p < 2: the unsmoothed Hessian degenerates at sign changes, so stop at a tiny eps
        double eps = 0.0;
        if (p < 2.0) {
          const double scale_r = (A * c).cwiseAbs().maxCoeff();
          for (double eps_rel = warm ? 1e-6 : 1e-2; eps_rel >= 1e-10 * 0.999; eps_rel *= 0.1) {
            eps = eps_rel * scale_r;
            out.iterations += newton_stage(obj, g, eps, c);
          }
        } else {
          out.iterations += newton_stage(obj, g, 0.0, c);
        }
        out.phi = obj.value(c, 0.0);
        out.gap = projected_gradient(obj, g, eps, c);
        out.drift = std::abs(obj.value(c, eps) - out.phi) / out.phi;
        out.c = std::move(c);
        return out;
      }
      const double eps_start = warm ? 1e-6 : 1e-2;
      if (p == 1.0 || warm) {
        IrlsOutcome o = irls_continuation(obj, g, c, eps_start);
        out.c = std::move(o.c);
        out.phi = o.objective;
        out.drift = o.drift;
        out.iterations = o.iterations;
        return out;
      }
      const Objective l1{A, omega, 1.0};
      const IrlsOutcome seed = irls_continuation(l1, g, c, eps_start);
      std::mt19937_64 rng(opt.seed);
      std::normal_distribution<double> normal;
      std::vector<Eigen::VectorXd> starts{seed.c};
      while (static_cast<int>(starts.size()) < opt.multistarts + 1) {
        Eigen::VectorXd v(g.size());
        for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = normal(rng);
        const double gv = g.dot(v);
        if (std::abs(gv) < 1e-8 * g.norm() * v.norm()) continue;
        starts.push_back(v / gv);
      }
      out.iterations = seed.iterations;
      for (const auto& start : starts) {
        IrlsOutcome o = irls_continuation(obj, g, start, eps_start);
        out.iterations += o.iterations;
        if (o.objective < out.phi) {
          out.c = std::move(o.c);
          out.phi = o.objective;
          out.drift = o.drift;
        }
      }
      return out;
    };

    Outcome best = optimize(g / g.squaredNorm(), false);
    int iterations = best.iterations;
    int rounds = 0;
    double change = 0.0;
    const int panels = std::max(2, static_cast<int>(half.size()) / 20);
    const Interval positive{0.0, s.window.hi};
    const int samples = 32 * (q.n + 1);
    if (p == 1.0) {
      // Newton on the continuous objective, objective normalized to g^T c = 1
      const RootNewton rn = l1_root_newton(s, q.w, best.c, positive.hi, panels, samples);
      rounds = rn.iterations;
      best.gap = rn.gap;
      change = rn.converged ? 0.0 : kInf;
      best.c = rn.c;
      best.phi = 2.0 * rn.phi;
    } else if (p < 2.0) {
      // |P W|^p is not smooth at sign changes of P: re-solve on panels graded toward the roots
      for (rounds = 1; rounds <= 6; ++rounds) {
        const WeightedExpansion e(s.basis, full_coeffs(s, best.c), q.w);
        const QuadratureRule aligned = root_aligned_rule(
            [&e](double x) { return e(x); }, positive, panels, samples, 20, 4);
        load(aligned);
        Outcome next = optimize(best.c, true);
        iterations += next.iterations;
        change = std::abs(next.phi - best.phi) / next.phi;
        best = std::move(next);
        if (change < 1e-10) break;
      }
      rounds = std::min(rounds, 6);
    }

    SharpConstantResult r;
    r.certificate.method = p > 1.0 ? "smoothed-newton" : p == 1.0 ? "irls+root-newton" : "irls-multistart";
    r.certificate.duality_gap = best.gap;
    r.certificate.objective_drift = std::max(best.drift, change);
    r.certificate.iterations = iterations;
    r.certificate.refinement_rounds = rounds;
    finish(r, q, s, best.c, std::pow(best.phi, -1.0 / p));
    if (p > 1.0) {
      r.certified = best.gap < 1e-10 && r.certificate.objective_drift < 1e-9;
    } else if (p == 1.0) {
      r.certified = best.gap < 1e-9 && change == 0.0;
      r.certificate.objective_drift = best.drift;
    }
    return r;
  });
}

SharpConstantResult solve(const SharpConstantQuery& q, const SolveOptions& opt) {
  if (q.p == 2.0) return solve_p2(q, opt);
  if (!std::isfinite(q.p)) return solve_pinf(q, opt);
  return solve_general_p(q, opt);
}

double candidate_ratio(const SharpConstantQuery& q, const WeightedExpansion& P,
                       int quadrature_nodes_per_degree) {
  check_query(q);
  const MRSNumbers m = mrs_numbers(q.w, q.n);
  const Interval domain = restricted_domain(q);
  Interval window = domain;
  if (!window.finite() || (q.variant == Variant::FullInterval && q.w.is_bounded() &&
                           !q.w.is_unweighted())) {
    const QuadratureRule r = build_rule(q.w, q.n, q.p);
    window = {-r.truncation_bound, r.truncation_bound};
  }
  const int degree = P.degree();
  double norm;
  if (!std::isfinite(q.p)) {
    norm = sup_search(P, window, 16 * (degree + 1)).value;
  } else {
    // Gauss-Legendre of a different order than the solvers' rules
    constexpr int kOrder = 13;
    const int panels =
        std::max(2, (quadrature_nodes_per_degree * (degree + 1) + kOrder - 1) / kOrder);
    const QuadratureRule rule = composite_rule(window, panels, kOrder);
    double s = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
      s += rule.weights[i] * std::pow(std::abs(P(rule.nodes[i])), q.p);
    }
    norm = std::pow(s, 1.0 / q.p);
  }
  const double inv_p = std::isfinite(q.p) ? 1.0 / q.p : 0.0;
  return std::pow(m.b_n, -q.N - inv_p) * std::abs(P.derivative_at_zero(q.N)) / norm;
}

}  // namespace sharp
