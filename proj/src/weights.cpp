#include "sharp/weights.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

namespace sharp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double parse_real(std::string_view s, std::string_view context) {
  std::string buf(s);
  char* end = nullptr;
  const double v = std::strtod(buf.c_str(), &end);
  if (buf.empty() || end != buf.c_str() + buf.size()) {
    throw std::invalid_argument("bad number '" + buf + "' in weight spec '" +
                                std::string(context) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      parts.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return parts;
}

std::string shortest(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

// exp_k(u) for k = 0..ell, with exp_0(u) = u.
std::vector<double> exp_tower(double u, int ell) {
  std::vector<double> e(static_cast<std::size_t>(ell) + 1);
  e[0] = u;
  for (int k = 1; k <= ell; ++k) e[k] = std::exp(e[k - 1]);
  return e;
}

}  // namespace

WeightSpec WeightSpec::freud(double alpha) {
  if (!(alpha > 1.0)) throw std::invalid_argument("freud weight needs alpha > 1");
  WeightSpec w;
  w.kind_ = WeightKind::Freud;
  w.alpha_ = alpha;
  w.c_ = kInf;
  return w;
}

WeightSpec WeightSpec::erdos(double alpha, int ell) {
  if (!(alpha > 1.0)) throw std::invalid_argument("erdos weight needs alpha > 1");
  if (ell < 1) throw std::invalid_argument("erdos weight needs ell >= 1");
  WeightSpec w;
  w.kind_ = WeightKind::ErdosExp;
  w.alpha_ = alpha;
  w.ell_ = ell;
  w.c_ = kInf;
  return w;
}

WeightSpec WeightSpec::bounded(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw std::invalid_argument("bounded weight needs finite c > 0");
  }
  WeightSpec w;
  w.kind_ = WeightKind::BoundedRational;
  w.c_ = c;
  return w;
}

WeightSpec WeightSpec::unweighted() {
  WeightSpec w;
  w.kind_ = WeightKind::Unweighted;
  w.c_ = 1.0;
  return w;
}

WeightSpec WeightSpec::custom(std::string name, double c, Fn q, Fn qp, Fn qpp) {
  if (!(c > 0.0)) throw std::invalid_argument("custom weight needs c > 0");
  if (!q || !qp || !qpp) throw std::invalid_argument("custom weight needs Q, Q', Q''");
  WeightSpec w;
  w.kind_ = WeightKind::Custom;
  w.c_ = c;
  w.custom_ = std::make_shared<const CustomFns>(
      CustomFns{std::move(name), std::move(q), std::move(qp), std::move(qpp)});
  return w;
}

WeightSpec WeightSpec::parse(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  const auto parts = split(lower, ':');
  const std::string_view head = parts.front();
  if (head == "unweighted" && parts.size() == 1) return unweighted();
  if (head == "freud" && parts.size() == 2) return freud(parse_real(parts[1], text));
  if (head == "bounded" && parts.size() == 2) return bounded(parse_real(parts[1], text));
  if (head == "erdos" && parts.size() == 3) {
    const double ell = parse_real(parts[2], text);
    if (ell != std::floor(ell)) throw std::invalid_argument("erdos ell must be an integer");
    return erdos(parse_real(parts[1], text), static_cast<int>(ell));
  }
  throw std::invalid_argument("unrecognized weight spec '" + std::string(text) + "'");
}

bool WeightSpec::is_bounded() const { return std::isfinite(c_); }

double WeightSpec::Q(double x) const {
  const double ax = std::abs(x);
  switch (kind_) {
    case WeightKind::Freud:
      return std::pow(ax, alpha_);
    case WeightKind::ErdosExp: {
      const auto e = exp_tower(std::pow(ax, alpha_), ell_);
      const auto e0 = exp_tower(0.0, ell_);
      if (ell_ == 1) return std::expm1(e[0]);
      return e[ell_] - e0[ell_];
    }
    case WeightKind::BoundedRational:
      return ax >= c_ ? kInf : x * x / ((c_ - ax) * (c_ + ax));
    case WeightKind::Unweighted:
      return 0.0;
    case WeightKind::Custom:
      return custom_->q(x);
  }
  return 0.0;
}

double WeightSpec::Qp(double x) const {
  const double ax = std::abs(x);
  const double sgn = x < 0 ? -1.0 : 1.0;
  switch (kind_) {
    case WeightKind::Freud:
      return ax == 0.0 ? 0.0 : sgn * alpha_ * std::pow(ax, alpha_ - 1.0);
    case WeightKind::ErdosExp: {
      if (ax == 0.0) return 0.0;
      const auto e = exp_tower(std::pow(ax, alpha_), ell_);
      double d = 1.0;  // d exp_ell / du
      for (int k = 1; k <= ell_; ++k) d *= e[k];
      return sgn * alpha_ * std::pow(ax, alpha_ - 1.0) * d;
    }
    case WeightKind::BoundedRational: {
      if (ax >= c_) return sgn * kInf;
      const double den = (c_ - ax) * (c_ + ax);
      return 2.0 * c_ * c_ * x / (den * den);
    }
    case WeightKind::Unweighted:
      return 0.0;
    case WeightKind::Custom:
      return custom_->qp(x);
  }
  return 0.0;
}

double WeightSpec::Qpp(double x) const {
  const double ax = std::abs(x);
  switch (kind_) {
    case WeightKind::Freud:
      if (ax == 0.0 && alpha_ < 2.0) return kInf;
      return alpha_ * (alpha_ - 1.0) * std::pow(ax, alpha_ - 2.0);
    case WeightKind::ErdosExp: {
      if (ax == 0.0 && alpha_ < 2.0) return kInf;
      const double u = std::pow(ax, alpha_);
      const auto e = exp_tower(u, ell_);
      double d = 1.0, dd_over_d = 0.0, partial = 1.0;
      for (int k = 1; k <= ell_; ++k) {
        dd_over_d += partial;  // prod_{i<k} e_i
        partial *= e[k];
        d *= e[k];
      }
      const double du = alpha_ * std::pow(ax, alpha_ - 1.0);
      const double ddu = alpha_ * (alpha_ - 1.0) * std::pow(ax, alpha_ - 2.0);
      return ddu * d + du * du * d * dd_over_d;
    }
    case WeightKind::BoundedRational: {
      if (ax >= c_) return kInf;
      const double c2 = c_ * c_;
      const double den = (c_ - ax) * (c_ + ax);
      return 2.0 * c2 * (c2 + 3.0 * x * x) / (den * den * den);
    }
    case WeightKind::Unweighted:
      return 0.0;
    case WeightKind::Custom:
      return custom_->qpp(x);
  }
  return 0.0;
}

WeightSpec WeightSpec::with_lambda_est(double lambda) const {
  WeightSpec w = *this;
  w.lambda_est_ = lambda;
  return w;
}

std::string WeightSpec::to_string() const {
  switch (kind_) {
    case WeightKind::Freud:
      return "freud:" + shortest(alpha_);
    case WeightKind::ErdosExp:
      return "erdos:" + shortest(alpha_) + ":" + std::to_string(ell_);
    case WeightKind::BoundedRational:
      return "bounded:" + shortest(c_);
    case WeightKind::Unweighted:
      return "unweighted";
    case WeightKind::Custom:
      return "custom:" + custom_->name;
  }
  return {};
}

double eval_W(const WeightSpec& w, double x) {
  if (w.is_unweighted()) {
    if (!(std::abs(x) <= 1.0)) throw DomainError("eval_W: x outside [-1, 1]");
    return 1.0;
  }
  if (!(std::abs(x) < w.c())) throw DomainError("eval_W: x outside the interval I");
  return std::exp(-w.Q(x));
}

double eval_T(const WeightSpec& w, double x) {
  if (w.is_unweighted()) throw DomainError("eval_T: T is undefined for the unweighted case");
  if (x == 0.0 || !(std::abs(x) < w.c())) throw DomainError("eval_T: need 0 < |x| < c");
  const double ax = std::abs(x);
  if (w.kind() == WeightKind::Freud) return w.alpha();
  if (w.kind() == WeightKind::ErdosExp && w.ell() == 1) {
    // alpha u e^u / (e^u - 1), u = |x|^alpha; expm1 keeps small u accurate.
    const double u = std::pow(ax, w.alpha());
    if (u > 700.0) return w.alpha() * u;
    return w.alpha() * u * std::exp(u) / std::expm1(u);
  }
  if (w.kind() == WeightKind::BoundedRational) {
    const double c2 = w.c() * w.c();
    return 2.0 * c2 / ((w.c() - ax) * (w.c() + ax));
  }
  return ax * w.Qp(ax) / w.Q(ax);
}

std::string_view property_name(ClassProperty p) {
  switch (p) {
    case ClassProperty::EvenAndZero: return "a:even-and-zero";
    case ClassProperty::ContinuousQp: return "b:continuous-derivative";
    case ClassProperty::Convex: return "c:positive-second-derivative";
    case ClassProperty::BlowUp: return "d:blow-up-at-endpoint";
    case ClassProperty::QuasiIncreasing: return "e:T-quasi-increasing";
    case ClassProperty::LambdaAboveOne: return "e:Lambda-above-one";
    case ClassProperty::DerivativeRatio: return "f:derivative-ratio";
  }
  return "?";
}

namespace {

double default_x_max(const WeightSpec& w) {
  if (w.is_bounded()) return w.c() * (1.0 - 1e-3);
  // Largest x with Q(x) <= 50 (found by doubling and bisection).
  constexpr double kTarget = 50.0;
  double hi = 1.0;
  while (w.Q(hi) < kTarget && hi < 1e12) hi *= 2.0;
  double lo = 0.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (w.Q(mid) < kTarget ? lo : hi) = mid;
  }
  return lo;
}

bool rel_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), 1e-300});
}

}  // namespace

ClassReport validate_class(const WeightSpec& w, int grid_size, std::optional<double> x_max) {
  if (grid_size < 100) throw std::invalid_argument("validate_class: grid_size must be >= 100");
  ClassReport report;
  if (w.is_unweighted()) {
    report.exempt = true;
    return report;
  }
  const double xm = x_max.value_or(default_x_max(w));
  if (!(xm > 0.0 && xm < w.c())) throw DomainError("validate_class: need 0 < x_max < c");

  std::vector<double> xs(static_cast<std::size_t>(grid_size));
  const double lo = std::log(xm * 1e-4), hi = std::log(xm);
  for (int i = 0; i < grid_size; ++i) {
    xs[i] = std::exp(lo + (hi - lo) * i / (grid_size - 1));
  }

  auto record = [&](ClassProperty p, bool ok, std::string detail) {
    report.checks.push_back({p, ok, std::move(detail)});
    if (!ok) {
      report.failures.push_back(p);
      report.passed = false;
    }
  };

  {  // (a)
    bool ok = w.Q(0.0) == 0.0;
    for (double x : xs) ok = ok && rel_close(w.Q(x), w.Q(-x), 1e-14);
    record(ClassProperty::EvenAndZero, ok, ok ? "" : "Q(0) != 0 or Q not even");
  }
  {  // (b): Q' finite, odd, and consistent with Q by central differences
    bool ok = std::abs(w.Qp(0.0)) < 1e-12;
    std::string detail;
    for (double x : xs) {
      const double qp = w.Qp(x);
      if (!std::isfinite(qp) || !rel_close(qp, -w.Qp(-x), 1e-14)) {
        ok = false;
        detail = "Q' not finite/odd";
        break;
      }
      // step on the local scale of Q' so fast growth near c or at large x stays resolved
      double scale = std::min(x, std::abs(qp / w.Qpp(x)));
      if (w.is_bounded()) scale = std::min(scale, w.c() - x);
      const double h = 1e-4 * scale;
      const double fd = (w.Q(x + h) - w.Q(x - h)) / (2.0 * h);
      if (x + h < w.c() && !rel_close(fd, qp, 1e-6)) {
        ok = false;
        detail = "Q' inconsistent with Q";
        break;
      }
      const double fd2 = (w.Qp(x + h) - w.Qp(x - h)) / (2.0 * h);
      if (x + h < w.c() && !rel_close(fd2, w.Qpp(x), 1e-6)) {
        ok = false;
        detail = "Q'' inconsistent with Q'";
        break;
      }
    }
    record(ClassProperty::ContinuousQp, ok, detail);
  }
  {  // (c)
    bool ok = true;
    for (double x : xs) ok = ok && w.Qpp(x) > 0.0;
    record(ClassProperty::Convex, ok, ok ? "" : "Q'' <= 0 at a sampled point");
  }
  {  // (d): unbounded I follows from convexity and Q' > 0; bounded I needs Q -> inf
    bool ok = true;
    for (std::size_t i = 1; i < xs.size(); ++i) ok = ok && w.Q(xs[i]) > w.Q(xs[i - 1]);
    if (w.is_bounded()) {
      const double q_edge = w.Q(w.c() * (1.0 - 1e-9));
      ok = ok && q_edge > 1e6 * std::max(w.Q(0.5 * w.c()), 1e-300);
    }
    record(ClassProperty::BlowUp, ok, ok ? "" : "Q does not increase to infinity");
  }
  {  // (e)
    std::vector<double> t(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) t[i] = eval_T(w, xs[i]);
    double lambda = t[0], running_max = t[0], quasi = 1.0;
    bool finite = true;
    for (double ti : t) {
      finite = finite && std::isfinite(ti) && ti > 0.0;
      lambda = std::min(lambda, ti);
      running_max = std::max(running_max, ti);
      quasi = std::max(quasi, running_max / ti);
    }
    report.lambda_est = lambda;
    report.quasi_increasing_constant = quasi;
    record(ClassProperty::QuasiIncreasing, finite && quasi < 1e6,
           "estimated C = " + std::to_string(quasi));
    record(ClassProperty::LambdaAboveOne, finite && lambda > 1.0 + 1e-9,
           "estimated Lambda = " + std::to_string(lambda));
  }
  {  // (f)
    double ratio = 0.0;
    for (double x : xs) {
      const double qp = std::abs(w.Qp(x));
      ratio = std::max(ratio, w.Qpp(x) * w.Q(x) / (qp * qp));
    }
    report.derivative_ratio_constant = ratio;
    record(ClassProperty::DerivativeRatio, std::isfinite(ratio) && ratio < 1e6,
           "estimated C = " + std::to_string(ratio));
  }
  return report;
}

WeightSpec require_class(const WeightSpec& w, int grid_size, std::optional<double> x_max) {
  const ClassReport report = validate_class(w, grid_size, x_max);
  if (report.exempt) return w;
  if (!report.passed) {
    const ClassProperty p = report.failures.front();
    throw ClassViolation(p, "weight " + w.to_string() + " violates property " +
                                std::string(property_name(p)));
  }
  return w.with_lambda_est(report.lambda_est);
}

}  // namespace sharp
