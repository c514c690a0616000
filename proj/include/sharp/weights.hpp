#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sharp {

/// Raised when an argument lies outside the domain where an operation is defined.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when a numerical procedure fails to reach its tolerance or budget.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class WeightKind { Freud, ErdosExp, BoundedRational, Unweighted, Custom };

/// Exponential weight W = exp(-Q) on the symmetric interval (-c, c).
///
/// Built-in kinds carry closed forms for Q, Q' and Q''. Custom weights supply
/// all three evaluators. Instances are immutable and cheap to copy.
class WeightSpec {
 public:
  using Fn = std::function<double(double)>;

  static WeightSpec freud(double alpha);
  static WeightSpec erdos(double alpha, int ell);
  static WeightSpec bounded(double c);
  static WeightSpec unweighted();
  static WeightSpec custom(std::string name, double c, Fn q, Fn qp, Fn qpp);

  /// Parses "freud:<alpha>", "erdos:<alpha>:<ell>", "bounded:<c>" or
  /// "unweighted" (case-insensitive).
  static WeightSpec parse(std::string_view text);

  WeightKind kind() const { return kind_; }
  double alpha() const { return alpha_; }
  int ell() const { return ell_; }
  /// Half-length of I; +inf for weights on the whole line.
  double c() const { return c_; }
  bool is_bounded() const;
  bool is_unweighted() const { return kind_ == WeightKind::Unweighted; }

  double Q(double x) const;
  double Qp(double x) const;
  double Qpp(double x) const;

  std::optional<double> lambda_est() const { return lambda_est_; }
  WeightSpec with_lambda_est(double lambda) const;

  /// Mini-grammar form; custom weights render as "custom:<name>".
  std::string to_string() const;

 private:
  struct CustomFns {
    std::string name;
    Fn q, qp, qpp;
  };

  WeightSpec() = default;

  WeightKind kind_ = WeightKind::Unweighted;
  double alpha_ = 0.0;
  int ell_ = 0;
  double c_ = 1.0;
  std::optional<double> lambda_est_;
  std::shared_ptr<const CustomFns> custom_;
};

/// W(x) = exp(-Q(x)). Throws DomainError for |x| >= c when c is finite
/// (the unweighted case accepts the closed interval [-1, 1]).
double eval_W(const WeightSpec& w, double x);

/// T(x) = x Q'(x) / Q(x).
double eval_T(const WeightSpec& w, double x);

enum class ClassProperty {
  EvenAndZero,         // (a)
  ContinuousQp,        // (b)
  Convex,              // (c)
  BlowUp,              // (d)
  QuasiIncreasing,     // (e), T quasi-increasing
  LambdaAboveOne,      // (e), inf T > 1
  DerivativeRatio,     // (f)
};

std::string_view property_name(ClassProperty p);

struct PropertyCheck {
  ClassProperty property;
  bool passed;
  std::string detail;
};

struct ClassReport {
  bool passed = true;
  bool exempt = false;  // unweighted
  std::vector<PropertyCheck> checks;
  std::vector<ClassProperty> failures;
  double lambda_est = 0.0;
  double quasi_increasing_constant = 0.0;
  double derivative_ratio_constant = 0.0;
};

/// Sampled check of class F(C^2) membership on a log-spaced grid of (0, x_max].
/// x_max defaults to a point well inside I.
ClassReport validate_class(const WeightSpec& w, int grid_size = 1000,
                           std::optional<double> x_max = std::nullopt);

class ClassViolation : public std::runtime_error {
 public:
  ClassViolation(ClassProperty p, const std::string& what)
      : std::runtime_error(what), property_(p) {}
  ClassProperty property() const { return property_; }

 private:
  ClassProperty property_;
};

/// Validates and returns a copy carrying lambda_est; throws ClassViolation
/// naming the first failed property.
WeightSpec require_class(const WeightSpec& w, int grid_size = 1000,
                         std::optional<double> x_max = std::nullopt);

}  // namespace sharp
