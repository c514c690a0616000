#pragma once

#include <memory>
#include <span>
#include <vector>

#include "sharp/polynomial.hpp"
#include "sharp/weights.hpp"

namespace sharp {

/// Orthonormal polynomials {pi_k} for a discrete measure sum_i m_i delta(x - x_i),
/// stored through their three-term recurrence
///
///   x pi_k = b_{k+1} pi_{k+1} + alpha_k pi_k + b_k pi_{k-1},  pi_0 = mu0^{-1/2}.
class OrthoBasis {
 public:
  /// Discretized Stieltjes procedure (Lanczos form with full
  /// reorthogonalization). Nodes with zero mass are ignored.
  static OrthoBasis stieltjes(std::span<const double> nodes, std::span<const double> mass,
                              int degree);

  int degree() const { return static_cast<int>(alpha_.size()) - 1; }
  double mu0() const { return mu0_; }
  const std::vector<double>& alpha() const { return alpha_; }
  /// b[k] for k = 0..degree; b[0] = 0.
  const std::vector<double>& b() const { return b_; }

  /// pi_k(x) exp(-Qx) for k = 0..degree, with internal rescaling so that large
  /// polynomial values against tiny weights neither overflow nor underflow early.
  void eval_weighted(double x, double Qx, std::span<double> out) const;

  /// pi_k^{(N)}(0) for k = 0..degree.
  std::vector<double> derivatives_at_zero(int N) const;

  /// Monomial coefficients of sum_k c_k pi_k.
  Polynomial to_monomial(std::span<const double> coeffs) const;

 private:
  std::vector<double> alpha_;
  std::vector<double> b_;
  double mu0_ = 0.0;
};

/// A polynomial stored as coefficients against an orthonormal basis, paired
/// with the weight; evaluates P(x) W(x) without forming monomials.
class WeightedExpansion {
 public:
  WeightedExpansion() = default;
  WeightedExpansion(std::shared_ptr<const OrthoBasis> basis, std::vector<double> coeffs,
                    WeightSpec w);

  double operator()(double x) const;  // P(x) W(x)
  double derivative_at_zero(int N) const;
  int degree() const { return basis_ ? basis_->degree() : 0; }
  const std::vector<double>& coeffs() const { return coeffs_; }
  const OrthoBasis& basis() const { return *basis_; }
  Polynomial to_monomial() const { return basis_->to_monomial(coeffs_); }

 private:
  std::shared_ptr<const OrthoBasis> basis_;
  std::vector<double> coeffs_;
  WeightSpec w_ = WeightSpec::unweighted();
};

}  // namespace sharp
