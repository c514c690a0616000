#pragma once

#include <vector>

namespace sharp {

/// Real polynomial in the monomial basis; coeffs[k] multiplies x^k.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coeffs);

  /// Degree of the coefficient vector (trailing zeros are kept).
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<double>& coeffs() const { return coeffs_; }

  double operator()(double x) const;

  /// P^{(N)}(0) = N! coeffs[N], or 0 when N exceeds the degree.
  double derivative_at_zero(int N) const;
  Polynomial derivative(int order = 1) const;

  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator*(double s) const;

 private:
  std::vector<double> coeffs_;
};

double factorial(int n);

}  // namespace sharp
