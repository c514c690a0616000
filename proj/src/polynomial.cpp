#include "sharp/polynomial.hpp"

#include <algorithm>
#include <stdexcept>

namespace sharp {

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.push_back(0.0);
}

double Polynomial::operator()(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double factorial(int n) {
  if (n < 0) throw std::invalid_argument("factorial of a negative number");
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

double Polynomial::derivative_at_zero(int N) const {
  if (N < 0) throw std::invalid_argument("derivative order must be >= 0");
  if (N > degree()) return 0.0;
  return factorial(N) * coeffs_[N];
}

Polynomial Polynomial::derivative(int order) const {
  std::vector<double> c = coeffs_;
  for (int r = 0; r < order; ++r) {
    if (c.size() <= 1) return Polynomial({0.0});
    std::vector<double> d(c.size() - 1);
    for (std::size_t k = 1; k < c.size(); ++k) d[k - 1] = static_cast<double>(k) * c[k];
    c = std::move(d);
  }
  return Polynomial(std::move(c));
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  std::vector<double> c(std::max(coeffs_.size(), other.coeffs_.size()), 0.0);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) c[k] += coeffs_[k];
  for (std::size_t k = 0; k < other.coeffs_.size(); ++k) c[k] += other.coeffs_[k];
  return Polynomial(std::move(c));
}

Polynomial Polynomial::operator*(double s) const {
  std::vector<double> c = coeffs_;
  for (double& v : c) v *= s;
  return Polynomial(std::move(c));
}

}  // namespace sharp
