#include "sharp/ortho_basis.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace sharp {

OrthoBasis OrthoBasis::stieltjes(std::span<const double> nodes, std::span<const double> mass,
                                 int degree) {
  if (nodes.size() != mass.size()) throw std::invalid_argument("stieltjes: size mismatch");
  if (degree < 0) throw std::invalid_argument("stieltjes: negative degree");

  std::vector<double> xs, sq;
  double mu0 = 0.0, x_scale = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!(mass[i] > 0.0)) continue;
    xs.push_back(nodes[i]);
    sq.push_back(std::sqrt(mass[i]));
    mu0 += mass[i];
    x_scale = std::max(x_scale, std::abs(nodes[i]));
  }
  const auto M = static_cast<Eigen::Index>(xs.size());
  if (M <= degree) throw NumericalError("stieltjes: discrete measure has too few support points");

  const Eigen::Map<const Eigen::VectorXd> x(xs.data(), M);
  Eigen::MatrixXd Q(M, degree + 1);
  Q.col(0) = Eigen::Map<const Eigen::VectorXd>(sq.data(), M) / std::sqrt(mu0);

  OrthoBasis basis;
  basis.mu0_ = mu0;
  basis.alpha_.assign(degree + 1, 0.0);
  basis.b_.assign(degree + 1, 0.0);
  for (int k = 0; k <= degree; ++k) {
    Eigen::VectorXd v = x.cwiseProduct(Q.col(k));
    basis.alpha_[k] = Q.col(k).dot(v);
    if (k == degree) break;
    v -= basis.alpha_[k] * Q.col(k);
    if (k > 0) v -= basis.b_[k] * Q.col(k - 1);
    for (int pass = 0; pass < 2; ++pass) {
      const auto prev = Q.leftCols(k + 1);
      v -= prev * (prev.transpose() * v);
    }
    const double norm = v.norm();
    if (!(norm > 1e-13 * x_scale)) throw NumericalError("stieltjes: recurrence broke down");
    basis.b_[k + 1] = norm;
    Q.col(k + 1) = v / norm;
  }

  bool symmetric = true;
  for (double a : basis.alpha_) symmetric = symmetric && std::abs(a) <= 1e-12 * x_scale;
  if (symmetric) std::fill(basis.alpha_.begin(), basis.alpha_.end(), 0.0);
  return basis;
}

void OrthoBasis::eval_weighted(double x, double Qx, std::span<double> out) const {
  const int n = degree();
  if (static_cast<int>(out.size()) < n + 1) throw std::invalid_argument("eval_weighted: output too small");
  constexpr double kBig = 1e150;
  double log_scale = -Qx;  // true value = stored * exp(log_scale)
  double prev = 0.0, cur = 1.0 / std::sqrt(mu0_);
  auto emit = [&](int k) {
    out[k] = std::isfinite(log_scale) ? cur * std::exp(log_scale) : 0.0;
  };
  emit(0);
  for (int k = 0; k < n; ++k) {
    const double next = ((x - alpha_[k]) * cur - b_[k] * prev) / b_[k + 1];
    prev = cur;
    cur = next;
    if (std::abs(cur) > kBig) {
      prev /= kBig;
      cur /= kBig;
      log_scale += std::log(kBig);
    }
    emit(k + 1);
  }
}

std::vector<double> OrthoBasis::derivatives_at_zero(int N) const {
  if (N < 0) throw std::invalid_argument("derivatives_at_zero: N must be >= 0");
  const int n = degree();
  // d[j][k] = pi_k^{(j)}(0)
  std::vector<std::vector<double>> d(N + 1, std::vector<double>(n + 1, 0.0));
  d[0][0] = 1.0 / std::sqrt(mu0_);
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j <= N; ++j) {
      double v = -alpha_[k] * d[j][k];
      if (j > 0) v += j * d[j - 1][k];
      if (k > 0) v -= b_[k] * d[j][k - 1];
      d[j][k + 1] = v / b_[k + 1];
    }
  }
  return d[N];
}

Polynomial OrthoBasis::to_monomial(std::span<const double> coeffs) const {
  const int n = degree();
  std::vector<double> prev(n + 1, 0.0), cur(n + 1, 0.0), acc(n + 1, 0.0);
  cur[0] = 1.0 / std::sqrt(mu0_);
  for (int k = 0; k <= n; ++k) {
    if (k < static_cast<int>(coeffs.size()) && coeffs[k] != 0.0) {
      for (int j = 0; j <= k; ++j) acc[j] += coeffs[k] * cur[j];
    }
    if (k == n) break;
    std::vector<double> next(n + 1, 0.0);
    for (int j = 0; j <= k; ++j) {
      next[j + 1] += cur[j];
      next[j] -= alpha_[k] * cur[j];
      if (k > 0) next[j] -= b_[k] * prev[j];
    }
    for (double& v : next) v /= b_[k + 1];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return Polynomial(std::move(acc));
}

WeightedExpansion::WeightedExpansion(std::shared_ptr<const OrthoBasis> basis,
                                     std::vector<double> coeffs, WeightSpec w)
    : basis_(std::move(basis)), coeffs_(std::move(coeffs)), w_(std::move(w)) {
  if (!basis_) throw std::invalid_argument("WeightedExpansion: null basis");
  coeffs_.resize(basis_->degree() + 1, 0.0);
}

double WeightedExpansion::operator()(double x) const {
  std::vector<double> vals(basis_->degree() + 1);
  basis_->eval_weighted(x, w_.Q(x), vals);
  double s = 0.0;
  for (std::size_t k = 0; k < vals.size(); ++k) s += coeffs_[k] * vals[k];
  return s;
}

double WeightedExpansion::derivative_at_zero(int N) const {
  const auto d = basis_->derivatives_at_zero(N);
  double s = 0.0;
  for (std::size_t k = 0; k < d.size(); ++k) s += coeffs_[k] * d[k];
  return s;
}

}  // namespace sharp
