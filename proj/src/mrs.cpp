#include "sharp/mrs.hpp"

#include <cmath>
#include <stdexcept>

#include <boost/math/tools/roots.hpp>

#include "sharp/quadrature.hpp"

namespace sharp {

double freud_a_n(double alpha, int n) {
  const double g = std::tgamma(0.5 * alpha);
  const double base = std::pow(2.0, alpha - 2.0) * g * g / std::tgamma(alpha);
  return std::pow(base * n, 1.0 / alpha);
}

double freud_b_n(double alpha, int n) {
  return alpha / (alpha - 1.0) * n / freud_a_n(alpha, n);
}

double compute_a_n_rootfind(const WeightSpec& w, int n, double tol) {
  if (n < 1) throw std::invalid_argument("compute_a_n: n must be >= 1");
  if (w.is_unweighted()) return 1.0;
  const double target = n;
  const double c = w.c();
  auto F = [&](double a) { return mrs_integrand_a(w, a) - target; };

  double lo = std::min(1.0, 0.5 * c);
  double hi = lo;
  double f_lo = F(lo);
  double f_hi = f_lo;
  int guard = 0;
  if (f_lo < 0.0) {
    while (f_hi < 0.0) {
      lo = hi;
      f_lo = f_hi;
      hi = w.is_bounded() ? std::min(2.0 * hi, 0.5 * (hi + c)) : 2.0 * hi;
      if (++guard > 2000 || hi >= c) throw NumericalError("compute_a_n: bracketing failed");
      f_hi = F(hi);
    }
  } else {
    while (f_lo > 0.0) {
      hi = lo;
      f_hi = f_lo;
      lo *= 0.5;
      if (++guard > 2000) throw NumericalError("compute_a_n: bracketing failed");
      f_lo = F(lo);
    }
  }
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;

  boost::uintmax_t max_iter = 200;
  const auto [a, b] = boost::math::tools::toms748_solve(
      F, lo, hi, f_lo, f_hi, boost::math::tools::eps_tolerance<double>(50), max_iter);
  const double root = 0.5 * (a + b);
  if (!(std::abs(F(root)) < tol * target)) {
    throw NumericalError("compute_a_n: residual above tolerance");
  }
  return root;
}

double compute_a_n(const WeightSpec& w, int n, double tol) {
  if (n < 1) throw std::invalid_argument("compute_a_n: n must be >= 1");
  if (w.is_unweighted()) return 1.0;
  if (w.kind() == WeightKind::Freud) return freud_a_n(w.alpha(), n);
  return compute_a_n_rootfind(w, n, tol);
}

double compute_b_n_integral(const WeightSpec& w, int n, double a_n) {
  if (w.is_unweighted()) return n;
  return mrs_integral_b(w, a_n) + n / a_n;
}

double compute_b_n(const WeightSpec& w, int n, double a_n, double /*tol*/) {
  if (n < 1) throw std::invalid_argument("compute_b_n: n must be >= 1");
  if (w.is_unweighted()) return n;
  if (w.kind() == WeightKind::Freud) return w.alpha() / (w.alpha() - 1.0) * n / a_n;
  return compute_b_n_integral(w, n, a_n);
}

MRSNumbers mrs_numbers(const WeightSpec& w, int n) {
  MRSNumbers m;
  m.n = n;
  m.a_n = compute_a_n(w, n);
  m.b_n = compute_b_n(w, n, m.a_n);
  m.method = w.is_unweighted()                ? MrsMethod::Convention
             : w.kind() == WeightKind::Freud ? MrsMethod::ClosedForm
                                              : MrsMethod::RootFind;
  return m;
}

std::vector<MrsRow> mrs_table(const WeightSpec& w, const std::vector<int>& n_list) {
  if (n_list.empty()) throw std::invalid_argument("mrs_table: empty n list");
  for (std::size_t i = 1; i < n_list.size(); ++i) {
    if (n_list[i] <= n_list[i - 1]) throw std::invalid_argument("mrs_table: n list must increase");
  }
  std::vector<MrsRow> rows;
  rows.reserve(n_list.size());
  for (int n : n_list) {
    MrsRow row;
    row.numbers = mrs_numbers(w, n);
    row.ratio = row.numbers.b_n * row.numbers.a_n / n;
    if (!rows.empty()) {
      const MRSNumbers& prev = rows.back().numbers;
      // the unweighted convention fixes a_n = 1
      row.a_increasing = w.is_unweighted() ? row.numbers.a_n == prev.a_n
                                           : row.numbers.a_n > prev.a_n;
      row.b_increasing = row.numbers.b_n > prev.b_n;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace sharp
