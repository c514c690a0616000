#include "sharp/reference.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace sharp {

BigInt chebyshev_derivative_at_zero(int n, int N) {
  if (n < 0 || N < 0) throw std::invalid_argument("chebyshev_derivative_at_zero: negative index");
  if (N > n || (n - N) % 2 != 0) return 0;
  // coefficient vectors of T_{k-1}, T_k under T_{k+1} = 2x T_k - T_{k-1}
  std::vector<BigInt> prev{1}, cur{0, 1};
  if (n == 0) {
    cur = prev;
  } else {
    for (int k = 1; k < n; ++k) {
      std::vector<BigInt> next(k + 2, 0);
      for (int j = 0; j <= k; ++j) next[j + 1] += 2 * cur[j];
      for (int j = 0; j < static_cast<int>(prev.size()); ++j) next[j] -= prev[j];
      prev = std::move(cur);
      cur = std::move(next);
    }
  }
  BigInt fact = 1;
  for (int k = 2; k <= N; ++k) fact *= k;
  return cur[N] * fact;
}

double markov_constant(int N, int n) {
  if (n < 1 || N < 0) throw std::invalid_argument("markov_constant: need n >= 1, N >= 0");
  if (N > n) throw std::invalid_argument("markov_constant: N must not exceed n");
  const int m = (n - N) % 2 == 1 ? n - 1 : n;
  const BigInt t = boost::multiprecision::abs(chebyshev_derivative_at_zero(m, N));
  return static_cast<double>(t) / std::pow(static_cast<double>(n), N);
}

EValue reference_E(double p, int N) {
  if (!(p > 0.0) || N < 0) throw std::invalid_argument("reference_E: need p > 0, N >= 0");
  EValue e;
  e.p = p;
  e.N = N;
  if (!std::isfinite(p)) {
    e.kind = EValue::Kind::Exact;
    e.lo = e.hi = 1.0;
  } else if (p == 2.0) {
    e.kind = EValue::Kind::Exact;
    e.lo = e.hi = 1.0 / std::sqrt(std::numbers::pi * (2 * N + 1));
  } else if (p == 1.0 && N == 0) {
    e.kind = EValue::Kind::Bounds;
    e.lo = 0.5409 / std::numbers::pi;
    e.hi = 0.5484 / std::numbers::pi;
  }
  return e;
}

}  // namespace sharp
