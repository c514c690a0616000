#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace sharp {

using BigInt = boost::multiprecision::cpp_int;

/// T_n^{(N)}(0), exact.
BigInt chebyshev_derivative_at_zero(int n, int N);

/// V. A. Markov's sharp constant M_{inf,N,n}(1) on (-1, 1):
/// n^{-N} |T_{n-1}^{(N)}(0)| when n - N is odd, n^{-N} |T_n^{(N)}(0)| when even.
double markov_constant(int N, int n);

/// Known value, band, or absence of a value for the entire-function constant E_{p,N}.
struct EValue {
  enum class Kind { Exact, Bounds, Unknown };
  double p = 0.0;
  int N = 0;
  Kind kind = Kind::Unknown;
  double lo = 0.0;  // equals hi for Exact
  double hi = 0.0;

  bool exact() const { return kind == Kind::Exact; }
  double value() const { return lo; }
};

EValue reference_E(double p, int N);

}  // namespace sharp
