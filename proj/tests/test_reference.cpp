#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "sharp/reference.hpp"

using namespace sharp;

constexpr double kInf = std::numeric_limits<double>::infinity();

TEST_CASE("Chebyshev derivatives at zero") {
  CHECK(chebyshev_derivative_at_zero(3, 1) == -3);
  CHECK(chebyshev_derivative_at_zero(4, 0) == 1);
  CHECK(chebyshev_derivative_at_zero(5, 3) == -120);
  CHECK(chebyshev_derivative_at_zero(5, 2) == 0);
  CHECK(chebyshev_derivative_at_zero(2, 3) == 0);
  for (int n = 1; n <= 60; n += 2) CHECK(abs(chebyshev_derivative_at_zero(n, 1)) == n);
  for (int n = 0; n <= 60; n += 2) CHECK(abs(chebyshev_derivative_at_zero(n, 0)) == 1);
  // T_n''(0) = -n^2 T_n(0) from the differential equation
  for (int n = 2; n <= 40; n += 2) CHECK(chebyshev_derivative_at_zero(n, 2) == -n * n * chebyshev_derivative_at_zero(n, 0));
  // exact beyond double range
  CHECK(chebyshev_derivative_at_zero(101, 101) > BigInt(1) << 200);
  CHECK_THROWS(chebyshev_derivative_at_zero(-1, 0));
}

TEST_CASE("Markov constants") {
  CHECK(markov_constant(0, 6) == 1.0);
  CHECK(markov_constant(1, 5) == 1.0);
  CHECK(markov_constant(2, 3) == doctest::Approx(4.0 / 9.0).epsilon(1e-15));
  CHECK(markov_constant(1, 4) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(markov_constant(3, 10) == doctest::Approx(0.72).epsilon(1e-15));
  CHECK_THROWS(markov_constant(3, 2));
}

TEST_CASE("reference E values") {
  const auto inf = reference_E(kInf, 3);
  CHECK(inf.kind == EValue::Kind::Exact);
  CHECK(inf.value() == 1.0);

  const auto two = reference_E(2.0, 1);
  CHECK(two.exact());
  CHECK(two.value() == doctest::Approx(1.0 / std::sqrt(3 * std::numbers::pi)).epsilon(1e-15));
  CHECK(two.value() == doctest::Approx(0.3257350).epsilon(1e-7));
  CHECK(two.lo == two.hi);

  const auto one = reference_E(1.0, 0);
  CHECK(one.kind == EValue::Kind::Bounds);
  CHECK(one.lo == doctest::Approx(0.5409 / std::numbers::pi).epsilon(1e-15));
  CHECK(one.hi == doctest::Approx(0.5484 / std::numbers::pi).epsilon(1e-15));

  CHECK(reference_E(1.0, 1).kind == EValue::Kind::Unknown);
  CHECK(reference_E(0.5, 0).kind == EValue::Kind::Unknown);
  CHECK(reference_E(3.0, 2).kind == EValue::Kind::Unknown);
  CHECK_THROWS(reference_E(0.0, 0));
}
