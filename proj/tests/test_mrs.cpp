#include <doctest.h>

#include <cmath>

#include "sharp/mrs.hpp"
#include "sharp/quadrature.hpp"

using namespace sharp;

TEST_CASE("Freud closed forms") {
  const auto w2 = WeightSpec::freud(2);
  CHECK(compute_a_n(w2, 4) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(compute_b_n(w2, 4, 2.0) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(compute_a_n(w2, 1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(compute_b_n(w2, 1, 1.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(compute_a_n(WeightSpec::freud(4), 1) == doctest::Approx(0.90360200360984483).epsilon(1e-14));

  // a_8 = 2 (pi/4)^{1/3}, b_8 = 12 / a_8
  const auto w3 = WeightSpec::freud(3);
  const double a8 = compute_a_n(w3, 8);
  CHECK(a8 == doctest::Approx(1.8452701486440284).epsilon(1e-14));
  CHECK(compute_b_n(w3, 8, a8) == doctest::Approx(6.503112841671468).epsilon(1e-14));
}

TEST_CASE("root finding matches closed forms") {
  for (double alpha : {1.5, 2.0, 3.0, 4.0}) {
    const auto w = WeightSpec::freud(alpha);
    for (int n : {1, 2, 3, 7, 25, 64, 100, 200}) {
      CAPTURE(alpha);
      CAPTURE(n);
      const double a = compute_a_n_rootfind(w, n);
      CHECK(std::abs(a - freud_a_n(alpha, n)) < 1e-8 * freud_a_n(alpha, n));
      const double b = compute_b_n_integral(w, n, a);
      CHECK(std::abs(b - freud_b_n(alpha, n)) < 1e-8 * freud_b_n(alpha, n));
    }
  }
}

TEST_CASE("a_n solves F(a) = n") {
  const WeightSpec ws[] = {WeightSpec::erdos(2, 1), WeightSpec::erdos(1.5, 2), WeightSpec::bounded(1),
                           WeightSpec::bounded(2.5)};
  for (const auto& w : ws) {
    for (int n : {1, 10, 100, 1000}) {
      CAPTURE(w.to_string());
      CAPTURE(n);
      const double a = compute_a_n(w, n);
      CHECK(a > 0.0);
      CHECK(a < w.c());
      CHECK(std::abs(mrs_integrand_a(w, a) - n) < 1e-10 * n);
    }
  }
}

TEST_CASE("mrs_table") {
  SUBCASE("Freud alpha=2") {
    const auto rows = mrs_table(WeightSpec::freud(2), {1, 4, 9});
    REQUIRE(rows.size() == 3);
    for (int i = 0; i < 3; ++i) {
      CHECK(rows[i].numbers.a_n == doctest::Approx(i + 1.0).epsilon(1e-15));
      CHECK(rows[i].numbers.b_n == doctest::Approx(2.0 * (i + 1)).epsilon(1e-15));
      CHECK(rows[i].ratio == doctest::Approx(2.0).epsilon(1e-14));
      CHECK(rows[i].numbers.method == MrsMethod::ClosedForm);
    }
  }
  SUBCASE("Erdos ratio decreases toward 1") {
    const auto rows = mrs_table(WeightSpec::erdos(2, 1), {10, 100, 1000});
    CHECK(rows[0].ratio > rows[1].ratio);
    CHECK(rows[1].ratio > rows[2].ratio);
    CHECK(rows[2].ratio > 1.0);
    CHECK(rows[0].numbers.method == MrsMethod::RootFind);
  }
  SUBCASE("unweighted convention") {
    const auto rows = mrs_table(WeightSpec::unweighted(), {5});
    CHECK(rows[0].numbers.a_n == 1.0);
    CHECK(rows[0].numbers.b_n == 5.0);
    CHECK(rows[0].numbers.method == MrsMethod::Convention);
  }
  SUBCASE("monotone in n, Freud ratio bound") {
    const WeightSpec ws[] = {WeightSpec::freud(1.5), WeightSpec::freud(3), WeightSpec::erdos(2, 1),
                             WeightSpec::bounded(1)};
    for (const auto& w : ws) {
      CAPTURE(w.to_string());
      const auto rows = mrs_table(w, {1, 2, 5, 10, 25, 50, 100, 200});
      for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(rows[i].a_increasing);
        CHECK(rows[i].b_increasing);
      }
      CHECK(rows.back().numbers.b_n > rows.front().numbers.b_n);
      for (const auto& r : rows) {
        if (w.kind() == WeightKind::Freud) CHECK(r.ratio >= 1.0);
        // b_n <= C n with a stable constant
        CHECK(r.numbers.b_n / r.numbers.n < 10.0);
      }
    }
  }
  SUBCASE("argument checks") {
    CHECK_THROWS(mrs_table(WeightSpec::freud(2), {}));
    CHECK_THROWS(mrs_table(WeightSpec::freud(2), {4, 2}));
    CHECK_THROWS(compute_a_n(WeightSpec::freud(2), 0));
  }
}

TEST_CASE("broken custom weight fails to bracket") {
  // F stays bounded on (-1, 1): Q' does not blow up at the endpoint
  const auto w = WeightSpec::custom(
      "flat", 1.0, [](double x) { return x * x; }, [](double x) { return 2 * x; }, [](double) { return 2.0; });
  CHECK_THROWS_AS(compute_a_n(w, 5), NumericalError);
}
