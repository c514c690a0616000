#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "sharp/weights.hpp"

using namespace sharp;

constexpr double kInf = std::numeric_limits<double>::infinity();

TEST_CASE("eval_W known values") {
  CHECK(eval_W(WeightSpec::freud(2), 0.0) == 1.0);
  CHECK(eval_W(WeightSpec::freud(2), 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  // exp(-(e - 1))
  CHECK(eval_W(WeightSpec::erdos(2, 1), 1.0) == doctest::Approx(0.17937407873401718).epsilon(1e-14));
  CHECK(eval_W(WeightSpec::unweighted(), 0.3) == 1.0);
  CHECK(eval_W(WeightSpec::unweighted(), 1.0) == 1.0);
}

TEST_CASE("eval_T known values") {
  CHECK(eval_T(WeightSpec::freud(2), 0.7) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(eval_T(WeightSpec::erdos(2, 1), 1.0) == doctest::Approx(3.1639534137386528).epsilon(1e-13));
  CHECK(eval_T(WeightSpec::bounded(1), 0.5) == doctest::Approx(8.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(eval_W(WeightSpec::bounded(1), 1.0), DomainError);
  CHECK_THROWS_AS(eval_W(WeightSpec::bounded(2), -2.5), DomainError);
  CHECK_THROWS_AS(eval_W(WeightSpec::unweighted(), 1.5), DomainError);
  CHECK_THROWS_AS(eval_T(WeightSpec::freud(2), 0.0), DomainError);
  CHECK_THROWS_AS(eval_T(WeightSpec::unweighted(), 0.5), DomainError);
  CHECK_THROWS_AS(eval_T(WeightSpec::bounded(1), 1.0), DomainError);
}

TEST_CASE("constructor argument checks") {
  CHECK_THROWS(WeightSpec::freud(1.0));
  CHECK_THROWS(WeightSpec::erdos(2, 0));
  CHECK_THROWS(WeightSpec::bounded(0));
  CHECK_THROWS(WeightSpec::bounded(kInf));
}

TEST_CASE("parse and to_string") {
  const auto f = WeightSpec::parse("freud:3");
  CHECK(f.kind() == WeightKind::Freud);
  CHECK(f.alpha() == 3.0);
  CHECK(std::isinf(f.c()));

  const auto e = WeightSpec::parse("ERDOS:2.5:2");
  CHECK(e.kind() == WeightKind::ErdosExp);
  CHECK(e.alpha() == 2.5);
  CHECK(e.ell() == 2);

  const auto b = WeightSpec::parse("bounded:1.5");
  CHECK(b.kind() == WeightKind::BoundedRational);
  CHECK(b.c() == 1.5);
  CHECK(b.is_bounded());

  CHECK(WeightSpec::parse("unweighted").is_unweighted());
  for (const char* s : {"freud:1.5", "erdos:2:1", "bounded:1", "unweighted"}) {
    CHECK(WeightSpec::parse(WeightSpec::parse(s).to_string()).to_string() == WeightSpec::parse(s).to_string());
  }
  CHECK_THROWS(WeightSpec::parse("freud"));
  CHECK_THROWS(WeightSpec::parse("freud:abc"));
  CHECK_THROWS(WeightSpec::parse("erdos:2:1.5"));
  CHECK_THROWS(WeightSpec::parse("gauss:2"));
}

TEST_CASE("evenness, Q(0) = 0, Q positive and increasing") {
  const WeightSpec ws[] = {WeightSpec::freud(1.5), WeightSpec::freud(4), WeightSpec::erdos(2, 1),
                           WeightSpec::erdos(1.5, 2), WeightSpec::bounded(1), WeightSpec::bounded(3)};
  for (const auto& w : ws) {
    CAPTURE(w.to_string());
    CHECK(w.Q(0.0) == 0.0);
    const double top = w.is_bounded() ? 0.999 * w.c() : 3.0;
    double prev = 0.0;
    for (int i = 1; i <= 200; ++i) {
      const double x = top * i / 200.0;
      CHECK(eval_W(w, x) == eval_W(w, -x));
      CHECK(w.Q(x) > prev);
      prev = w.Q(x);
    }
  }
}

TEST_CASE("derivatives agree with central differences") {
  const WeightSpec ws[] = {WeightSpec::freud(1.5), WeightSpec::freud(3), WeightSpec::erdos(2, 1),
                           WeightSpec::erdos(2, 2), WeightSpec::bounded(1)};
  for (const auto& w : ws) {
    CAPTURE(w.to_string());
    const double top = w.is_bounded() ? 0.9 * w.c() : 2.0;
    for (int i = 1; i <= 20; ++i) {
      const double x = top * i / 20.0;
      // step on the local scale of Q'; Erdos weights with ell = 2 grow very fast
      const double h = 1e-4 * std::min({x, w.Qp(x) / w.Qpp(x), w.c() - x});
      CHECK((w.Q(x + h) - w.Q(x - h)) / (2 * h) == doctest::Approx(w.Qp(x)).epsilon(1e-6));
      CHECK((w.Qp(x + h) - w.Qp(x - h)) / (2 * h) == doctest::Approx(w.Qpp(x)).epsilon(1e-6));
    }
  }
}

TEST_CASE("Freud T equals alpha everywhere") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(1e-6, 50.0);
  for (double alpha : {1.5, 2.0, 3.0, 4.0, 7.25}) {
    const auto w = WeightSpec::freud(alpha);
    for (int i = 0; i < 100; ++i) CHECK(std::abs(eval_T(w, u(rng)) - alpha) < 1e-12);
  }
}

TEST_CASE("validate_class") {
  SUBCASE("Freud alpha=2 passes with Lambda = 2") {
    const auto r = validate_class(WeightSpec::freud(2));
    CHECK(r.passed);
    CHECK(r.lambda_est == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(require_class(WeightSpec::freud(2)).lambda_est().value() == doctest::Approx(2.0));
  }
  SUBCASE("Q = |x| fails only at Lambda > 1") {
    const auto w = WeightSpec::custom(
        "abs", kInf, [](double x) { return std::abs(x); },
        [](double x) { return x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0); }, [](double) { return 0.0; });
    const auto r = validate_class(w);
    CHECK_FALSE(r.passed);
    CHECK(r.lambda_est == doctest::Approx(1.0));
    bool lambda_failed = false;
    for (auto p : r.failures) lambda_failed = lambda_failed || p == ClassProperty::LambdaAboveOne;
    CHECK(lambda_failed);
    CHECK_THROWS_AS(require_class(w), ClassViolation);
  }
  SUBCASE("bounded c=1 passes with Lambda = 2") {
    const auto r = validate_class(WeightSpec::bounded(1));
    CHECK(r.passed);
    CHECK(r.lambda_est == doctest::Approx(2.0).epsilon(1e-6));
  }
  SUBCASE("Erdos weights pass") {
    CHECK(validate_class(WeightSpec::erdos(2, 1)).passed);
    CHECK(validate_class(WeightSpec::erdos(1.5, 2), 500, 2.0).passed);
  }
  SUBCASE("unweighted is exempt") {
    const auto r = validate_class(WeightSpec::unweighted());
    CHECK(r.exempt);
    CHECK(r.passed);
  }
  SUBCASE("odd custom weight fails evenness") {
    const auto w = WeightSpec::custom(
        "odd", kInf, [](double x) { return x * x + 0.1 * x; }, [](double x) { return 2 * x + 0.1; },
        [](double) { return 2.0; });
    const auto r = validate_class(w);
    CHECK_FALSE(r.passed);
    CHECK(r.failures.front() == ClassProperty::EvenAndZero);
  }
  SUBCASE("bad arguments") {
    CHECK_THROWS(validate_class(WeightSpec::freud(2), 50));
    CHECK_THROWS_AS(validate_class(WeightSpec::bounded(1), 1000, 1.5), DomainError);
  }
}
