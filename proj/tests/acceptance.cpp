// Acceptance checks, one PASS/FAIL line per criterion.
//
//   acceptance            run all criteria
//   acceptance 3 5        run the listed ones
//
// Exit status is 0 only if every criterion run passed.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "sharp/lab.hpp"
#include "sharp/mrs.hpp"
#include "sharp/reference.hpp"
#include "sharp/solvers.hpp"

using namespace sharp;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const std::vector<int> kDyadic{25, 50, 100, 200};

struct Outcome {
  bool passed = true;
  std::string detail;
};

void note(Outcome& o, bool ok, const std::string& what) {
  if (!ok) {
    o.passed = false;
    if (!o.detail.empty()) o.detail += "; ";
    o.detail += what;
  }
}

std::string strf(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

Outcome criterion1() {
  Outcome o;
  double worst = 0.0;
  for (double alpha : {1.5, 2.0, 3.0, 4.0}) {
    const auto w = WeightSpec::freud(alpha);
    for (int n = 1; n <= 200; ++n) {
      const double a = compute_a_n_rootfind(w, n);
      const double b = compute_b_n_integral(w, n, a);
      const double e = std::max(rel(a, freud_a_n(alpha, n)), rel(b, freud_b_n(alpha, n)));
      worst = std::max(worst, e);
      if (!(e < 1e-8)) note(o, false, strf("alpha=%g n=%g rel err %.3g", alpha, n, e));
    }
  }
  o.detail = strf("worst rel err %.3g", worst) + (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

Outcome criterion2() {
  Outcome o;
  double worst = 0.0;
  for (int n = 1; n <= 20; ++n) {
    for (int N = 0; N <= std::min(4, n); ++N) {
      const auto r = solve_pinf({WeightSpec::unweighted(), kInf, N, n, Variant::FullInterval});
      const double e = std::abs(r.value - markov_constant(N, n));
      worst = std::max(worst, e);
      note(o, e < 1e-6, strf("N=%g n=%g abs err %.3g", N, n, e));
    }
  }
  o.detail = strf("worst abs err %.3g", worst) + (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

// Relative gaps of M (or M*) to an exact E along a sweep.
std::vector<double> gaps(const std::vector<SweepRow>& rows, bool restricted) {
  std::vector<double> g;
  for (const auto& r : rows) g.push_back(rel(restricted ? r.M_star : r.M, r.E_ref.value()));
  return g;
}

std::string list(const std::vector<double>& v) {
  std::string s;
  for (double x : v) s += (s.empty() ? "" : ",") + strf("%.4g", x);
  return "[" + s + "]";
}

Outcome criterion3() {
  Outcome o;
  std::string summary;
  for (int N : {0, 1, 2}) {
    const auto rows = sweep(WeightSpec::unweighted(), 2.0, N, kDyadic);
    const auto g = gaps(rows, false);
    summary += strf(" N=%g gaps ", N) + list(g);
    note(o, g.back() < 0.03, strf("N=%g gap at n=200 is %.4g", N, g.back()));
    for (std::size_t i = 1; i < g.size(); ++i) {
      note(o, g[i] < g[i - 1],
           strf("N=%g gap not strictly decreasing from n=%g to n=%g", N, kDyadic[i - 1], kDyadic[i]));
    }
  }
  o.detail = summary.substr(1) + (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

Outcome criterion4() {
  Outcome o;
  std::string summary;
  const auto w = WeightSpec::freud(2);
  for (double p : {2.0, kInf}) {
    for (int N : {0, 1}) {
      const auto rows = sweep(w, p, N, kDyadic);
      const std::string tag = "(p=" + format_p(p) + strf(",N=%g)", N);
      for (bool restricted : {false, true}) {
        const auto g = gaps(rows, restricted);
        const std::string who = tag + (restricted ? " M*" : " M");
        summary += " " + who + " gaps " + list(g);
        note(o, g.back() < 0.10, who + strf(" gap at n=200 is %.4g", g.back()));
        for (std::size_t i = 1; i < g.size(); ++i) {
          note(o, g[i] <= g[i - 1] + 1e-12,
               who + strf(" gap increases from n=%g to n=%g", kDyadic[i - 1], kDyadic[i]));
        }
      }
      const auto& last = rows.back();
      note(o, rel(last.M, last.M_star) < 0.01, tag + strf(" M vs M* differ by %.3g at n=200", rel(last.M, last.M_star)));
      note(o, last.certified, tag + " not certified at n=200");
    }
  }
  o.detail = summary.substr(1) + (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

Outcome criterion5() {
  Outcome o;
  const auto r = solve({WeightSpec::unweighted(), 1.0, 0, 200, Variant::FullInterval});
  const double lo = 0.95 * 0.5409 / M_PI, hi = 1.05 * 0.5484 / M_PI;
  o.detail = strf("M_{1,0,200}(1) = %.12g, band [%.6g, %.6g]", r.value, lo, hi);
  note(o, r.value >= lo && r.value <= hi, "outside the band");
  note(o, r.certified, "not certified");
  return o;
}

Outcome criterion6() {
  Outcome o;
  const std::vector<int> ns{4, 8, 16, 32};
  const WeightSpec ws[] = {WeightSpec::freud(2), WeightSpec::freud(3), WeightSpec::erdos(2, 1),
                           WeightSpec::bounded(1)};
  int families = 0, directions_full = 0;
  for (const auto& w : ws) {
    for (double p : {1.0, 2.0, 4.0, kInf}) {
      for (int N : {0, 1}) {
        const auto rows = sweep(w, p, N, ns);
        const std::string tag = w.to_string() + " p=" + format_p(p) + strf(" N=%g", N);
        ++families;
        bool le = true, ge = true;
        double prev = 0.0;
        for (const auto& r : rows) {
          note(o, r.ok(), tag + " row failed: " + r.status);
          const double slack = 1e-8 * std::max(1.0, std::max(r.M, r.M_star));
          le = le && r.M <= r.M_star + slack;
          ge = ge && r.M_star <= r.M + slack;
          const double unnormalized = r.M * std::pow(r.b_n, N + (std::isfinite(p) ? 1.0 / p : 0.0));
          note(o, unnormalized >= prev * (1 - 1e-9), tag + strf(" unnormalized sup drops at n=%g", r.n));
          prev = unnormalized;
        }
        note(o, le || ge, tag + " no uniform ordering between M and M*");
        directions_full += le;
      }
    }
  }

  std::mt19937_64 rng(20240611);
  std::normal_distribution<double> gauss;
  int samples = 0, violations = 0;
  for (const auto& w : ws) {
    for (double p : {1.0, 2.0, 4.0, kInf}) {
      for (auto v : {Variant::FullInterval, Variant::Restricted}) {
        const auto r = solve({w, p, 1, 9, v});
        auto basis = std::make_shared<const OrthoBasis>(r.expansion.basis());
        for (int t = 0; t < 32 && samples < 1000; ++t, ++samples) {
          std::vector<double> c(r.expansion.coeffs().size());
          for (auto& x : c) x = gauss(rng);
          // half the samples are perturbations of the extremal
          if (t % 2) {
            for (std::size_t k = 0; k < c.size(); ++k) c[k] = r.expansion.coeffs()[k] + 0.05 * c[k];
          }
          if (candidate_ratio(r.query, WeightedExpansion(basis, c, w)) > r.value + 1e-8) ++violations;
        }
      }
    }
  }
  // top up to 1000 with the unweighted case
  while (samples < 1000) {
    const auto r = solve({WeightSpec::unweighted(), 2.0, 0, 12, Variant::FullInterval});
    auto basis = std::make_shared<const OrthoBasis>(r.expansion.basis());
    for (; samples < 1000; ++samples) {
      std::vector<double> c(r.expansion.coeffs().size());
      for (auto& x : c) x = gauss(rng);
      if (candidate_ratio(r.query, WeightedExpansion(basis, c, r.query.w)) > r.value + 1e-8) ++violations;
    }
  }
  note(o, violations == 0, strf("%g of %g random ratios exceed the solver value", violations, samples));

  int unstable = 0;
  for (double p : {2.0, kInf}) {
    const auto d = coefficient_growth_diagnostic(WeightSpec::freud(2), p, kDyadic, 3, 0.1);
    for (int k = 0; k <= 3; ++k) {
      if (!d.stable_per_k[k]) {
        ++unstable;
        note(o, false, "diagnostic unstable for p=" + format_p(p) + strf(" k=%g", k));
      }
    }
  }
  const auto d1 = coefficient_growth_diagnostic(WeightSpec::erdos(2, 1), 2.0, kDyadic, 3, 0.1);
  for (int k = 0; k <= 3; ++k) note(o, d1.stable_per_k[k], strf("diagnostic unstable for erdos p=2 k=%g", k));

  o.detail = strf("%g families, M<=M* in %g; %g random ratios", families, directions_full, samples) +
             (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

Outcome criterion7() {
  Outcome o;
  std::mt19937_64 rng(7);
  auto pick_weight = [&]() {
    switch (rng() % 5) {
      case 0: return WeightSpec::freud(1.5 + 0.5 * (rng() % 6));
      case 1: return WeightSpec::erdos(1.5 + 0.5 * (rng() % 3), 1 + rng() % 2);
      case 2: return WeightSpec::bounded(0.5 + (rng() % 4));
      case 3: return WeightSpec::freud(2);
      default: return WeightSpec::unweighted();
    }
  };
  double worst_a = 0.0;
  for (int i = 0; i < 20; ++i) {
    const int n = 1 + static_cast<int>(rng() % 30);
    const int N = static_cast<int>(rng() % (std::min(n, 4) + 1));
    const Variant v = rng() % 2 ? Variant::Restricted : Variant::FullInterval;
    const SharpConstantQuery q{pick_weight(), 2.0, N, n, v};
    const double e = rel(solve_general_p(q).value, solve_p2(q).value);
    worst_a = std::max(worst_a, e);
    note(o, e < 1e-6, q.w.to_string() + strf(" N=%g n=%g general p vs p2 %.3g", N, n, e));
  }

  double worst_b = 0.0;
  const WeightSpec ws[] = {WeightSpec::unweighted(), WeightSpec::freud(1.5), WeightSpec::freud(2),
                           WeightSpec::freud(4), WeightSpec::erdos(2, 1), WeightSpec::bounded(1)};
  for (const auto& w : ws) {
    for (int n : {1, 2, 5, 10, 17, 25, 30}) {
      for (int N : {0, 1, 3}) {
        if (N > n) continue;
        for (auto v : {Variant::FullInterval, Variant::Restricted}) {
          const SharpConstantQuery q{w, 2.0, N, n, v};
          const double e = rel(solve_p2(q).value, p2_gram_value(q));
          worst_b = std::max(worst_b, std::isnan(e) ? kInf : e);
          note(o, e < 1e-8, w.to_string() + strf(" N=%g n=%g recurrence vs Gram %.3g", N, n, e));
        }
      }
    }
  }
  o.detail = strf("worst general-p vs p2 %.3g; worst recurrence vs Gram %.3g", worst_a, worst_b) +
             (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

struct Criterion {
  int id;
  const char* title;
  double budget_s;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const Criterion all[] = {
      {1, "MRS closed forms vs root finding", 30, criterion1},
      {2, "sup-norm solver vs Markov formula", 120, criterion2},
      {3, "unweighted L2 constants approach E_{2,N}", 60, criterion3},
      {4, "Freud alpha=2 trend toward E_{p,N}", 600, criterion4},
      {5, "unweighted L1 constant inside the E_{1,0} band", 120, criterion5},
      {6, "ordering and bounds suite", 300, criterion6},
      {7, "cross-solver agreement", 120, criterion7},
  };
  std::vector<int> chosen;
  for (int i = 1; i < argc; ++i) chosen.push_back(std::atoi(argv[i]));

  bool ok = true;
  for (const auto& c : all) {
    if (!chosen.empty() && std::find(chosen.begin(), chosen.end(), c.id) == chosen.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.passed = false;
      out.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.budget_s) note(out, false, strf("runtime %.1f s over budget %.0f s", secs, c.budget_s));
    std::printf("%s criterion %d: %s (%.1f s) -- %s\n", out.passed ? "PASS" : "FAIL", c.id, c.title, secs,
                out.detail.c_str());
    std::fflush(stdout);
    ok = ok && out.passed;
  }
  return ok ? 0 : 1;
}
