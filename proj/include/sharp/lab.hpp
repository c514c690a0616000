#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sharp/mrs.hpp"
#include "sharp/reference.hpp"
#include "sharp/solvers.hpp"

namespace sharp {

/// One n of a convergence experiment: both variants solved for (weight, p, N).
struct SweepRow {
  std::string weight;
  double p = 2.0;
  int N = 0;
  int n = 1;
  double a_n = 0.0;
  double b_n = 0.0;
  double M = 0.0;
  double M_star = 0.0;
  EValue E_ref;
  std::optional<double> gap;  // |M* - E| / E, only when E is exact
  bool certified = false;
  std::string status = "ok";

  bool ok() const { return status == "ok"; }
  bool operator==(const SweepRow& other) const;
};

std::vector<SweepRow> sweep(const WeightSpec& w, double p, int N, const std::vector<int>& n_list,
                            const SolveOptions& opt = {}, int threads = 1);

struct CheckResult {
  std::string name;
  bool passed = true;
  std::string detail;
};

struct Report {
  bool passed = true;
  std::vector<CheckResult> checks;
  /// "M<=M*", "M*<=M", "equal" or "mixed" as observed numerically.
  std::string observed_ordering;
};

/// Checks for rows of one (weight, p, N) family: ordering M <= M* (both
/// directions reported), boundedness of M, gap monotone when E is exact.
Report verify_invariants(const std::vector<SweepRow>& rows);

struct CoefficientDiagnostic {
  std::vector<int> n_list;
  /// values[k][i] = (1 - eps)^k * M*_{p,k,n_i}(W)
  std::vector<std::vector<double>> values;
  std::vector<double> sup_per_k;
  std::vector<bool> stable_per_k;
  bool passed = true;
};

CoefficientDiagnostic coefficient_growth_diagnostic(const WeightSpec& w, double p,
                                                    const std::vector<int>& n_list, int k_max,
                                                    double eps, const SolveOptions& opt = {});

struct Extrapolation {
  double estimate = 0.0;
  double spread = 0.0;
  double beta = 0.0;  // fitted decay exponent of |v(n) - estimate|; NaN when not fitted
};

/// Limit estimate for values sampled at increasing (dyadic) n: Aitken-type
/// elimination on the last three values, spread against the previous triple,
/// and a least-squares fit of the algebraic rate.
Extrapolation extrapolate_limit(const std::vector<double>& values, const std::vector<int>& n_list);

/// Dyadic-style list parsing: "25,50,100" or a range "a:b" (inclusive) or "a:b:step".
std::vector<int> parse_n_list(const std::string& text);
double parse_p(const std::string& text);
std::string format_p(double p);

}  // namespace sharp
