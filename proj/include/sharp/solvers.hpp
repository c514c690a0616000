#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "sharp/ortho_basis.hpp"
#include "sharp/polynomial.hpp"
#include "sharp/quadrature.hpp"
#include "sharp/weights.hpp"

namespace sharp {

enum class Variant {
  FullInterval,  // norm over I: M_{p,N,n}(W)
  Restricted,    // norm over [-a_n, a_n]: M*_{p,N,n}(W)
};

struct SharpConstantQuery {
  WeightSpec w = WeightSpec::unweighted();
  double p = 2.0;  // in (0, inf]
  int N = 0;
  int n = 1;
  Variant variant = Variant::FullInterval;
};

struct Certificate {
  std::string method;
  /// p = 2: relative difference to the multiprecision monomial-Gram route (NaN if skipped).
  double gram_residual = 0.0;
  /// p = inf: constraints within 1e-7 of the sup on the final grid.
  int active_constraints = 0;
  /// p = inf: relative gap between the discretized LP bound and the achieved ratio.
  /// p in (1, inf): relative projected gradient at the optimum.
  double duality_gap = 0.0;
  /// p <= 1: relative objective change over the last smoothing stages.
  double objective_drift = 0.0;
  /// Relative change of the value when the truncation window is enlarged (NaN if not checked).
  double window_change = 0.0;
  int iterations = 0;
  int refinement_rounds = 0;
};

struct SharpConstantResult {
  SharpConstantQuery query;
  double value = 0.0;         // b_n^{-N-1/p} |P^{(N)}(0)| / ||P||
  double unnormalized = 0.0;  // |P^{(N)}(0)| / ||P||
  double a_n = 0.0;
  double b_n = 0.0;
  Interval domain{0.0, 0.0};
  WeightedExpansion expansion;  // extremal P, normalized with P^{(N)}(0) > 0
  Polynomial extremal;          // same polynomial in the monomial basis
  Certificate certificate;
  bool certified = false;
};

struct SolveOptions {
  double rule_tol = 1e-12;
  /// Re-solve full-interval problems on an enlarged window and record the change.
  bool window_check = false;
  /// Largest n for the multiprecision Gram cross-check of the p = 2 solver.
  int gram_check_max_n = 64;
  int multistarts = 8;
  std::uint64_t seed = 20240611;
};

/// (-a_n, a_n) for Restricted, (-c, c) for FullInterval.
Interval restricted_domain(const SharpConstantQuery& q);

SharpConstantResult solve_p2(const SharpConstantQuery& q, const SolveOptions& opt = {});
SharpConstantResult solve_pinf(const SharpConstantQuery& q, const SolveOptions& opt = {});
SharpConstantResult solve_general_p(const SharpConstantQuery& q, const SolveOptions& opt = {});

/// Dispatches on p: 2 -> solve_p2, inf -> solve_pinf, otherwise solve_general_p.
SharpConstantResult solve(const SharpConstantQuery& q, const SolveOptions& opt = {});

/// b_n^{-N-1/p} |P^{(N)}(0)| / ||P W|| for an arbitrary candidate, with the norm
/// computed by an independent quadrature of the given density.
double candidate_ratio(const SharpConstantQuery& q, const WeightedExpansion& P,
                       int quadrature_nodes_per_degree = 16);

/// The multiprecision monomial-Gram route for p = 2: b_n^{-N-1/2} sqrt(e^T G^{-1} e)
/// on the same discrete measure the recurrence route uses. NaN on breakdown.
double p2_gram_value(const SharpConstantQuery& q, const SolveOptions& opt = {});

}  // namespace sharp
