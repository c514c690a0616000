#pragma once

#include <vector>

#include "sharp/weights.hpp"

namespace sharp {

enum class MrsMethod { ClosedForm, RootFind, Convention };

struct MRSNumbers {
  int n = 0;
  double a_n = 0.0;
  double b_n = 0.0;
  MrsMethod method = MrsMethod::RootFind;
};

/// Closed forms for W(x) = exp(-|x|^alpha).
double freud_a_n(double alpha, int n);
double freud_b_n(double alpha, int n);

/// n-th Mhaskar-Rakhmanov-Saff number. Freud weights use the closed form;
/// other kinds solve F(a) = n by bracketing and TOMS 748. Unweighted returns 1.
double compute_a_n(const WeightSpec& w, int n, double tol = 1e-10);
/// Root-finding path regardless of kind (used to cross-check closed forms).
double compute_a_n_rootfind(const WeightSpec& w, int n, double tol = 1e-10);

/// b_n = (2/pi) int_0^1 Q'(a_n x) sqrt(1-x^2)/x dx + n/a_n.
/// Freud weights use the closed form; unweighted returns n.
double compute_b_n(const WeightSpec& w, int n, double a_n, double tol = 1e-10);
double compute_b_n_integral(const WeightSpec& w, int n, double a_n);

MRSNumbers mrs_numbers(const WeightSpec& w, int n);

struct MrsRow {
  MRSNumbers numbers;
  double ratio = 0.0;  // b_n a_n / n
  bool a_increasing = true;
  bool b_increasing = true;
};

/// One row per n with the ratio diagnostic and monotonicity flags relative
/// to the previous row.
std::vector<MrsRow> mrs_table(const WeightSpec& w, const std::vector<int>& n_list);

}  // namespace sharp
