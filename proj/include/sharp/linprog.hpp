#pragma once

#include <Eigen/Dense>

namespace sharp {

struct BoxLpResult {
  Eigen::VectorXd x;
  double primal = 0.0;  // g^T x
  double dual = 0.0;    // sum(y + z), an upper bound for the optimum
  int iterations = 0;
  bool converged = false;
};

/// maximize g^T x subject to -1 <= (A x)_j <= 1, by a Mehrotra
/// predictor-corrector interior-point method. x = 0 is strictly feasible, so
/// the iteration never needs a phase one. The dual problem is
/// min 1^T (y + z) s.t. A^T (y - z) = g, y, z >= 0.
BoxLpResult maximize_in_box(const Eigen::MatrixXd& A, const Eigen::VectorXd& g,
                            double rel_tol = 1e-12, int max_iter = 200);

}  // namespace sharp
