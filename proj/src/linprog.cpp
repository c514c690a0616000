#include "sharp/linprog.hpp"

#include <algorithm>
#include <cmath>

namespace sharp {

namespace {

// Largest step in (0, 1] keeping v + step * dv > 0, damped by 0.995.
double max_step(const Eigen::VectorXd& v, const Eigen::VectorXd& dv) {
  double step = 1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (dv[i] < 0.0) step = std::min(step, -v[i] / dv[i]);
  }
  return std::min(1.0, 0.995 * step);
}

}  // namespace

BoxLpResult maximize_in_box(const Eigen::MatrixXd& A, const Eigen::VectorXd& g_in,
                            double rel_tol, int max_iter) {
  const Eigen::Index K = A.rows();
  const Eigen::Index m = A.cols();
  BoxLpResult out;
  out.x = Eigen::VectorXd::Zero(m);
  const double g_norm = g_in.norm();
  if (g_norm == 0.0) {
    out.converged = true;
    return out;
  }
  const Eigen::VectorXd g = g_in / g_norm;

  Eigen::VectorXd x = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd s = Eigen::VectorXd::Ones(K), t = Eigen::VectorXd::Ones(K);
  Eigen::VectorXd y = Eigen::VectorXd::Ones(K), z = Eigen::VectorXd::Ones(K);

  auto solve_direction = [&](const Eigen::VectorXd& rd, const Eigen::VectorXd& rs,
                             const Eigen::VectorXd& rt, const Eigen::VectorXd& rho_s,
                             const Eigen::VectorXd& rho_t, const Eigen::LDLT<Eigen::MatrixXd>& ldlt,
                             Eigen::VectorXd& dx, Eigen::VectorXd& ds, Eigen::VectorXd& dt,
                             Eigen::VectorXd& dy, Eigen::VectorXd& dz) {
    const Eigen::VectorXd ys = y.cwiseQuotient(s), zt = z.cwiseQuotient(t);
    const Eigen::VectorXd inner = rho_s.cwiseQuotient(s) - rho_t.cwiseQuotient(t) +
                                  ys.cwiseProduct(rs) - zt.cwiseProduct(rt);
    dx = ldlt.solve(-rd - A.transpose() * inner);
    const Eigen::VectorXd Adx = A * dx;
    ds = -rs - Adx;
    dt = -rt + Adx;
    dy = rho_s.cwiseQuotient(s) - ys.cwiseProduct(ds);
    dz = rho_t.cwiseQuotient(t) - zt.cwiseProduct(dt);
  };

  for (int it = 0; it < max_iter; ++it) {
    out.iterations = it + 1;
    const Eigen::VectorXd Ax = A * x;
    const Eigen::VectorXd rd = A.transpose() * (y - z) - g;
    const Eigen::VectorXd rs = Ax + s - Eigen::VectorXd::Ones(K);
    const Eigen::VectorXd rt = -Ax + t - Eigen::VectorXd::Ones(K);
    const double primal = g.dot(x);
    const double dual = (y + z).sum();
    const double mu = (y.dot(s) + z.dot(t)) / (2.0 * K);

    const double gap = std::abs(dual - primal) / std::max(1.0, std::abs(primal));
    const double infeas = std::max({rd.lpNorm<Eigen::Infinity>(), rs.lpNorm<Eigen::Infinity>(),
                                    rt.lpNorm<Eigen::Infinity>()});
    // the gap can stall near the residual level once mu is negligible
    const bool stalled = mu < 1e-16 * std::max(1.0, std::abs(primal)) && gap < 1e-9;
    if (infeas < 1e-9 && (gap < rel_tol || stalled)) {
      out.converged = true;
      break;
    }

    const Eigen::VectorXd D = y.cwiseQuotient(s) + z.cwiseQuotient(t);
    Eigen::MatrixXd H = A.transpose() * D.asDiagonal() * A;
    H.diagonal().array() += 1e-14 * H.diagonal().maxCoeff();
    const Eigen::LDLT<Eigen::MatrixXd> ldlt(H);

    Eigen::VectorXd dx, ds, dt, dy, dz;
    // predictor
    solve_direction(rd, rs, rt, -y.cwiseProduct(s), -z.cwiseProduct(t), ldlt, dx, ds, dt, dy, dz);
    const double ap = std::min(max_step(s, ds), max_step(t, dt));
    const double ad = std::min(max_step(y, dy), max_step(z, dz));
    const double mu_aff = ((y + ad * dy).dot(s + ap * ds) + (z + ad * dz).dot(t + ap * dt)) /
                          (2.0 * K);
    const double sigma = std::pow(std::clamp(mu_aff / mu, 0.0, 1.0), 3);

    // corrector
    const Eigen::VectorXd rho_s = Eigen::VectorXd::Constant(K, sigma * mu) -
                                  y.cwiseProduct(s) - dy.cwiseProduct(ds);
    const Eigen::VectorXd rho_t = Eigen::VectorXd::Constant(K, sigma * mu) -
                                  z.cwiseProduct(t) - dz.cwiseProduct(dt);
    solve_direction(rd, rs, rt, rho_s, rho_t, ldlt, dx, ds, dt, dy, dz);
    const double step_p = std::min(max_step(s, ds), max_step(t, dt));
    const double step_d = std::min(max_step(y, dy), max_step(z, dz));
    x += step_p * dx;
    s += step_p * ds;
    t += step_p * dt;
    y += step_d * dy;
    z += step_d * dz;
  }
  out.x = x;
  out.primal = g_in.dot(x);
  out.dual = (y + z).sum() * g_norm;
  return out;
}

}  // namespace sharp
