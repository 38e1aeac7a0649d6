#include "eslqr/riccati.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Eigenvalues>
#include <lapacke.h>

namespace eslqr {

namespace {

constexpr double kResidualTol = 1e-8;

lapack_logical select_stable(const double* wr, const double* /*wi*/) {
  return *wr < 0.0 ? 1 : 0;
}

double care_residual(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                     const Eigen::MatrixXd& q, const Eigen::MatrixXd& r,
                     const Eigen::MatrixXd& p) {
  const Eigen::MatrixXd res = a.transpose() * p + p * a -
                              p * b * r.llt().solve(b.transpose() * p) + q;
  const double qn = q.norm();
  return qn > 0.0 ? res.norm() / qn : res.norm();
}

void check_symmetric(const Eigen::MatrixXd& m, const char* name, double tol) {
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > tol) {
    throw std::invalid_argument(std::string(name) + " must be symmetric");
  }
}

}  // namespace

void LqrWeights::validate() const {
  check_symmetric(q, "lqr: Q", 1e-12);
  check_symmetric(r, "lqr: R", 1e-12);
  if (Eigen::SelfAdjointEigenSolver<Mat9>(q).eigenvalues().minCoeff() <= 0.0) {
    throw std::invalid_argument("lqr: Q must be positive-definite");
  }
  if (Eigen::SelfAdjointEigenSolver<Mat4>(r).eigenvalues().minCoeff() <= 0.0) {
    throw std::invalid_argument("lqr: R must be positive-definite");
  }
}

double spectral_abscissa(const Eigen::MatrixXd& m) {
  Eigen::EigenSolver<Eigen::MatrixXd> eig(m, /*computeEigenvectors=*/false);
  return eig.eigenvalues().real().maxCoeff();
}

Eigen::MatrixXd regularize_a(const Eigen::MatrixXd& a, double epsilon) {
  if (epsilon < 0.0) {
    throw std::invalid_argument("regularize_a: epsilon must be non-negative");
  }
  return a - epsilon * Eigen::MatrixXd::Identity(a.rows(), a.cols());
}

Eigen::MatrixXd solve_lyapunov(const Eigen::MatrixXd& a, const Eigen::MatrixXd& q) {
  const Eigen::Index n = a.rows();
  const Eigen::MatrixXd at = a.transpose();
  // vec(A'X + XA) = (I (x) A' + A' (x) I) vec(X), column-major vec.
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n * n, n * n);
  for (Eigen::Index j = 0; j < n; ++j) {
    m.block(j * n, j * n, n, n) += at;
    for (Eigen::Index i = 0; i < n; ++i) {
      m.block(j * n, i * n, n, n) += at(j, i) * Eigen::MatrixXd::Identity(n, n);
    }
  }
  const Eigen::VectorXd rhs = -Eigen::Map<const Eigen::VectorXd>(q.data(), n * n);
  const Eigen::VectorXd x = m.partialPivLu().solve(rhs);
  Eigen::MatrixXd sol = Eigen::Map<const Eigen::MatrixXd>(x.data(), n, n);
  return 0.5 * (sol + sol.transpose());
}

CareSolution solve_care(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                        const Eigen::MatrixXd& q, const Eigen::MatrixXd& r) {
  const lapack_int n = static_cast<lapack_int>(a.rows());
  if (a.cols() != n || b.rows() != n || q.rows() != n || q.cols() != n ||
      r.rows() != b.cols() || r.cols() != b.cols()) {
    throw std::invalid_argument("solve_care: inconsistent dimensions");
  }
  check_symmetric(q, "solve_care: Q", 1e-9);
  check_symmetric(r, "solve_care: R", 1e-9);
  Eigen::LLT<Eigen::MatrixXd> r_chol(r);
  if (r_chol.info() != Eigen::Success) {
    throw std::invalid_argument("solve_care: R must be positive-definite");
  }

  Eigen::MatrixXd h(2 * n, 2 * n);
  h.topLeftCorner(n, n) = a;
  h.topRightCorner(n, n) = -b * r_chol.solve(b.transpose());
  h.bottomLeftCorner(n, n) = -q;
  h.bottomRightCorner(n, n) = -a.transpose();

  std::vector<double> wr(2 * n), wi(2 * n);
  Eigen::MatrixXd vs(2 * n, 2 * n);
  lapack_int sdim = 0;
  const lapack_int info = LAPACKE_dgees(
      LAPACK_COL_MAJOR, 'V', 'S', select_stable, 2 * n, h.data(), 2 * n, &sdim,
      wr.data(), wi.data(), vs.data(), 2 * n);
  if (info < 0) {
    throw CareFailure("solve_care: dgees argument error", 0.0, 0);
  }
  // info in (0, 2n] means the QR sweep failed; info == 2n+2 means roundoff
  // moved an eigenvalue across the axis during reordering. The latter is
  // recoverable if the subspace still has dimension n.
  if (info > 0 && info != 2 * n + 2) {
    throw CareFailure("solve_care: Schur decomposition failed", 0.0, 0);
  }
  if (sdim != n) {
    throw CareFailure(
        "solve_care: stable invariant subspace has dimension " +
            std::to_string(sdim) + " (expected " + std::to_string(n) +
            "); pair may be non-stabilizable or have imaginary-axis modes",
        0.0, 0);
  }

  const Eigen::MatrixXd u11 = vs.topLeftCorner(n, n);
  const Eigen::MatrixXd u21 = vs.bottomLeftCorner(n, n);
  // P = U21 U11^-1, via the transposed system U11' P' = U21'.
  Eigen::FullPivLU<Eigen::MatrixXd> u11t_lu(u11.transpose());
  if (!u11t_lu.isInvertible()) {
    throw CareFailure("solve_care: singular U11 block in stable subspace", 0.0, 0);
  }
  Eigen::MatrixXd p = u11t_lu.solve(u21.transpose()).transpose();

  CareSolution sol;
  sol.asymmetry = (p - p.transpose()).cwiseAbs().maxCoeff();
  sol.p = 0.5 * (p + p.transpose());
  sol.k = r_chol.solve(b.transpose() * sol.p);
  sol.residual = care_residual(a, b, q, r, sol.p);

  if (sol.residual >= kResidualTol) {
    // Polish a marginal Schur result; the Kleinman step contracts toward the
    // same stabilizing fixed point.
    CareSolution refined = newton_kleinman(a, b, q, r, sol.k);
    refined.asymmetry = sol.asymmetry;
    sol = refined;
    if (sol.residual >= kResidualTol) {
      throw CareFailure("solve_care: residual " + std::to_string(sol.residual) +
                            " above tolerance after refinement",
                        sol.residual, sol.iterations);
    }
  }

  sol.spectral_abscissa_a = spectral_abscissa(a);
  sol.closed_loop_abscissa = spectral_abscissa(a - b * sol.k);
  return sol;
}

CareSolution newton_kleinman(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                             const Eigen::MatrixXd& q, const Eigen::MatrixXd& r,
                             const Eigen::MatrixXd& k0, int max_iterations) {
  Eigen::LLT<Eigen::MatrixXd> r_chol(r);
  if (r_chol.info() != Eigen::Success) {
    throw std::invalid_argument("newton_kleinman: R must be positive-definite");
  }

  Eigen::MatrixXd k = k0;
  Eigen::MatrixXd p;
  double residual = std::numeric_limits<double>::infinity();
  for (int it = 1; it <= max_iterations; ++it) {
    const Eigen::MatrixXd a_cl = a - b * k;
    if (spectral_abscissa(a_cl) >= 0.0) {
      throw CareFailure("newton_kleinman: iterate lost stability", residual, it);
    }
    p = solve_lyapunov(a_cl, q + k.transpose() * r * k);
    const Eigen::MatrixXd k_next = r_chol.solve(b.transpose() * p);
    const double step = (k_next - k).cwiseAbs().maxCoeff();
    k = k_next;
    residual = care_residual(a, b, q, r, p);
    if (residual < 1e-12 || step < 1e-13) {
      CareSolution sol;
      sol.p = p;
      sol.k = k;
      sol.residual = residual;
      sol.iterations = it;
      sol.spectral_abscissa_a = spectral_abscissa(a);
      sol.closed_loop_abscissa = spectral_abscissa(a - b * k);
      return sol;
    }
  }
  throw CareFailure("newton_kleinman: no convergence", residual, max_iterations);
}

CareSolution lqr_gain(const LinearizedSystem& sys, const LqrWeights& weights,
                      double epsilon) {
  weights.validate();
  const Eigen::MatrixXd a_reg = regularize_a(sys.a, epsilon);
  return solve_care(a_reg, sys.b, weights.q, weights.r);
}

}  // namespace eslqr
