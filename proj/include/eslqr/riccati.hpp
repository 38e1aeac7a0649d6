#pragma once

#include <stdexcept>
#include <string>

#include "eslqr/error_state.hpp"

namespace eslqr {

using Mat4 = Eigen::Matrix4d;

// Regularization shift applied to A before every Riccati solve. Small enough
// to perturb the gain below test tolerances, large enough to push chains of
// integrators strictly into the left half-plane.
inline constexpr double kDefaultRegularization = 1e-6;

// Quadratic cost weights for the 9-state / 4-input error system.
struct LqrWeights {
  Mat9 q = Vec9{10.0, 10.0, 10.0, 5.0, 5.0, 5.0, 1.0, 1.0, 1.0}.asDiagonal();
  Mat4 r = Vec4{0.5, 1.0, 1.0, 1.0}.asDiagonal();

  // Throws std::invalid_argument unless both matrices are symmetric within
  // 1e-12 and positive-definite.
  void validate() const;
};

struct CareSolution {
  Eigen::MatrixXd p;  // stabilizing Riccati solution, symmetric PSD
  Eigen::MatrixXd k;  // feedback gain R^-1 B^T P
  double residual{0.0};          // ||A'P + PA - PBR^-1B'P + Q||_F / ||Q||_F
  double asymmetry{0.0};         // max |P - P'| before symmetrization
  double spectral_abscissa_a{0.0};    // max Re(lambda) of the solved A
  double closed_loop_abscissa{0.0};   // max Re(lambda) of A - BK
  int iterations{0};             // Newton refinement steps taken (0 = Schur only)
};

struct CareFailure : std::runtime_error {
  CareFailure(const std::string& what, double residual_, int iterations_)
      : std::runtime_error(what), residual(residual_), iterations(iterations_) {}
  double residual;
  int iterations;
};

// A - epsilon * I. Shifts every eigenvalue left by exactly epsilon.
Eigen::MatrixXd regularize_a(const Eigen::MatrixXd& a, double epsilon);

// Solves A'X + XA + Q = 0 by Kronecker vectorization. Fine for the small
// dense systems used here (n <= 9 -> an 81x81 LU).
Eigen::MatrixXd solve_lyapunov(const Eigen::MatrixXd& a, const Eigen::MatrixXd& q);

// Stabilizing solution of A'P + PA - P B R^-1 B' P + Q = 0 via the ordered
// real Schur form of the 2n x 2n Hamiltonian (stable invariant subspace,
// P = U21 U11^-1). Q may be positive-semidefinite; R must be
// positive-definite. Throws CareFailure when the stable subspace is
// deficient (imaginary-axis eigenvalues, non-stabilizable pair) or when the
// residual stays above 1e-8 after Newton refinement.
CareSolution solve_care(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                        const Eigen::MatrixXd& q, const Eigen::MatrixXd& r);

// Kleinman iteration from a stabilizing initial gain: each step solves the
// closed-loop Lyapunov equation and refreshes the gain. Used as the
// independent cross-check of solve_care, and by solve_care itself to polish
// a marginal Schur result. Throws CareFailure if k0 is not stabilizing or
// the iteration stalls.
CareSolution newton_kleinman(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                             const Eigen::MatrixXd& q, const Eigen::MatrixXd& r,
                             const Eigen::MatrixXd& k0, int max_iterations = 50);

// regularize_a followed by solve_care on the linearized error system.
CareSolution lqr_gain(const LinearizedSystem& sys, const LqrWeights& weights,
                      double epsilon = kDefaultRegularization);

// Largest real part over the eigenvalues of m.
double spectral_abscissa(const Eigen::MatrixXd& m);

}  // namespace eslqr
