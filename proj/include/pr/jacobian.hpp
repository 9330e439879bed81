#pragma once

#include <utility>

#include "pr/robot_model.hpp"
#include "pr/types.hpp"

namespace pr {

constexpr double kEpsLen = 1e-6;  // degenerate-length threshold (m)
constexpr double kEpsT = 1e-6;    // singular-proximity threshold on T

// Adjugate by cofactor expansion, valid for any square A (used for n <= 3).
Mat adjugate(const Mat& A);

// J^T = J_new_T diag(L)^{-1} with true parameters; throws on l_i <= kEpsLen.
JacobianFactorization factorize_jacobian(const RobotModel& model,
                                         const TaskState& s);

// Full J^T (n x m) from the factorization.
Mat jacobian_T(const RobotModel& model, const Vec& X);

KinematicRegressor kinematic_regressor(const RobotModel& model,
                                       const TaskState& s);

AdjugateSplit adjugate_determinant(const JacobianFactorization& jf,
                                   bool redundant);

// Determinant regressor: Y_b(X) theta_b = T at true parameters.
std::pair<Mat, Vec> assemble_Yb(const RobotModel& model, const TaskState& s);

// Adjugate regressor: base + Y_a theta_a = R (M a_ref + C v_ref + G - KS).
struct YaResult {
  Vec base;     // m, parameter-free affine part
  Mat Ya;       // m x r
  Vec theta_a;  // r, true values
};
YaResult assemble_Ya(const RobotModel& model, const TaskState& s,
                     const Vec& v_ref, const Vec& a_ref, const Vec& KS);

// Y_eta, l x (m*r*l): Y Theta~ (Y_a theta_a~) = Y Y_eta theta_eta~ with
// theta_eta~ the row-major stacking of Theta~_{ij} * theta_a~^T.
Mat assemble_Yeta(const Mat& Y, const Mat& Ya);

// Row-major stacking of the outer product Theta~ (l x m) times theta_a~ (r).
Vec stack_eta(const Mat& Theta_tilde, const Vec& theta_a_tilde);

// Y_mu, p x (p*k): (Y_b theta_b~)(Y_c theta_c~) = Y_c Y_mu theta_mu~ with
// theta_mu~ the row-major stacking of theta_c~ theta_b~^T.
Mat assemble_Ymu(int p, const Mat& Yb_row);

Vec stack_mu(const Vec& theta_c_tilde, const Vec& theta_b_tilde);

// Closed-loop regressor, n x (r + m*r*l + p*k + k), block order
// (theta_a, theta_eta, theta_mu, theta_b):
//   M Sdot + C S + K S = Y_F theta_F~
// with J_hat = base_term + Y Theta_hat the estimated J_new_T.
Mat assemble_YF(const Mat& J_hat, const Mat& Y, const Mat& Ya, const Mat& Yc,
                const Mat& Yb_row, const Vec& theta_hat_c, const Vec& KS,
                double T_hat);

}  // namespace pr
