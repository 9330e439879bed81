#pragma once

#include <memory>
#include <string>
#include <vector>

#include "pr/types.hpp"

namespace pr {

// A parallel robot with n task dof and m actuators (m >= n).
//
// All evaluation methods take an explicit physical-parameter vector `phys`
// so the same model object serves the true plant, a perturbed nominal
// controller model, and the regressor-extraction sampling.  Measured link
// lengths are passed separately: sensors provide them regardless of how
// wrong the parameter estimates are, and the dynamics of the length-
// actuated legs are written in terms of those measurements.
//
// Every theta_* map below is *exactly* linear in the sense required by the
// regressor machinery: the corresponding physical quantity
//   theta_c:  M(phys) a + C(phys) v + G(phys)           = Y_c(state) theta_c
//   theta_a:  R(phys) (M a + C v + G - KS) - Ya_base    = Y_a(state) theta_a
//   theta_b:  T(phys)                                   = Y_b(state) theta_b
//   Theta:    J_new_T(phys)                             = base + Y(state) Theta
// depends on phys only through the listed monomials.
class RobotModel {
 public:
  virtual ~RobotModel() = default;

  virtual std::string name() const = 0;
  virtual int n() const = 0;  // task dof
  virtual int m() const = 0;  // actuators
  virtual int l() const = 0;  // kinematic regressor width (rows of Theta)
  virtual int r() const = 0;  // width of theta_a
  virtual int k() const = 0;  // width of theta_b
  virtual int p() const = 0;  // width of theta_c
  bool redundant() const { return m() > n(); }

  virtual Workspace workspace() const = 0;

  // Physical parameters (every scalar subject to perturbation studies).
  virtual Vec phys() const = 0;
  virtual std::vector<std::string> phys_names() const = 0;

  // Leg/cable lengths at X under `phys` geometry.
  virtual Vec lengths(const Vec& X, const Vec& phys) const = 0;

  // Task-space dynamics at state s with measured lengths `len`.
  virtual DynamicsEval dynamics(const TaskState& s, const Vec& phys,
                                const Vec& len) const = 0;

  // Unscaled Jacobian transpose factor (J^T = j_new_T * diag(len)^{-1}).
  virtual Mat j_new_T(const Vec& X, const Vec& phys) const = 0;

  // J_new_T = base_term + Y * Theta decomposition at X.
  virtual KinematicRegressor kinematic(const Vec& X, const Vec& phys) const = 0;

  // Linear-in-monomial parameter maps (see class comment).
  virtual Vec theta_a(const Vec& phys) const = 0;
  virtual Vec theta_b(const Vec& phys) const = 0;
  virtual Vec theta_c(const Vec& phys) const = 0;
  virtual Mat Theta(const Vec& phys) const = 0;  // l x m

  // Closed-form determinant regressor row, 1 x k: Y_b(X) theta_b = T.
  virtual Mat Yb_row(const Vec& X) const = 0;

  // Parameter-free affine part of R (M a_ref + C v_ref + G - KS):
  // the remainder after subtracting it is exactly linear in theta_a.
  virtual Vec Ya_base(const Vec& X, const Vec& KS) const = 0;

  // State-dependent regressor matrices (m x r and n x p):
  //   Ya_base + Y_a theta_a(phys) = R(phys) (M a_ref + C v_ref + G - KS)
  //   Y_c theta_c(phys)           = M a_ref + C v_ref + G
  // with `len` the measured lengths at s.X.
  virtual Mat Ya_matrix(const TaskState& s, const Vec& v_ref, const Vec& a_ref,
                        const Vec& KS, const Vec& len) const = 0;
  virtual Mat Yc_matrix(const TaskState& s, const Vec& v_ref, const Vec& a_ref,
                        const Vec& len) const = 0;
};

using RobotModelPtr = std::shared_ptr<const RobotModel>;

}  // namespace pr
