#pragma once

#include <utility>

#include "pr/robot_model.hpp"
#include "pr/types.hpp"

namespace pr {

// M, C, G at s with the model's true parameters; throws SingularConfigError
// when s.X leaves the declared workspace or M loses definiteness.
DynamicsEval evaluate_dynamics(const RobotModel& model, const TaskState& s);

// Xddot = M^{-1} (J^T tau - C Xdot - G).
Vec forward_acceleration(const RobotModel& model, const TaskState& s,
                         const Vec& tau);

// max |A + A^T| with A = Mdot - 2C, Mdot by central difference of M along
// the state's own velocity with step h.
double check_skew_symmetry(const RobotModel& model, const TaskState& s,
                           double h);

// (Y_c, theta_c) with Y_c theta_c = M a_ref + C v_ref + G at true parameters.
std::pair<Mat, Vec> dynamics_regressor(const RobotModel& model,
                                       const TaskState& s, const Vec& v_ref,
                                       const Vec& a_ref);

}  // namespace pr
