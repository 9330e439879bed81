#include "pr/dynamics.hpp"

#include <Eigen/Eigenvalues>

#include "pr/jacobian.hpp"

namespace pr {

DynamicsEval evaluate_dynamics(const RobotModel& model, const TaskState& s) {
  if (!model.workspace().contains(s.X))
    throw SingularConfigError("state outside declared workspace");
  const Vec phys = model.phys();
  DynamicsEval dyn = model.dynamics(s, phys, model.lengths(s.X, phys));
  Eigen::SelfAdjointEigenSolver<Mat> es(dyn.M);
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw SingularConfigError("inertia matrix not positive definite, min eig " +
                              std::to_string(es.eigenvalues().minCoeff()));
  return dyn;
}

Vec forward_acceleration(const RobotModel& model, const TaskState& s,
                         const Vec& tau) {
  const DynamicsEval dyn = evaluate_dynamics(model, s);
  const Mat JT = jacobian_T(model, s.X);
  return dyn.M.ldlt().solve(JT * tau - dyn.C * s.Xdot - dyn.G);
}

double check_skew_symmetry(const RobotModel& model, const TaskState& s,
                           double h) {
  const Vec phys = model.phys();
  const Vec Xp = s.X + h * s.Xdot;
  const Vec Xm = s.X - h * s.Xdot;
  const Mat Mp =
      model.dynamics({Xp, s.Xdot}, phys, model.lengths(Xp, phys)).M;
  const Mat Mm =
      model.dynamics({Xm, s.Xdot}, phys, model.lengths(Xm, phys)).M;
  const DynamicsEval dyn =
      model.dynamics(s, phys, model.lengths(s.X, phys));
  const Mat A = (Mp - Mm) / (2.0 * h) - 2.0 * dyn.C;
  return (A + A.transpose()).cwiseAbs().maxCoeff();
}

std::pair<Mat, Vec> dynamics_regressor(const RobotModel& model,
                                       const TaskState& s, const Vec& v_ref,
                                       const Vec& a_ref) {
  const Vec phys = model.phys();
  const Vec len = model.lengths(s.X, phys);
  return {model.Yc_matrix(s, v_ref, a_ref, len), model.theta_c(phys)};
}

}  // namespace pr
