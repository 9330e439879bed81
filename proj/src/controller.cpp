#include "pr/controller.hpp"

#include <cmath>

namespace pr {

SlidingVars sliding_variables(const TaskState& s, const TrajRefs& refs,
                              const Mat& Gamma) {
  const Vec xt = s.X - refs.Xd;
  const Vec xtd = s.Xdot - refs.Vd;
  SlidingVars out;
  out.S = xtd + Gamma * xt;
  out.v_ref = refs.Vd - Gamma * xt;
  out.a_ref = refs.Ad - Gamma * xtd;
  return out;
}

Vec baseline_control(const RobotModel& model, const TaskState& s,
                     const TrajRefs& refs, const ControllerGains& gains,
                     const Vec& phys_nominal) {
  const SlidingVars sv = sliding_variables(s, refs, gains.Gamma);
  const Vec len = model.lengths(s.X, model.phys());  // measured
  const DynamicsEval dyn = model.dynamics(s, phys_nominal, len);
  JacobianFactorization jf{model.j_new_T(s.X, phys_nominal), len};
  const AdjugateSplit as = adjugate_determinant(jf, model.redundant());
  if (std::abs(as.T) <= kEpsT)
    throw SingularConfigError("baseline controller at nominal singularity, T=" +
                              std::to_string(as.T));
  const Vec W =
      dyn.M * sv.a_ref + dyn.C * sv.v_ref + dyn.G - gains.K * sv.S;
  return len.asDiagonal() * (as.R * W) / as.T;
}

Vec adaptation_step(const Mat& Y_F, const Vec& S, double lambda,
                    const AdaptiveState& a) {
  Vec rate = -(Y_F.transpose() * S) / lambda;
  for (int i = 0; i < rate.size(); ++i) {
    if (a.theta_hat_F(i) >= a.hi(i) && rate(i) > 0.0) rate(i) = 0.0;
    if (a.theta_hat_F(i) <= a.lo(i) && rate(i) < 0.0) rate(i) = 0.0;
  }
  return rate;
}

double lyapunov_value(const Vec& S, const Mat& M, const Vec& theta_tilde_F,
                      double lambda) {
  return 0.5 * S.dot(M * S) + 0.5 * lambda * theta_tilde_F.squaredNorm();
}

AdaptiveController::AdaptiveController(RobotModelPtr model,
                                       ControllerGains gains, Mat Theta_hat,
                                       Vec theta_hat_c)
    : model_(std::move(model)),
      gains_(std::move(gains)),
      Theta_hat_(std::move(Theta_hat)),
      theta_hat_c_(std::move(theta_hat_c)) {}

ControlOutput AdaptiveController::control(const TaskState& s,
                                          const TrajRefs& refs,
                                          const AdaptiveState& a) const {
  const RobotModel& mdl = *model_;
  const int r = mdl.r(), k = mdl.k();
  const SlidingVars sv = sliding_variables(s, refs, gains_.Gamma);
  const Vec KS = gains_.K * sv.S;

  const Vec phys_true = mdl.phys();
  const Vec len = mdl.lengths(s.X, phys_true);  // measured lengths
  for (int i = 0; i < len.size(); ++i)
    if (len(i) <= kEpsLen)
      throw DegenerateGeometryError("measured length below threshold");

  const Mat Yb = mdl.Yb_row(s.X);
  const double T_hat = (Yb * a.theta_b(k))(0);
  if (std::abs(T_hat) <= kEpsT)
    throw EstimatedSingularityFault("estimated determinant T_hat = " +
                                    std::to_string(T_hat));

  const Vec base = mdl.Ya_base(s.X, KS);
  const Mat Ya = mdl.Ya_matrix(s, sv.v_ref, sv.a_ref, KS, len);

  ControlOutput out;
  out.S = sv.S;
  out.T_hat = T_hat;
  out.tau = len.asDiagonal() * (base + Ya * a.theta_a(r)) / T_hat;
  if (!out.tau.allFinite()) throw NumericFault("non-finite control output");

  const KinematicRegressor kr = mdl.kinematic(s.X, phys_true);
  const Mat J_hat = kr.base_term + kr.Y * Theta_hat_;
  const Mat Yc = mdl.Yc_matrix(s, sv.v_ref, sv.a_ref, len);
  out.Y_F = assemble_YF(J_hat, kr.Y, Ya, Yc, Yb, theta_hat_c_, KS, T_hat);

  const DynamicsEval dyn = mdl.dynamics(s, phys_true, len);
  out.V = lyapunov_value(sv.S, dyn.M, a.theta_hat_F - a.target, gains_.lambda);
  return out;
}

}  // namespace pr
