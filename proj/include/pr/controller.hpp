#pragma once

#include "pr/jacobian.hpp"
#include "pr/robot_model.hpp"
#include "pr/types.hpp"

namespace pr {

struct ControllerGains {
  Mat Gamma;      // n x n positive definite
  Mat K;          // n x n symmetric positive definite
  double lambda;  // Lambda = lambda * I_q; adaptation rate is -Lambda^{-1} Y_F^T S
};

struct TrajRefs {
  Vec Xd, Vd, Ad;
};

struct SlidingVars {
  Vec S;      // Xtilde_dot + Gamma Xtilde
  Vec v_ref;  // Vd - Gamma Xtilde
  Vec a_ref;  // Ad - Gamma Xtilde_dot
};

SlidingVars sliding_variables(const TaskState& s, const TrajRefs& refs,
                              const Mat& Gamma);

// Non-adaptive law: tau = L (R/T) (M a_ref + C v_ref + G - K S) with R, T
// built from `phys_nominal` but lengths measured on the true geometry.
Vec baseline_control(const RobotModel& model, const TaskState& s,
                     const TrajRefs& refs, const ControllerGains& gains,
                     const Vec& phys_nominal);

// Concatenated estimate vector with projection bounds and the constant
// diagnostic targets (true theta_a/theta_b; initial consistent values for
// the over-parameterized eta/mu partitions).
struct AdaptiveState {
  Vec theta_hat_F;
  Vec lo, hi;
  Vec target;

  Eigen::VectorBlock<Vec> block_a(int r) { return theta_hat_F.head(r); }
  Vec theta_a(int r) const { return theta_hat_F.head(r); }
  Vec theta_b(int k) const { return theta_hat_F.tail(k); }
};

struct ControlOutput {
  Vec tau;
  Vec S;
  double V;
  double T_hat;
  Mat Y_F;
};

// Unconstrained rate -Lambda^{-1} Y_F^T S with the saturation projection:
// components pointing outward on an active bound face are zeroed.
Vec adaptation_step(const Mat& Y_F, const Vec& S, double lambda,
                    const AdaptiveState& a);

double lyapunov_value(const Vec& S, const Mat& M, const Vec& theta_tilde_F,
                      double lambda);

// Adaptive law of the regressor-quotient form.  Theta_hat and theta_hat_c
// are the frozen nominal estimates of the kinematic parameter matrix and
// the dynamic parameter vector that enter Y_F (only theta_hat_F adapts).
class AdaptiveController {
 public:
  AdaptiveController(RobotModelPtr model, ControllerGains gains,
                     Mat Theta_hat, Vec theta_hat_c);

  ControlOutput control(const TaskState& s, const TrajRefs& refs,
                        const AdaptiveState& a) const;

  const ControllerGains& gains() const { return gains_; }
  const RobotModel& model() const { return *model_; }
  const Mat& Theta_hat() const { return Theta_hat_; }
  const Vec& theta_hat_c() const { return theta_hat_c_; }

 private:
  RobotModelPtr model_;
  ControllerGains gains_;
  Mat Theta_hat_;
  Vec theta_hat_c_;
};

}  // namespace pr
