#pragma once

#include "pr/extracted_model.hpp"

namespace pr {

// Planar 2-dof RPR parallel robot: two actuated prismatic legs, each a
// cylinder (mass m_i1, CoM at c_i1 from the base pivot) with a sliding
// piston (mass m_i2, CoM at c_i2 from the end-effector), link inertia I_xi
// about the leg CoM axis, point-mass end effector m_p.  Base pivots at
// (0,0) and (a,0); task coordinates are the end-effector position (x, y).
struct Rpr2Params {
  double m_11 = 1.0, m_12 = 1.0, m_21 = 1.0, m_22 = 1.0;
  double c_11 = 0.5, c_12 = 0.5, c_21 = 0.5, c_22 = 0.5;
  double I_x1 = 0.1, I_x2 = 0.1;
  double m_p = 2.0;
  double a = 1.0;
  double g = 9.81;
};

class Rpr2Model : public ExtractedRobotModel {
 public:
  explicit Rpr2Model(const Rpr2Params& params = {});

  std::string name() const override { return "rpr2"; }
  int n() const override { return 2; }
  int m() const override { return 2; }
  int l() const override { return 2; }
  int r() const override { return 31; }
  int k() const override { return 1; }
  int p() const override { return 21; }

  Workspace workspace() const override;
  Vec phys() const override;
  std::vector<std::string> phys_names() const override;

  Vec lengths(const Vec& X, const Vec& phys) const override;
  DynamicsEval dynamics(const TaskState& s, const Vec& phys,
                        const Vec& len) const override;
  Mat j_new_T(const Vec& X, const Vec& phys) const override;
  KinematicRegressor kinematic(const Vec& X, const Vec& phys) const override;

  Vec theta_a(const Vec& phys) const override;
  Vec theta_b(const Vec& phys) const override;
  Vec theta_c(const Vec& phys) const override;
  Mat Theta(const Vec& phys) const override;

  Mat Yb_row(const Vec& X) const override;
  Vec Ya_base(const Vec& X, const Vec& KS) const override;

  const Rpr2Params& params() const { return params_; }

  // Test hook: zero the Coriolis matrix (negative control for the
  // skew-symmetry property check).
  void set_zero_coriolis(bool on) { zero_coriolis_ = on; }

 private:
  Rpr2Params params_;
  bool zero_coriolis_ = false;
};

}  // namespace pr
