#pragma once

#include "pr/extracted_model.hpp"

namespace pr {

// Suspended cable-driven robot: point-mass end effector (m) pulled by four
// massless cables anchored at the corners of a rectangle of side lengths
// b (x) and a (y) at height h:
//   A_1 = ( b/2,  a/2, h)   A_2 = (-b/2,  a/2, h)
//   A_3 = ( b/2, -a/2, h)   A_4 = (-b/2, -a/2, h)
// Three translational dof, four actuators (redundant).
struct Cdr4Params {
  double a = 7.05;
  double b = 3.56;
  double h = 4.26;
  double m = 4.5;
  double g = 9.81;
};

class Cdr4Model : public ExtractedRobotModel {
 public:
  explicit Cdr4Model(const Cdr4Params& params = {});

  std::string name() const override { return "cdr4"; }
  int n() const override { return 3; }
  int m() const override { return 4; }
  int l() const override { return 3; }
  int r() const override { return 16; }
  int k() const override { return 3; }
  int p() const override { return 1; }

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

  // Closed-form Y_c: M a_ref + C v_ref + G = (a_ref + g e_z) * m.
  Mat Yc_matrix(const TaskState& s, const Vec& v_ref, const Vec& a_ref,
                const Vec& len) const override;

  // Anchor matrix, 3 x 4 (columns A_i), for given phys.
  Mat anchor_matrix(const Vec& phys) const;

  const Cdr4Params& params() const { return params_; }

 private:
  Cdr4Params params_;
};

}  // namespace pr
