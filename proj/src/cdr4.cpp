#include "pr/robots/cdr4.hpp"

#include <cmath>

namespace pr {

Cdr4Model::Cdr4Model(const Cdr4Params& params) : params_(params) {
  init_extractors(24, 4242u);
}

Workspace Cdr4Model::workspace() const {
  Workspace w;
  w.lo = Vec(3);
  w.hi = Vec(3);
  w.lo << -1.2, -2.5, 0.5;
  w.hi << 1.2, 2.5, 3.5;
  return w;
}

Vec Cdr4Model::phys() const {
  Vec ph(4);
  ph << params_.a, params_.b, params_.h, params_.m;
  return ph;
}

std::vector<std::string> Cdr4Model::phys_names() const {
  return {"a", "b", "h", "m"};
}

Mat Cdr4Model::anchor_matrix(const Vec& ph) const {
  const double a = ph(0), b = ph(1), h = ph(2);
  Mat A(3, 4);
  A << b / 2, -b / 2, b / 2, -b / 2,
       a / 2, a / 2, -a / 2, -a / 2,
       h, h, h, h;
  return A;
}

Vec Cdr4Model::lengths(const Vec& X, const Vec& ph) const {
  const Mat A = anchor_matrix(ph);
  Vec len(4);
  for (int i = 0; i < 4; ++i) len(i) = (A.col(i) - X).norm();
  return len;
}

DynamicsEval Cdr4Model::dynamics(const TaskState&, const Vec& ph,
                                 const Vec&) const {
  const double mass = ph(3);
  DynamicsEval dyn;
  dyn.M = mass * Mat::Identity(3, 3);
  dyn.C = Mat::Zero(3, 3);
  dyn.G = Vec(3);
  dyn.G << 0.0, 0.0, mass * params_.g;
  return dyn;
}

Mat Cdr4Model::j_new_T(const Vec& X, const Vec& ph) const {
  // Columns -(X - A_i): cable directions scaled by length.
  return anchor_matrix(ph).colwise() - X;
}

KinematicRegressor Cdr4Model::kinematic(const Vec& X, const Vec& ph) const {
  KinematicRegressor kr;
  kr.base_term = (-X).replicate(1, 4);
  kr.Y = Mat::Identity(3, 3);
  kr.Theta = anchor_matrix(ph);
  return kr;
}

Vec Cdr4Model::theta_c(const Vec& ph) const {
  Vec th(1);
  th << ph(3);
  return th;
}

Vec Cdr4Model::theta_b(const Vec& ph) const {
  // T = det(J_new_T J_new) = 4 a^2 b^2 (z - h)^2, so with
  // Y_b = (4 z^2, -8 z, 4): theta_b = a^2 b^2 (1, h, h^2).
  const double a = ph(0), b = ph(1), h = ph(2);
  const double s = a * a * b * b;
  Vec th(3);
  th << s, s * h, s * h * h;
  return th;
}

Vec Cdr4Model::theta_a(const Vec& ph) const {
  const double a = ph(0), b = ph(1), h = ph(2), mass = ph(3);
  const double mon[8] = {a * b * b,         a * b * b * h, a * b * b * h * h,
                         a * a * b,         a * a * b * h, a * a * b * h * h,
                         a * a * b * b,     a * a * b * b * h};
  Vec th(16);
  for (int i = 0; i < 8; ++i) {
    th(2 * i) = mon[i];
    th(2 * i + 1) = mon[i] * mass;
  }
  return th;
}

Mat Cdr4Model::Theta(const Vec& ph) const { return anchor_matrix(ph); }

Mat Cdr4Model::Yb_row(const Vec& X) const {
  const double z = X(2);
  Mat row(1, 3);
  row << 4.0 * z * z, -8.0 * z, 4.0;
  return row;
}

Vec Cdr4Model::Ya_base(const Vec&, const Vec&) const {
  // R (m (a_ref + g e_z) - KS) is exactly linear in theta_a; no affine part.
  return Vec::Zero(4);
}

Mat Cdr4Model::Yc_matrix(const TaskState&, const Vec&, const Vec& a_ref,
                         const Vec&) const {
  Mat Yc(3, 1);
  Yc << a_ref(0), a_ref(1), a_ref(2) + params_.g;
  return Yc;
}

}  // namespace pr
