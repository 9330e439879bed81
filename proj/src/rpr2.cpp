#include "pr/robots/rpr2.hpp"

#include <cmath>

namespace pr {

namespace {

// Contribution of one RPR leg to M, dM/dX and G, written in terms of the
// measured leg length l (treated as an independent input) and the leg
// vector s from the base pivot to the end effector.  Derived from the leg
// Lagrangian: cylinder rotates about the pivot, piston slides along the
// leg with its CoM at distance (l - c2) from the pivot.
struct LegTerms {
  Eigen::Matrix2d M;
  Eigen::Matrix2d dM[2];  // dM/dx, dM/dy (s-gradient at fixed measured l)
  Eigen::Vector2d G;
};

LegTerms leg_terms(const Eigen::Vector2d& s, double l, double m1, double m2,
                   double c1, double c2, double I, double g) {
  LegTerms out;
  const double J0 = I + m1 * c1 * c1 + m2 * c2 * c2;
  const double l2 = l * l;
  const double beta = m2 + J0 / l2 - 2.0 * m2 * c2 / l;
  const double u = 2.0 * m2 * c2 / l - J0 / l2;
  const Eigen::Matrix2d P = s * s.transpose();
  out.M = beta * Eigen::Matrix2d::Identity() + (u / l2) * P;
  const double dbeta = -2.0 * J0 / (l2 * l) + 2.0 * m2 * c2 / l2;
  const double du = -dbeta;
  for (int k = 0; k < 2; ++k) {
    Eigen::Vector2d ek = Eigen::Vector2d::Zero();
    ek(k) = 1.0;
    const double lam_k = s(k) / l;
    out.dM[k] = dbeta * lam_k * Eigen::Matrix2d::Identity() +
                du * lam_k * P / l2 +
                (u / l2) * (ek * s.transpose() + s * ek.transpose()) -
                2.0 * u * P * s(k) / (l2 * l2);
  }
  const double d = m1 * c1 - m2 * c2;
  const Eigen::Vector2d ey(0.0, 1.0);
  out.G = g * d * (ey / l - s(1) * s / (l2 * l)) + g * m2 * ey;
  return out;
}

struct Quartets {
  Eigen::Vector4d q1, q2;
};

Quartets quartets(const Vec& ph) {
  Quartets q;
  const double m11 = ph(0), m12 = ph(1), m21 = ph(2), m22 = ph(3);
  const double c11 = ph(4), c12 = ph(5), c21 = ph(6), c22 = ph(7);
  const double I1 = ph(8), I2 = ph(9);
  q.q1 << m12, I1 + m11 * c11 * c11 + m12 * c12 * c12, m12 * c12,
      m11 * c11 - m12 * c12;
  q.q2 << m22, I2 + m21 * c21 * c21 + m22 * c22 * c22, m22 * c22,
      m21 * c21 - m22 * c22;
  return q;
}

}  // namespace

Rpr2Model::Rpr2Model(const Rpr2Params& params) : params_(params) {
  init_extractors(48, 2024u);
}

Workspace Rpr2Model::workspace() const {
  Workspace w;
  w.lo = Vec(2);
  w.hi = Vec(2);
  w.lo << 0.1, 0.2;
  w.hi << params_.a - 0.1, 1.5;
  return w;
}

Vec Rpr2Model::phys() const {
  Vec ph(12);
  ph << params_.m_11, params_.m_12, params_.m_21, params_.m_22, params_.c_11,
      params_.c_12, params_.c_21, params_.c_22, params_.I_x1, params_.I_x2,
      params_.m_p, params_.a;
  return ph;
}

std::vector<std::string> Rpr2Model::phys_names() const {
  return {"m_11", "m_12", "m_21", "m_22", "c_11", "c_12",
          "c_21", "c_22", "I_x1", "I_x2", "m_p",  "a"};
}

Vec Rpr2Model::lengths(const Vec& X, const Vec& ph) const {
  Vec len(2);
  len(0) = std::hypot(X(0), X(1));
  len(1) = std::hypot(X(0) - ph(11), X(1));
  return len;
}

DynamicsEval Rpr2Model::dynamics(const TaskState& s, const Vec& ph,
                                 const Vec& len) const {
  const double mp = ph(10), a = ph(11), g = params_.g;
  const Eigen::Vector2d s1(s.X(0), s.X(1));
  const Eigen::Vector2d s2(s.X(0) - a, s.X(1));
  const LegTerms t1 = leg_terms(s1, len(0), ph(0), ph(1), ph(4), ph(5), ph(8), g);
  const LegTerms t2 = leg_terms(s2, len(1), ph(2), ph(3), ph(6), ph(7), ph(9), g);
  DynamicsEval dyn;
  dyn.M = mp * Eigen::Matrix2d::Identity() + t1.M + t2.M;
  dyn.G = Vec(2);
  dyn.G << t1.G(0) + t2.G(0), t1.G(1) + t2.G(1) + g * mp;
  Eigen::Matrix2d dM[2];
  for (int kk = 0; kk < 2; ++kk) dM[kk] = t1.dM[kk] + t2.dM[kk];
  dyn.C = Mat::Zero(2, 2);
  if (!zero_coriolis_) {
    for (int kk = 0; kk < 2; ++kk)
      for (int j = 0; j < 2; ++j)
        for (int i = 0; i < 2; ++i)
          dyn.C(kk, j) += 0.5 *
                          (dM[i](kk, j) + dM[j](kk, i) - dM[kk](i, j)) *
                          s.Xdot(i);
  }
  return dyn;
}

Mat Rpr2Model::j_new_T(const Vec& X, const Vec& ph) const {
  Mat J(2, 2);
  J << X(0), X(0) - ph(11), X(1), X(1);
  return J;
}

KinematicRegressor Rpr2Model::kinematic(const Vec& X, const Vec& ph) const {
  KinematicRegressor kr;
  kr.base_term = Mat(2, 2);
  kr.base_term << X(0), X(0), X(1), X(1);
  kr.Y = Mat(2, 2);
  kr.Y << 0.0, -1.0, 0.0, 0.0;
  kr.Theta = ph(11) * Mat::Identity(2, 2);
  return kr;
}

Vec Rpr2Model::theta_c(const Vec& ph) const {
  const Quartets q = quartets(ph);
  const double mp = ph(10), a = ph(11);
  Vec th(21);
  th.segment(0, 4) = q.q1;
  th.segment(4, 4) = q.q2;
  th(8) = mp;
  th.segment(9, 4) = a * q.q2;
  th.segment(13, 4) = a * a * q.q2;
  th.segment(17, 4) = a * a * a * q.q2;
  return th;
}

Vec Rpr2Model::theta_a(const Vec& ph) const {
  const Quartets q = quartets(ph);
  const double mp = ph(10), a = ph(11);
  Vec th(31);
  th.segment(0, 21) = theta_c(ph);
  th.segment(21, 4) = a * q.q1;
  th.segment(25, 4) = a * a * a * a * q.q2;
  th(29) = mp * a;
  th(30) = a;
  return th;
}

Vec Rpr2Model::theta_b(const Vec& ph) const {
  Vec th(1);
  th << ph(11);
  return th;
}

Mat Rpr2Model::Theta(const Vec& ph) const {
  return ph(11) * Mat::Identity(2, 2);
}

Mat Rpr2Model::Yb_row(const Vec& X) const {
  Mat row(1, 1);
  row << X(1);
  return row;
}

Vec Rpr2Model::Ya_base(const Vec& X, const Vec& KS) const {
  // Parameter-free part of adj(J_new_T): R = R1 + a*E with
  // R1 = [[y, -x], [-y, x]], E = [[0, 1], [0, 0]]; base = -R1*KS.
  Mat R1(2, 2);
  R1 << X(1), -X(0), -X(1), X(0);
  return -(R1 * KS);
}

}  // namespace pr
