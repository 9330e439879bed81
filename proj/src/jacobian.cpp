#include "pr/jacobian.hpp"

#include <cmath>

namespace pr {

Mat adjugate(const Mat& A) {
  const int n = static_cast<int>(A.rows());
  Mat adj(n, n);
  if (n == 1) {
    adj(0, 0) = 1.0;
    return adj;
  }
  // adj(A)_{ji} = cofactor C_{ij} = (-1)^{i+j} det(minor_{ij})
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Mat minor(n - 1, n - 1);
      for (int a = 0, ma = 0; a < n; ++a) {
        if (a == i) continue;
        for (int b = 0, mb = 0; b < n; ++b) {
          if (b == j) continue;
          minor(ma, mb++) = A(a, b);
        }
        ++ma;
      }
      double det;
      if (n == 2)
        det = minor(0, 0);
      else
        det = minor(0, 0) * minor(1, 1) - minor(0, 1) * minor(1, 0);
      adj(j, i) = (((i + j) % 2) ? -1.0 : 1.0) * det;
    }
  }
  return adj;
}

static double det_small(const Mat& A) {
  switch (A.rows()) {
    case 1:
      return A(0, 0);
    case 2:
      return A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0);
    case 3:
      return A(0, 0) * (A(1, 1) * A(2, 2) - A(1, 2) * A(2, 1)) -
             A(0, 1) * (A(1, 0) * A(2, 2) - A(1, 2) * A(2, 0)) +
             A(0, 2) * (A(1, 0) * A(2, 1) - A(1, 1) * A(2, 0));
    default:
      return A.determinant();
  }
}

JacobianFactorization factorize_jacobian(const RobotModel& model,
                                         const TaskState& s) {
  const Vec phys = model.phys();
  JacobianFactorization jf;
  jf.J_new_T = model.j_new_T(s.X, phys);
  jf.L = model.lengths(s.X, phys);
  for (int i = 0; i < jf.L.size(); ++i)
    if (jf.L(i) <= kEpsLen)
      throw DegenerateGeometryError("leg length " + std::to_string(i) +
                                    " below threshold");
  return jf;
}

Mat jacobian_T(const RobotModel& model, const Vec& X) {
  const JacobianFactorization jf = factorize_jacobian(model, {X, Vec()});
  return jf.J_new_T * jf.L.cwiseInverse().asDiagonal();
}

KinematicRegressor kinematic_regressor(const RobotModel& model,
                                       const TaskState& s) {
  return model.kinematic(s.X, model.phys());
}

AdjugateSplit adjugate_determinant(const JacobianFactorization& jf,
                                   bool redundant) {
  AdjugateSplit out;
  if (!redundant) {
    out.R = adjugate(jf.J_new_T);
    out.T = det_small(jf.J_new_T);
  } else {
    const Mat Jn = jf.J_new_T.transpose();  // m x n
    const Mat JTJ = jf.J_new_T * Jn;        // n x n
    out.R = Jn * adjugate(JTJ);
    out.T = det_small(JTJ);
  }
  return out;
}

std::pair<Mat, Vec> assemble_Yb(const RobotModel& model, const TaskState& s) {
  return {model.Yb_row(s.X), model.theta_b(model.phys())};
}

YaResult assemble_Ya(const RobotModel& model, const TaskState& s,
                     const Vec& v_ref, const Vec& a_ref, const Vec& KS) {
  YaResult out;
  const Vec phys = model.phys();
  const Vec len = model.lengths(s.X, phys);
  out.base = model.Ya_base(s.X, KS);
  out.Ya = model.Ya_matrix(s, v_ref, a_ref, KS, len);
  out.theta_a = model.theta_a(phys);
  return out;
}

Mat assemble_Yeta(const Mat& Y, const Mat& Ya) {
  const int l = static_cast<int>(Y.cols());
  const int m = static_cast<int>(Ya.rows());
  const int r = static_cast<int>(Ya.cols());
  Mat Yeta = Mat::Zero(l, m * r * l);
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < m; ++j)
      Yeta.block(i, (i * m + j) * r, 1, r) = Ya.row(j);
  return Yeta;
}

Vec stack_eta(const Mat& Theta_tilde, const Vec& theta_a_tilde) {
  const int l = static_cast<int>(Theta_tilde.rows());
  const int m = static_cast<int>(Theta_tilde.cols());
  const int r = static_cast<int>(theta_a_tilde.size());
  Vec eta(l * m * r);
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < m; ++j)
      eta.segment((i * m + j) * r, r) = Theta_tilde(i, j) * theta_a_tilde;
  return eta;
}

Mat assemble_Ymu(int p, const Mat& Yb_row) {
  const int k = static_cast<int>(Yb_row.cols());
  Mat Ymu = Mat::Zero(p, p * k);
  for (int c = 0; c < p; ++c) Ymu.block(c, c * k, 1, k) = Yb_row;
  return Ymu;
}

Vec stack_mu(const Vec& theta_c_tilde, const Vec& theta_b_tilde) {
  const int p = static_cast<int>(theta_c_tilde.size());
  const int k = static_cast<int>(theta_b_tilde.size());
  Vec mu(p * k);
  for (int c = 0; c < p; ++c)
    mu.segment(c * k, k) = theta_c_tilde(c) * theta_b_tilde;
  return mu;
}

Mat assemble_YF(const Mat& J_hat, const Mat& Y, const Mat& Ya, const Mat& Yc,
                const Mat& Yb_row, const Vec& theta_hat_c, const Vec& KS,
                double T_hat) {
  if (std::abs(T_hat) <= kEpsT)
    throw EstimatedSingularityFault("estimated determinant T_hat = " +
                                    std::to_string(T_hat));
  const int n = static_cast<int>(J_hat.rows());
  const int m = static_cast<int>(Ya.rows());
  const int r = static_cast<int>(Ya.cols());
  const int l = static_cast<int>(Y.cols());
  const int p = static_cast<int>(Yc.cols());
  const int k = static_cast<int>(Yb_row.cols());
  Mat YF(n, r + m * r * l + p * k + k);
  YF.leftCols(r) = J_hat * Ya;
  YF.middleCols(r, m * r * l) = -Y * assemble_Yeta(Y, Ya);
  YF.middleCols(r + m * r * l, p * k) = Yc * assemble_Ymu(p, Yb_row);
  YF.rightCols(k) = -(Yc * theta_hat_c - KS) * Yb_row;
  YF /= T_hat;
  return YF;
}

}  // namespace pr
