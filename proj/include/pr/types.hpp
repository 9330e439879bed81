#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace pr {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// End-effector task-space state.
struct TaskState {
  Vec X;     // position, length n
  Vec Xdot;  // velocity, length n
};

// M(X) Xddot + C(X, Xdot) Xdot + G(X) = J^T tau
struct DynamicsEval {
  Mat M;  // n x n inertia
  Mat C;  // n x n Coriolis/centrifugal
  Vec G;  // n gravity forces
};

// Axis-aligned sampling box for valid task-space positions.
struct Workspace {
  Vec lo;
  Vec hi;
  bool contains(const Vec& X, double slack = 0.0) const {
    for (int i = 0; i < X.size(); ++i)
      if (X(i) < lo(i) - slack || X(i) > hi(i) + slack) return false;
    return true;
  }
};

// J^T = J_new_T * diag(L)^{-1}: the length-denominator factorization.
struct JacobianFactorization {
  Mat J_new_T;  // n x m, unscaled direction columns
  Vec L;        // m link/cable lengths (diagonal of L)
};

// J_new_T = base_term + Y * Theta with Theta the unknown kinematic parameters.
struct KinematicRegressor {
  Mat base_term;  // n x m (zero when the decomposition is purely linear)
  Mat Y;          // n x l, state-dependent
  Mat Theta;      // l x m, kinematic parameters
};

// Square case:    R = adj(J_new_T),            T = det(J_new_T)
// Redundant case: R = J_new * adj(J_new_T J_new), T = det(J_new_T J_new)
// Either way R * (stuff) / T is the (pseudo-)inverse action, and
// J_new_T * R = T * I_n holds identically (Cramer).
struct AdjugateSplit {
  Mat R;     // m x n
  double T;  // determinant
};

struct SingularConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DegenerateGeometryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct EstimatedSingularityFault : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NumericFault : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace pr
