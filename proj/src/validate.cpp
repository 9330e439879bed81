#include "pr/validate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>

#include "pr/controller.hpp"
#include "pr/dynamics.hpp"
#include "pr/jacobian.hpp"
#include "pr/sim/csv.hpp"
#include "pr/sim/runner.hpp"
#include "pr/sim/scenario.hpp"
#include "pr/sim/trajectory.hpp"

namespace pr {

namespace {

class Acc {
 public:
  Acc(std::string name, double threshold)
      : name_(std::move(name)), threshold_(threshold) {}
  void add(double r) { max_ = std::max(max_, r); }
  PropertyResult result() const {
    return {name_, max_, threshold_, max_ <= threshold_};
  }

 private:
  std::string name_;
  double threshold_;
  double max_ = 0.0;
};

double rel(double num, double den) { return num / std::max(1e-30, den); }

struct Sampler {
  std::mt19937 gen;
  explicit Sampler(unsigned seed) : gen(seed) {}
  double u(double a, double b) {
    return std::uniform_real_distribution<double>(a, b)(gen);
  }
  Vec vec(int n, double a, double b) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v(i) = u(a, b);
    return v;
  }
};

void robot_suites(const std::string& rn, int samples, unsigned seed,
                  std::vector<PropertyResult>* out) {
  RobotModelPtr model = make_robot(rn, {});
  const RobotModel& mdl = *model;
  const int n = mdl.n(), m = mdl.m(), r = mdl.r(), k = mdl.k(), p = mdl.p();
  const int l = mdl.l();
  const Vec pt = mdl.phys();
  const int np = static_cast<int>(pt.size());
  const Workspace ws = mdl.workspace();
  Sampler rng(seed);

  Acc fact(rn + "/jacobian_factorization", 1e-12);
  Acc kin(rn + "/kinematic_regressor", 1e-12);
  Acc cramer(rn + "/cramer_identity", 1e-10);
  Acc pinv(rn + "/pseudo_inverse_equivalence", 1e-9);
  Acc yc(rn + "/Yc_identity", 1e-8);
  Acc ya(rn + "/Ya_identity", 1e-8);
  Acc yb(rn + "/Yb_identity", 1e-8);
  Acc yeta(rn + "/Yeta_identity", 1e-8);
  Acc ymu(rn + "/Ymu_identity", 1e-8);
  Acc yf(rn + "/YF_closed_loop_identity", 1e-8);
  Acc msym(rn + "/M_symmetry", 1e-10);
  Acc mspd(rn + "/M_positive_definite", 0.0);
  Acc skew(rn + "/skew_symmetry_Mdot_2C", 1e-5);
  Acc reduce(rn + "/perfect_knowledge_reduction", 1e-9);
  Acc homog(rn + "/quotient_homogeneity", 1e-9);
  Acc proj(rn + "/projection_inward", 0.0);

  const Mat Gamma = 2.0 * Mat::Identity(n, n);
  const Mat K = 3.0 * Mat::Identity(n, n);

  for (int it = 0; it < samples; ++it) {
    Vec X(n);
    for (int i = 0; i < n; ++i) {
      const double f = rng.u(0.05, 0.95);
      X(i) = ws.lo(i) + f * (ws.hi(i) - ws.lo(i));
    }
    const TaskState s{X, rng.vec(n, -1.0, 1.0)};
    const Vec v_ref = rng.vec(n, -1.5, 1.5);
    const Vec a_ref = rng.vec(n, -2.0, 2.0);
    const Vec KS = rng.vec(n, -3.0, 3.0);
    Vec ph = pt;
    for (int i = 0; i < np; ++i) ph(i) *= 1.0 + rng.u(-0.3, 0.3);

    const Vec len = mdl.lengths(X, pt);  // measured on the true geometry
    const Mat Jn_T = mdl.j_new_T(X, ph);

    // J^T = J_new_T diag(L)^-1 against the geometric Jacobian at ph.
    {
      const Vec len_ph = mdl.lengths(X, ph);
      const Mat JT = mdl.j_new_T(X, ph) * len_ph.cwiseInverse().asDiagonal();
      // every column of J^T is a unit cable/leg direction
      double worst = 0.0;
      for (int j = 0; j < m; ++j)
        worst = std::max(worst, std::abs(JT.col(j).norm() - 1.0));
      fact.add(worst);
    }

    // base + Y Theta reproduces J_new_T.
    {
      const KinematicRegressor kr = mdl.kinematic(X, ph);
      const Mat rec = kr.base_term + kr.Y * mdl.Theta(ph);
      kin.add(rel((rec - Jn_T).norm(), Jn_T.norm()));
    }

    const AdjugateSplit as =
        adjugate_determinant({Jn_T, len}, mdl.redundant());
    if (std::abs(as.T) > 1e-6) {
      cramer.add((Jn_T * as.R - as.T * Mat::Identity(n, n)).norm() /
                 std::abs(as.T) / std::sqrt(static_cast<double>(n)));
      Eigen::CompleteOrthogonalDecomposition<Mat> cod(Jn_T);
      const Mat Jp = cod.pseudoInverse();
      pinv.add(rel((as.R / as.T - Jp).norm(), Jp.norm()));
    }

    const DynamicsEval dyn = mdl.dynamics(s, ph, len);
    const Vec W = dyn.M * a_ref + dyn.C * v_ref + dyn.G;

    const Mat Yc_m = mdl.Yc_matrix(s, v_ref, a_ref, len);
    yc.add(rel((Yc_m * mdl.theta_c(ph) - W).norm(), W.norm()));

    const Vec base = mdl.Ya_base(X, KS);
    const Mat Ya_m = mdl.Ya_matrix(s, v_ref, a_ref, KS, len);
    const Vec lhs = as.R * (W - KS);
    ya.add(rel((base + Ya_m * mdl.theta_a(ph) - lhs).norm(),
               std::max(1.0, lhs.norm())));

    const Mat Yb_row = mdl.Yb_row(X);
    yb.add(rel(std::abs((Yb_row * mdl.theta_b(ph))(0) - as.T),
               std::abs(as.T)));

    // bilinear refactorizations used by the closed-loop regressor
    {
      const KinematicRegressor kr = mdl.kinematic(X, pt);
      Mat Th_til(l, m);
      for (int i = 0; i < Th_til.size(); ++i)
        Th_til(i / m, i % m) = rng.u(-1.0, 1.0);
      const Vec tha_til = rng.vec(r, -1.0, 1.0);
      const Vec lhs_eta = kr.Y * (Th_til * (Ya_m * tha_til));
      const Vec rhs_eta =
          kr.Y * (assemble_Yeta(kr.Y, Ya_m) * stack_eta(Th_til, tha_til));
      yeta.add(rel((lhs_eta - rhs_eta).norm(),
                   std::max(1.0, lhs_eta.norm())));

      const Vec thc_til = rng.vec(p, -1.0, 1.0);
      const Vec thb_til = rng.vec(k, -1.0, 1.0);
      const Vec lhs_mu = (Yb_row * thb_til)(0) * (Yc_m * thc_til);
      const Vec rhs_mu =
          Yc_m * (assemble_Ymu(p, Yb_row) * stack_mu(thc_til, thb_til));
      ymu.add(rel((lhs_mu - rhs_mu).norm(), std::max(1.0, lhs_mu.norm())));
    }

    msym.add((dyn.M - dyn.M.transpose()).norm());
    {
      Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (dyn.M + dyn.M.transpose()));
      mspd.add(-es.eigenvalues().minCoeff());
    }
    skew.add(check_skew_symmetry(mdl, s, 1e-6));

    // quotient form invariant under common scaling of (R, T)
    {
      const double c = rng.u(0.3, 4.0);
      const Vec t1 = len.asDiagonal() * (as.R * (W - KS)) / as.T;
      const Vec t2 = len.asDiagonal() * ((c * as.R) * (W - KS)) / (c * as.T);
      homog.add(rel((t1 - t2).norm(), std::max(1.0, t1.norm())));
    }
  }

  // Closed-loop regressor identity M Sdot + C S + K S = Y_F theta~_F with
  // the consistently stacked parameter error, on perturbed estimates.
  const int yf_samples = std::max(1, samples / 4);
  for (int it = 0; it < yf_samples; ++it) {
    Vec X(n);
    for (int i = 0; i < n; ++i) {
      const double f = rng.u(0.15, 0.85);
      X(i) = ws.lo(i) + f * (ws.hi(i) - ws.lo(i));
    }
    const TaskState s{X, rng.vec(n, -0.5, 0.5)};
    TrajRefs refs{X + rng.vec(n, -0.03, 0.03), rng.vec(n, -0.5, 0.5),
                  rng.vec(n, -1.0, 1.0)};

    Vec ph_n = pt;
    for (int i = 0; i < np; ++i) ph_n(i) *= 1.0 + rng.u(-0.15, 0.15);
    const Mat Theta_hat = mdl.Theta(ph_n), Theta_t = mdl.Theta(pt);
    const Vec thc_hat = mdl.theta_c(ph_n), thc_t = mdl.theta_c(pt);
    const Vec tha_hat = mdl.theta_a(ph_n), tha_t = mdl.theta_a(pt);
    const Vec thb_hat = mdl.theta_b(ph_n), thb_t = mdl.theta_b(pt);

    ControllerGains gains{Gamma, K, 1.0};
    AdaptiveController ctrl(model, gains, Theta_hat, thc_hat);
    const int q = r + m * r * l + p * k + k;
    AdaptiveState a;
    a.theta_hat_F = Vec::Zero(q);
    a.theta_hat_F.head(r) = tha_hat;
    a.theta_hat_F.segment(r, m * r * l) =
        stack_eta(Theta_hat - Theta_t, tha_hat - tha_t);
    a.theta_hat_F.segment(r + m * r * l, p * k) =
        stack_mu(thc_hat - thc_t, thb_hat - thb_t);
    a.theta_hat_F.tail(k) = thb_hat;
    a.lo = a.theta_hat_F.array() - 1.0;
    a.hi = a.theta_hat_F.array() + 1.0;
    a.target = Vec::Zero(q);

    const ControlOutput out = ctrl.control(s, refs, a);
    const SlidingVars sv = sliding_variables(s, refs, Gamma);
    const Vec Xdd = forward_acceleration(mdl, s, out.tau);
    const Vec Sdot = Xdd - sv.a_ref;

    Vec tilde = a.theta_hat_F;
    tilde.head(r) -= tha_t;
    tilde.tail(k) -= thb_t;
    // eta / mu blocks already hold the consistent error stacking

    const Vec len = mdl.lengths(X, pt);
    const DynamicsEval dyn = mdl.dynamics(s, pt, len);
    const Vec lhs = dyn.M * Sdot + dyn.C * sv.S + K * sv.S;
    const Vec rhs = out.Y_F * tilde;
    yf.add(rel((lhs - rhs).norm(), std::max(1.0, rhs.norm())));

    // perfect knowledge: adaptive law with true estimates = baseline at truth
    AdaptiveState at = a;
    at.theta_hat_F.head(r) = tha_t;
    at.theta_hat_F.segment(r, q - r - k).setZero();
    at.theta_hat_F.tail(k) = thb_t;
    AdaptiveController ctrl_t(model, gains, Theta_t, thc_t);
    const Vec tau_ad = ctrl_t.control(s, refs, at).tau;
    const Vec tau_bl = baseline_control(mdl, s, refs, gains, pt);
    reduce.add(rel((tau_ad - tau_bl).norm(), std::max(1.0, tau_bl.norm())));

    // projection: rate never points outside an active bound face
    {
      AdaptiveState ap = a;
      for (int i = 0; i < q; ++i) {
        const double x = rng.u(0.0, 1.0);
        if (x < 0.2)
          ap.theta_hat_F(i) = ap.hi(i);
        else if (x < 0.4)
          ap.theta_hat_F(i) = ap.lo(i);
      }
      const Vec rate = adaptation_step(out.Y_F, out.S, gains.lambda, ap);
      const Vec free = -(out.Y_F.transpose() * out.S) / gains.lambda;
      double worst = 0.0;
      for (int i = 0; i < q; ++i) {
        if (ap.theta_hat_F(i) >= ap.hi(i))
          worst = std::max(worst, rate(i));
        else if (ap.theta_hat_F(i) <= ap.lo(i))
          worst = std::max(worst, -rate(i));
        else
          worst = std::max(worst, std::abs(rate(i) - free(i)));
      }
      proj.add(worst);
    }
  }

  for (const Acc* acc : {&fact, &kin, &cramer, &pinv, &yc, &ya, &yb, &yeta,
                         &ymu, &yf, &msym, &mspd, &skew, &reduce, &homog,
                         &proj})
    out->push_back(acc->result());
}

void module_suites(int samples, unsigned seed,
                   std::vector<PropertyResult>* out) {
  Sampler rng(seed ^ 0x5bd1e995u);

  Acc traj("trajectory/analytic_derivatives", 1e-7);
  const double h = 1e-5;
  for (int it = 0; it < samples; ++it) {
    TrajectorySpec spec;
    spec.kind = (it % 3 == 0) ? "circle" : (it % 3 == 1) ? "spiral" : "hold";
    const int dim = spec.kind == "circle" ? 2 : 3;
    spec.center = rng.vec(dim, -1.0, 1.0);
    spec.radius = rng.u(0.05, 0.3);
    spec.period = rng.u(2.0, 8.0);
    spec.vertical_rate = rng.u(-0.05, 0.05);
    const double t = rng.u(0.1, 20.0);
    const TrajRefs a = desired_trajectory(spec, t - h);
    const TrajRefs b = desired_trajectory(spec, t);
    const TrajRefs c = desired_trajectory(spec, t + h);
    traj.add(((c.Xd - a.Xd) / (2 * h) - b.Vd).norm());
    traj.add(((c.Vd - a.Vd) / (2 * h) - b.Ad).norm());
  }
  out->push_back(traj.result());

  Acc csv("sim/csv_roundtrip", 1e-12);
  {
    SimLog log;
    log.n = 3;
    log.m = 4;
    for (int i = 0; i < 20; ++i) {
      SimRow row;
      row.t = 1e-3 * i;
      row.X = rng.vec(3, -2.0, 2.0);
      row.Xd = rng.vec(3, -2.0, 2.0);
      row.e = row.X - row.Xd;
      row.S = rng.vec(3, -1.0, 1.0);
      row.tau = rng.vec(4, -30.0, 30.0);
      row.V = rng.u(0.0, 10.0);
      row.That = rng.u(1.0, 300.0);
      log.rows.push_back(std::move(row));
    }
    const auto tmp =
        std::filesystem::temp_directory_path() / "parrobot_csv_check.csv";
    write_csv(log, tmp.string());
    const SimLog back = read_csv(tmp.string());
    double worst = back.rows.size() == log.rows.size() &&
                           back.n == log.n && back.m == log.m
                       ? 0.0
                       : 1.0;
    for (std::size_t i = 0; i < log.rows.size() && worst < 1.0; ++i) {
      const SimRow& x = log.rows[i];
      const SimRow& y = back.rows[i];
      worst = std::max({worst, std::abs(x.t - y.t),
                        (x.X - y.X).cwiseAbs().maxCoeff(),
                        (x.tau - y.tau).cwiseAbs().maxCoeff(),
                        std::abs(x.V - y.V), std::abs(x.That - y.That)});
    }
    csv.add(worst);
    std::filesystem::remove(tmp);
  }
  out->push_back(csv.result());

  Acc det("sim/determinism", 0.0);
  {
    Scenario sc;
    sc.robot = "rpr2";
    sc.controller = ControllerKind::kAdaptive;
    sc.perturbation_pct = 0.25;
    sc.bound_pct = 0.6;
    sc.gamma = 2.0;
    sc.kgain = 3.0;
    sc.lambda = 0.2;
    sc.trajectory.kind = "circle";
    sc.trajectory.center = (Vec(2) << 0.5, 0.7).finished();
    sc.trajectory.radius = 0.1;
    sc.trajectory.period = 5.0;
    sc.x0 = (Vec(2) << 0.4, 0.7).finished();
    sc.v0 = Vec::Zero(2);
    sc.duration = 0.3;
    sc.seed = seed + 17;
    const std::string c1 = log_to_csv(run_scenario(sc));
    const std::string c2 = log_to_csv(run_scenario(sc));
    det.add(c1 == c2 ? 0.0 : 1.0);
  }
  out->push_back(det.result());
}

}  // namespace

std::vector<PropertyResult> run_validation(int samples, unsigned seed) {
  std::vector<PropertyResult> out;
  robot_suites("rpr2", samples, seed, &out);
  robot_suites("cdr4", samples, seed + 1, &out);
  module_suites(std::min(samples, 200), seed + 2, &out);
  return out;
}

bool all_pass(const std::vector<PropertyResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const PropertyResult& r) { return r.pass; });
}

}  // namespace pr
