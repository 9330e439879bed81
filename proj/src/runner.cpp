#include "pr/sim/runner.hpp"

#include <cmath>
#include <random>

namespace pr {

Vec perturb_params(const Vec& phys_true, double pct, unsigned seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> u(-pct, pct);
  Vec out = phys_true;
  for (int i = 0; i < out.size(); ++i) out(i) *= 1.0 + u(gen);
  return out;
}

namespace {

// Elementwise min/max of f over the corners of the box
// phys_true * (1 +- bound): exact for maps monotone in each coordinate,
// which every theta_* monomial here is (positive parameters, each variable
// confined to a single monomial per term).
void corner_range(const Vec& phys_true, double bound,
                  const std::function<Vec(const Vec&)>& f, Vec* lo, Vec* hi) {
  const int np = static_cast<int>(phys_true.size());
  const long corners = 1L << np;
  for (long mask = 0; mask < corners; ++mask) {
    Vec ph = phys_true;
    for (int j = 0; j < np; ++j)
      ph(j) *= (mask >> j) & 1 ? 1.0 + bound : 1.0 - bound;
    const Vec v = f(ph);
    if (mask == 0) {
      *lo = v;
      *hi = v;
    } else {
      *lo = lo->cwiseMin(v);
      *hi = hi->cwiseMax(v);
    }
  }
}

}  // namespace

AdaptiveSetup make_adaptive_setup(const RobotModel& model, double pct,
                                  double bound_pct, unsigned seed) {
  const Vec pt = model.phys();
  const int r = model.r(), k = model.k(), p = model.p();
  const int l = model.l(), m = model.m();
  const int q = r + m * r * l + p * k + k;

  AdaptiveSetup out;
  out.phys_nominal = perturb_params(pt, pct, seed);
  out.Theta_hat = model.Theta(out.phys_nominal);
  out.theta_hat_c = model.theta_c(out.phys_nominal);

  const Vec tha_t = model.theta_a(pt), tha_n = model.theta_a(out.phys_nominal);
  const Vec thb_t = model.theta_b(pt), thb_n = model.theta_b(out.phys_nominal);
  const Vec thc_t = model.theta_c(pt), thc_n = model.theta_c(out.phys_nominal);
  const Mat Th_t = model.Theta(pt);

  Vec lo_a, hi_a, lo_b, hi_b, lo_c, hi_c, lo_T, hi_T;
  corner_range(pt, bound_pct, [&](const Vec& ph) { return model.theta_a(ph); },
               &lo_a, &hi_a);
  corner_range(pt, bound_pct, [&](const Vec& ph) { return model.theta_b(ph); },
               &lo_b, &hi_b);
  corner_range(pt, bound_pct, [&](const Vec& ph) { return model.theta_c(ph); },
               &lo_c, &hi_c);
  corner_range(
      pt, bound_pct,
      [&](const Vec& ph) {
        const Mat Th = model.Theta(ph);
        return Vec(Eigen::Map<const Vec>(Th.data(), Th.size()));
      },
      &lo_T, &hi_T);

  const Vec wa = (hi_a - tha_t).cwiseMax(tha_t - lo_a);
  const Vec wb = (hi_b - thb_t).cwiseMax(thb_t - lo_b);
  const Vec wc = (hi_c - thc_t).cwiseMax(thc_t - lo_c);
  Mat wTh(l, m);
  {
    Eigen::Map<const Mat> loT(lo_T.data(), l, m), hiT(hi_T.data(), l, m);
    wTh = (hiT - Th_t).cwiseMax(Th_t - loT);
  }

  AdaptiveState& st = out.state;
  st.theta_hat_F = Vec::Zero(q);
  st.lo = Vec::Zero(q);
  st.hi = Vec::Zero(q);
  st.target = Vec::Zero(q);

  st.theta_hat_F.head(r) = tha_n;
  st.lo.head(r) = lo_a;
  st.hi.head(r) = hi_a;
  st.target.head(r) = tha_t;

  const Mat Th_til = out.Theta_hat - Th_t;
  const Vec tha_til = tha_n - tha_t;
  st.theta_hat_F.segment(r, m * r * l) = stack_eta(Th_til, tha_til);
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < m; ++j) {
      const int off = r + (i * m + j) * r;
      st.lo.segment(off, r) = -wTh(i, j) * wa;
      st.hi.segment(off, r) = wTh(i, j) * wa;
    }

  const int off_mu = r + m * r * l;
  st.theta_hat_F.segment(off_mu, p * k) = stack_mu(thc_n - thc_t, thb_n - thb_t);
  st.lo.segment(off_mu, p * k) = -stack_mu(wc, wb);
  st.hi.segment(off_mu, p * k) = stack_mu(wc, wb);

  st.theta_hat_F.tail(k) = thb_n;
  st.lo.tail(k) = lo_b;
  st.hi.tail(k) = hi_b;
  st.target.tail(k) = thb_t;

  return out;
}

namespace {

struct Deriv {
  Vec Xdd;
  Vec rate;  // theta_hat_F rate (empty for baseline)
};

}  // namespace

SimLog run_scenario(const Scenario& sc) {
  return run_scenario(sc, nullptr);
}

SimLog run_scenario(const Scenario& sc, const ThetaObserver& observe) {
  sc.validate();
  RobotModelPtr model = make_robot(sc.robot, sc.robot_params);
  const RobotModel& mdl = *model;
  const int n = mdl.n(), m = mdl.m();
  if (sc.x0.size() != n)
    throw ConfigError("x0 dimension does not match robot dof");
  if (sc.trajectory.dim() != n)
    throw ConfigError("trajectory dimension does not match robot dof");
  const ControllerGains gains = sc.gains(n);
  const Vec phys_true = mdl.phys();
  const Workspace ws = mdl.workspace();

  // Pre-sample the desired path: inside workspace, and T bounded away from
  // zero (with the same sign as the true determinant) over the whole
  // projection box of theta_b.
  const bool adaptive = sc.controller == ControllerKind::kAdaptive;
  AdaptiveSetup setup;
  if (adaptive)
    setup = make_adaptive_setup(mdl, sc.perturbation_pct, sc.bound_pct, sc.seed);
  const Vec thb_true = mdl.theta_b(phys_true);
  const int k = mdl.k();
  for (int j = 0; j < 1000; ++j) {
    const double t = sc.duration * j / 999.0;
    const TrajRefs refs = desired_trajectory(sc.trajectory, t);
    if (!ws.contains(refs.Xd))
      throw SingularConfigError("desired path leaves the workspace at t=" +
                                std::to_string(t));
    const Mat Yb = mdl.Yb_row(refs.Xd);
    const double T_true = (Yb * thb_true)(0);
    if (std::abs(T_true) <= kEpsT)
      throw SingularConfigError("desired path crosses a singularity (T=0)");
    if (adaptive) {
      const double T_hat0 = (Yb * Vec(setup.state.theta_hat_F.tail(k)))(0);
      if (T_hat0 * T_true <= kEpsT * std::abs(T_true))
        throw SingularConfigError(
            "initial theta_b estimate is singular along the desired path");
    }
  }

  AdaptiveController ctrl(model, gains, setup.Theta_hat, setup.theta_hat_c);
  const Vec phys_nom = adaptive
                           ? setup.phys_nominal
                           : perturb_params(phys_true, sc.perturbation_pct,
                                            sc.seed);

  std::mt19937 noise_gen(sc.seed + 1u);
  std::normal_distribution<double> gauss(0.0, 1.0);

  const int steps = static_cast<int>(std::llround(sc.duration / sc.dt));
  SimLog log;
  log.n = n;
  log.m = m;
  log.rows.reserve(steps + 1);

  Vec X = sc.x0, Xd = sc.v0;
  AdaptiveState astate = setup.state;

  auto plant_acc = [&](const Vec& Xp, const Vec& Xdp, const Vec& tau) -> Vec {
    const Vec len = mdl.lengths(Xp, phys_true);
    const DynamicsEval dyn = mdl.dynamics({Xp, Xdp}, phys_true, len);
    const Mat JT = mdl.j_new_T(Xp, phys_true) * len.cwiseInverse().asDiagonal();
    return dyn.M.ldlt().solve(JT * tau - dyn.C * Xdp - dyn.G);
  };

  // One controller+plant evaluation; optionally records a log row at time t.
  auto eval = [&](double t, const Vec& Xs, const Vec& Xds, const Vec& th,
                  const Vec& Xn_off, bool record) -> Deriv {
    const TrajRefs refs = desired_trajectory(sc.trajectory, t);
    TaskState s{Xs + Xn_off, Xds};
    Deriv d;
    Vec tau;
    double V = 0.0, That = 0.0;
    Vec S;
    if (adaptive) {
      AdaptiveState a = astate;  // bounds/targets; current estimates:
      a.theta_hat_F = th;
      const ControlOutput out = ctrl.control(s, refs, a);
      tau = out.tau;
      S = out.S;
      V = out.V;
      That = out.T_hat;
      d.rate = adaptation_step(out.Y_F, out.S, gains.lambda, a);
    } else {
      tau = baseline_control(mdl, s, refs, gains, phys_nom);
      const SlidingVars sv = sliding_variables(s, refs, gains.Gamma);
      S = sv.S;
      const Vec len = mdl.lengths(s.X, phys_true);
      const DynamicsEval dyn = mdl.dynamics(s, phys_true, len);
      V = 0.5 * S.dot(dyn.M * S);
      JacobianFactorization jf{mdl.j_new_T(s.X, phys_nom), len};
      That = adjugate_determinant(jf, mdl.redundant()).T;
    }
    if (!tau.allFinite()) throw NumericFault("non-finite control signal");
    d.Xdd = plant_acc(Xs, Xds, tau);
    if (record) {
      SimRow row;
      row.t = t;
      row.X = Xs;
      row.Xd = refs.Xd;
      row.e = Xs - refs.Xd;
      row.S = S;
      row.tau = tau;
      row.V = V;
      row.That = That;
      log.rows.push_back(std::move(row));
    }
    return d;
  };

  const double dt = sc.dt;
  for (int step = 0; step <= steps; ++step) {
    const double t = step * dt;
    Vec noise = Vec::Zero(n);
    if (sc.noise_sigma > 0.0)
      for (int i = 0; i < n; ++i) noise(i) = sc.noise_sigma * gauss(noise_gen);

    const Vec& th = astate.theta_hat_F;
    if (observe && adaptive) observe(t, th);
    const Deriv k1 = eval(t, X, Xd, th, noise, /*record=*/true);
    if (step == steps) break;

    if (!ws.contains(X, /*slack=*/0.5))
      throw NumericFault("state left the workspace at t=" + std::to_string(t));

    auto th_at = [&](const Vec& rate, double h) -> Vec {
      return adaptive ? Vec(th + h * rate) : th;
    };
    const Deriv k2 = eval(t + dt / 2, X + dt / 2 * Xd, Xd + dt / 2 * k1.Xdd,
                          th_at(k1.rate, dt / 2), noise, false);
    const Deriv k3 = eval(t + dt / 2, X + dt / 2 * (Xd + dt / 2 * k1.Xdd),
                          Xd + dt / 2 * k2.Xdd, th_at(k2.rate, dt / 2), noise,
                          false);
    const Deriv k4 = eval(t + dt, X + dt * (Xd + dt / 2 * k2.Xdd),
                          Xd + dt * k3.Xdd, th_at(k3.rate, dt), noise, false);

    // Classical RK4 on the augmented first-order system
    // (X, Xd, theta): Xdot stages are the stage velocities.
    const Vec v1 = Xd;
    const Vec v2 = Xd + dt / 2 * k1.Xdd;
    const Vec v3 = Xd + dt / 2 * k2.Xdd;
    const Vec v4 = Xd + dt * k3.Xdd;
    X += dt / 6.0 * (v1 + 2.0 * v2 + 2.0 * v3 + v4);
    Xd += dt / 6.0 * (k1.Xdd + 2.0 * k2.Xdd + 2.0 * k3.Xdd + k4.Xdd);
    if (adaptive) {
      astate.theta_hat_F +=
          dt / 6.0 * (k1.rate + 2.0 * k2.rate + 2.0 * k3.rate + k4.rate);
      // Post-integration clamp: remove integrator overshoot past the bounds.
      astate.theta_hat_F =
          astate.theta_hat_F.cwiseMax(astate.lo).cwiseMin(astate.hi);
    }
    if (!X.allFinite() || !Xd.allFinite())
      throw NumericFault("non-finite state at t=" + std::to_string(t));
  }
  return log;
}

}  // namespace pr
