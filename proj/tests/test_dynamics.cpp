#include <memory>
#include <random>

#include "doctest.h"
#include "pr/dynamics.hpp"
#include "pr/robots/cdr4.hpp"
#include "pr/robots/rpr2.hpp"
#include "pr/sim/scenario.hpp"

using namespace pr;

TEST_CASE("rpr2 dynamics frozen oracle values") {
  auto model = make_robot("rpr2", {});
  Vec X(2), Xd(2);
  X << 0.45, 0.8;
  Xd << 0.3, -0.2;
  const TaskState s{X, Xd};
  const DynamicsEval dyn = evaluate_dynamics(*model, s);

  CHECK(dyn.M(0, 0) == doctest::Approx(3.446215198913504).epsilon(1e-13));
  CHECK(dyn.M(0, 1) == doctest::Approx(-0.02245690304478279).epsilon(1e-12));
  CHECK(dyn.M(1, 0) == doctest::Approx(dyn.M(0, 1)).epsilon(1e-14));
  CHECK(dyn.M(1, 1) == doctest::Approx(3.7830339210742334).epsilon(1e-13));

  CHECK(dyn.C(0, 0) == doctest::Approx(0.07005631791658948).epsilon(1e-12));
  CHECK(dyn.C(0, 1) == doctest::Approx(-0.1178412441126226).epsilon(1e-12));
  CHECK(dyn.C(1, 0) == doctest::Approx(0.24891567217707292).epsilon(1e-12));
  CHECK(dyn.C(1, 1) == doctest::Approx(-0.02316437980670382).epsilon(1e-12));

  CHECK(dyn.G(0) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(dyn.G(1) == doctest::Approx(39.24).epsilon(1e-14));

  // symmetric parameters and x = 0.45 ~ mirror of 0.55: G_x vanishes only
  // by the symmetry of the two legs' gravity terms
  Vec vr(2), ar(2);
  vr << 0.1, 0.4;
  ar << -0.5, 0.25;
  const Vec W = dyn.M * ar + dyn.C * vr + dyn.G;
  CHECK(W(0) == doctest::Approx(-1.7688526910713378).epsilon(1e-12));
  CHECK(W(1) == doctest::Approx(40.21261274708598).epsilon(1e-12));
}

TEST_CASE("cdr4 dynamics is the suspended point mass") {
  auto model = make_robot("cdr4", {});
  Vec X(3), Xd(3);
  X << 0.3, -0.5, 1.2;
  Xd << 0.2, 0.1, -0.3;
  const DynamicsEval dyn = evaluate_dynamics(*model, {X, Xd});
  CHECK((dyn.M - 4.5 * Mat::Identity(3, 3)).norm() == 0.0);
  CHECK(dyn.C.norm() == 0.0);
  CHECK(dyn.G(2) == doctest::Approx(4.5 * 9.81).epsilon(1e-15));
}

TEST_CASE("workspace violation and SPD guard") {
  auto model = make_robot("rpr2", {});
  Vec X(2), Xd = Vec::Zero(2);
  X << 0.45, 5.0;  // above the workspace
  CHECK_THROWS_AS(evaluate_dynamics(*model, {X, Xd}), SingularConfigError);
}

TEST_CASE("M stays symmetric positive definite over the workspace") {
  std::mt19937 gen(5);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (const char* name : {"rpr2", "cdr4"}) {
    auto model = make_robot(name, {});
    const Workspace ws = model->workspace();
    const int n = model->n();
    for (int it = 0; it < 1000; ++it) {
      Vec X(n), Xd(n);
      for (int i = 0; i < n; ++i) {
        X(i) = ws.lo(i) + u01(gen) * (ws.hi(i) - ws.lo(i));
        Xd(i) = 2.0 * u01(gen) - 1.0;
      }
      const DynamicsEval dyn = evaluate_dynamics(*model, {X, Xd});
      CHECK((dyn.M - dyn.M.transpose()).norm() <= 1e-10);
      Eigen::SelfAdjointEigenSolver<Mat> es(dyn.M);
      CHECK(es.eigenvalues().minCoeff() > 0.0);
    }
  }
}

TEST_CASE("Mdot - 2C is skew symmetric (finite difference)") {
  std::mt19937 gen(6);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  auto model = make_robot("rpr2", {});
  const Workspace ws = model->workspace();
  for (int it = 0; it < 500; ++it) {
    Vec X(2), Xd(2);
    for (int i = 0; i < 2; ++i) {
      X(i) = ws.lo(i) + (0.1 + 0.8 * u01(gen)) * (ws.hi(i) - ws.lo(i));
      Xd(i) = 2.0 * u01(gen) - 1.0;
    }
    CHECK(check_skew_symmetry(*model, {X, Xd}, 1e-6) <= 1e-5);
  }
}

TEST_CASE("zeroed Coriolis breaks the skew-symmetry property") {
  // negative control: the property test must be able to fail
  Rpr2Params params;
  auto broken = std::make_shared<Rpr2Model>(params);
  broken->set_zero_coriolis(true);
  Vec X(2), Xd(2);
  X << 0.45, 0.8;
  Xd << 0.7, -0.4;
  CHECK(check_skew_symmetry(*broken, {X, Xd}, 1e-6) > 1e-3);
}

TEST_CASE("forward acceleration solves the task-space equation") {
  auto model = make_robot("cdr4", {});
  Vec X(3), Xd(3), tau(4);
  X << 0.1, 0.4, 1.8;
  Xd << 0.05, -0.1, 0.2;
  tau << 12.0, 9.0, 11.0, 10.0;
  const TaskState s{X, Xd};
  const Vec acc = forward_acceleration(*model, s, tau);
  const DynamicsEval dyn = evaluate_dynamics(*model, s);
  const Vec len = model->lengths(X, model->phys());
  const Mat JT = model->j_new_T(X, model->phys()) *
                 len.cwiseInverse().asDiagonal();
  CHECK((dyn.M * acc + dyn.C * Xd + dyn.G - JT * tau).norm() < 1e-10);
}

TEST_CASE("dynamics regressor reproduces M a_ref + C v_ref + G") {
  std::mt19937 gen(9);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (const char* name : {"rpr2", "cdr4"}) {
    auto model = make_robot(name, {});
    const Workspace ws = model->workspace();
    const int n = model->n();
    for (int it = 0; it < 300; ++it) {
      Vec X(n), Xd(n), vr(n), ar(n);
      for (int i = 0; i < n; ++i) {
        X(i) = ws.lo(i) + (0.5 + 0.45 * u(gen)) * (ws.hi(i) - ws.lo(i));
        Xd(i) = u(gen);
        vr(i) = u(gen);
        ar(i) = u(gen);
      }
      const TaskState s{X, Xd};
      const auto [Yc, thc] = dynamics_regressor(*model, s, vr, ar);
      const DynamicsEval dyn = evaluate_dynamics(*model, s);
      const Vec W = dyn.M * ar + dyn.C * vr + dyn.G;
      CHECK((Yc * thc - W).norm() < 1e-8 * std::max(1.0, W.norm()));
    }
  }
}
