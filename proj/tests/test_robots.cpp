#include <random>

#include "doctest.h"
#include "pr/jacobian.hpp"
#include "pr/sim/runner.hpp"
#include "pr/sim/scenario.hpp"

using namespace pr;

TEST_CASE("model dimensions") {
  auto rpr = make_robot("rpr2", {});
  CHECK(rpr->n() == 2);
  CHECK(rpr->m() == 2);
  CHECK(rpr->l() == 2);
  CHECK(rpr->r() == 31);
  CHECK(rpr->k() == 1);
  CHECK(rpr->p() == 21);
  CHECK_FALSE(rpr->redundant());

  auto cdr = make_robot("cdr4", {});
  CHECK(cdr->n() == 3);
  CHECK(cdr->m() == 4);
  CHECK(cdr->l() == 3);
  CHECK(cdr->r() == 16);
  CHECK(cdr->k() == 3);
  CHECK(cdr->p() == 1);
  CHECK(cdr->redundant());

  CHECK_THROWS_AS(make_robot("hexapod", {}), ConfigError);
}

TEST_CASE("rpr2 parameter maps, hand-computed entries") {
  auto model = make_robot("rpr2", {});
  const Vec ph = model->phys();
  // defaults: all link masses 1, offsets 0.5, I 0.1, m_p 2, a 1
  const Vec tc = model->theta_c(ph);
  REQUIRE(tc.size() == 21);
  // leg quartet: (m2, I + m1 c1^2 + m2 c2^2, m2 c2, m1 c1 - m2 c2)
  CHECK(tc(0) == doctest::Approx(1.0));
  CHECK(tc(1) == doctest::Approx(0.6));
  CHECK(tc(2) == doctest::Approx(0.5));
  CHECK(tc(3) == doctest::Approx(0.0));
  CHECK(tc(8) == doctest::Approx(2.0));  // m_p

  const Vec ta = model->theta_a(ph);
  REQUIRE(ta.size() == 31);
  CHECK((ta.head(21) - tc).norm() == 0.0);
  CHECK(ta(29) == doctest::Approx(2.0));  // m_p a
  CHECK(ta(30) == doctest::Approx(1.0));  // a

  CHECK(model->theta_b(ph)(0) == doctest::Approx(1.0));
  const Mat Th = model->Theta(ph);
  CHECK((Th - Mat::Identity(2, 2)).norm() == 0.0);  // a I with a = 1
}

TEST_CASE("cdr4 parameter maps, hand-computed entries") {
  auto model = make_robot("cdr4", {});
  const Vec ph = model->phys();
  const double a = 7.05, b = 3.56, h = 4.26, m = 4.5;
  const Vec ta = model->theta_a(ph);
  REQUIRE(ta.size() == 16);
  CHECK(ta(0) == doctest::Approx(a * b * b).epsilon(1e-14));
  CHECK(ta(1) == doctest::Approx(a * b * b * m).epsilon(1e-14));
  CHECK(ta(6) == doctest::Approx(a * a * b).epsilon(1e-14));
  CHECK(ta(15) == doctest::Approx(a * a * b * b * h * m).epsilon(1e-14));
  CHECK(model->theta_c(ph)(0) == doctest::Approx(m));

  const Mat A = model->Theta(ph);
  CHECK(A(0, 0) == doctest::Approx(b / 2));
  CHECK(A(1, 0) == doctest::Approx(a / 2));
  CHECK(A(2, 3) == doctest::Approx(h));
  CHECK(A(0, 3) == doctest::Approx(-b / 2));
  CHECK(A(1, 3) == doctest::Approx(-a / 2));
}

TEST_CASE("kinematic regressor reconstructs J_new_T for perturbed phys") {
  std::mt19937 gen(2);
  std::uniform_real_distribution<double> u(-0.4, 0.4);
  for (const char* name : {"rpr2", "cdr4"}) {
    auto model = make_robot(name, {});
    const Workspace ws = model->workspace();
    const int n = model->n();
    Vec pt = model->phys();
    for (int it = 0; it < 1000; ++it) {
      Vec X(n);
      for (int i = 0; i < n; ++i)
        X(i) = ws.lo(i) + (0.5 + u(gen)) * (ws.hi(i) - ws.lo(i));
      Vec ph = pt;
      for (int i = 0; i < ph.size(); ++i) ph(i) *= 1.0 + u(gen);
      const KinematicRegressor kr = model->kinematic(X, ph);
      const Mat rec = kr.base_term + kr.Y * model->Theta(ph);
      CHECK((rec - model->j_new_T(X, ph)).norm() < 1e-12);
    }
  }
}

TEST_CASE("perturbation is seeded, bounded, and reproducible") {
  auto model = make_robot("cdr4", {});
  const Vec pt = model->phys();
  const Vec p1 = perturb_params(pt, 0.1, 42);
  const Vec p2 = perturb_params(pt, 0.1, 42);
  const Vec p3 = perturb_params(pt, 0.1, 43);
  CHECK((p1 - p2).norm() == 0.0);
  CHECK((p1 - p3).norm() > 0.0);
  for (int i = 0; i < pt.size(); ++i)
    CHECK(std::abs(p1(i) / pt(i) - 1.0) <= 0.1);
  CHECK((perturb_params(pt, 0.0, 7) - pt).norm() == 0.0);
}

TEST_CASE("projection bounds contain every parameter in the box") {
  // corner enumeration must dominate dense sampling of the +-pct box
  std::mt19937 gen(10);
  std::uniform_real_distribution<double> u(-0.15, 0.15);
  for (const char* name : {"rpr2", "cdr4"}) {
    auto model = make_robot(name, {});
    const AdaptiveSetup setup = make_adaptive_setup(*model, 0.1, 0.15, 5);
    const Vec pt = model->phys();
    const int r = model->r(), k = model->k();
    for (int it = 0; it < 500; ++it) {
      Vec ph = pt;
      for (int i = 0; i < ph.size(); ++i) ph(i) *= 1.0 + u(gen);
      const Vec ta = model->theta_a(ph);
      const Vec tb = model->theta_b(ph);
      for (int i = 0; i < r; ++i) {
        CHECK(ta(i) >= setup.state.lo(i) - 1e-12);
        CHECK(ta(i) <= setup.state.hi(i) + 1e-12);
      }
      for (int i = 0; i < k; ++i) {
        CHECK(tb(i) >= setup.state.lo.tail(k)(i) - 1e-12);
        CHECK(tb(i) <= setup.state.hi.tail(k)(i) + 1e-12);
      }
    }
    // initial estimates start inside and consistent
    CHECK((setup.state.theta_hat_F.array() >= setup.state.lo.array() - 1e-12)
              .all());
    CHECK((setup.state.theta_hat_F.array() <= setup.state.hi.array() + 1e-12)
              .all());
  }
}

TEST_CASE("robot parameter overrides flow through") {
  auto model = make_robot("rpr2", {{"a", 1.4}, {"m_p", 3.0}});
  CHECK(model->theta_b(model->phys())(0) == doctest::Approx(1.4));
  CHECK(model->theta_c(model->phys())(8) == doctest::Approx(3.0));
  Vec X(2);
  X << 0.7, 0.9;
  // second pivot moved to (1.4, 0)
  CHECK(model->lengths(X, model->phys())(1) ==
        doctest::Approx(std::hypot(0.7 - 1.4, 0.9)).epsilon(1e-14));
}
