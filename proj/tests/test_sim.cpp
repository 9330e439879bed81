#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "pr/sim/csv.hpp"
#include "pr/sim/runner.hpp"
#include "pr/sim/scenario.hpp"
#include "pr/sim/trajectory.hpp"

using namespace pr;

namespace {

Scenario small_rpr() {
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
  sc.duration = 1.0;
  sc.dt = 1e-3;
  sc.seed = 11;
  return sc;
}

}  // namespace

TEST_CASE("trajectory oracle values") {
  TrajectorySpec spiral;
  spiral.kind = "spiral";
  spiral.center = (Vec(3) << 0.48, -0.22, 1.5).finished();
  spiral.radius = 0.1;
  spiral.period = 5.0;
  spiral.vertical_rate = 0.0075;

  const TrajRefs at0 = desired_trajectory(spiral, 0.0);
  CHECK(at0.Xd(0) == doctest::Approx(0.38).epsilon(1e-14));
  CHECK(at0.Xd(1) == doctest::Approx(-0.22).epsilon(1e-14));
  CHECK(at0.Xd(2) == doctest::Approx(1.5).epsilon(1e-14));
  for (double t : {0.0, 1.3, 7.7, 40.0})
    CHECK(desired_trajectory(spiral, t).Vd(2) ==
          doctest::Approx(0.0075).epsilon(1e-14));
  // period closure in the plane
  const TrajRefs a = desired_trajectory(spiral, 1.0);
  const TrajRefs b = desired_trajectory(spiral, 6.0);
  CHECK((a.Xd.head(2) - b.Xd.head(2)).norm() < 1e-12);

  TrajectorySpec hold;
  hold.kind = "hold";
  hold.center = (Vec(2) << 0.4, 0.9).finished();
  const TrajRefs h = desired_trajectory(hold, 3.0);
  CHECK((h.Xd - hold.center).norm() == 0.0);
  CHECK(h.Vd.norm() == 0.0);
  CHECK(h.Ad.norm() == 0.0);
}

TEST_CASE("scenario config parsing") {
  const std::string good =
      "[robot]\nname = rpr2\na = 1.2\n"
      "[gains]\ngamma = 2\nk = 3\nlambda = 0.5\n"
      "[trajectory]\nkind = circle\ncenter = 0.5, 0.7\nradius = 0.08\n"
      "period = 4\n"
      "[sim]\ncontroller = adaptive\nduration = 10\ndt = 0.001\nseed = 3\n"
      "perturbation_pct = 0.2\nbound_pct = 0.5\nx0 = 0.45, 0.7\n";
  const Scenario sc = parse_scenario(good);
  CHECK(sc.robot == "rpr2");
  CHECK(sc.robot_params.at("a") == doctest::Approx(1.2));
  CHECK(sc.gamma == doctest::Approx(2.0));
  CHECK(sc.lambda == doctest::Approx(0.5));
  CHECK(sc.trajectory.center(1) == doctest::Approx(0.7));
  CHECK(sc.seed == 3u);
  CHECK(sc.v0.size() == 2);  // defaults to zero
  CHECK_NOTHROW(sc.validate());

  CHECK_THROWS_WITH_AS(parse_scenario("[gains]\nbadkey = 1\n"),
                       doctest::Contains("line 2"), ConfigError);
  CHECK_THROWS_AS(parse_scenario("[sim]\ndt = nope\n"), ConfigError);
  CHECK_THROWS_AS(parse_scenario("x = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_scenario("[robot]\nname = rpr2\n[sim]\nwat = 1\n"),
                  ConfigError);

  Scenario bad = sc;
  bad.perturbation_pct = 0.6;  // above bound_pct
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = sc;
  bad.dt = -1.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("metrics oracles") {
  SimLog log;
  log.n = 2;
  log.m = 2;
  // sinusoidal error with amplitude A on axis 0, zero on axis 1
  const double A = 0.02;
  const int N = 4000;
  for (int i = 0; i <= N; ++i) {
    SimRow row;
    row.t = i * 1e-2;
    row.e = (Vec(2) << A * std::sin(2.0 * M_PI * row.t), 0.0).finished();
    row.X = row.e;
    row.Xd = Vec::Zero(2);
    row.S = Vec::Zero(2);
    row.tau = (Vec(2) << 3.0, 3.0).finished();
    row.V = 0.0;
    row.That = 1.0;
    log.rows.push_back(row);
  }
  const SimMetrics mt = compute_metrics(log, 0.5);
  CHECK(mt.tail_max_abs_error(0) == doctest::Approx(A).epsilon(1e-4));
  CHECK(mt.tail_rms_error(0) == doctest::Approx(A / std::sqrt(2.0)).epsilon(1e-3));
  CHECK(mt.tail_max_abs_error(1) == 0.0);
  CHECK(mt.max_dtau == 0.0);

  SimLog zero = log;
  for (auto& row : zero.rows) row.e.setZero();
  const SimMetrics mz = compute_metrics(zero, 0.5);
  CHECK(mz.tail_max_abs_error.norm() == 0.0);
  CHECK(mz.settle_time == 0.0);
}

TEST_CASE("csv round trip and schema rejection") {
  Scenario sc = small_rpr();
  sc.duration = 0.05;
  const SimLog log = run_scenario(sc);
  const auto tmp = std::filesystem::temp_directory_path() / "pr_roundtrip.csv";
  write_csv(log, tmp.string());
  const SimLog back = read_csv(tmp.string());
  REQUIRE(back.rows.size() == log.rows.size());
  CHECK(back.n == 2);
  CHECK(back.m == 2);
  double worst = 0.0;
  for (std::size_t i = 0; i < log.rows.size(); ++i) {
    worst = std::max(worst,
                     (log.rows[i].X - back.rows[i].X).cwiseAbs().maxCoeff());
    worst = std::max(
        worst, (log.rows[i].tau - back.rows[i].tau).cwiseAbs().maxCoeff());
  }
  CHECK(worst < 1e-12);
  std::filesystem::remove(tmp);

  const auto bad = std::filesystem::temp_directory_path() / "pr_bad.csv";
  std::ofstream(bad.string()) << "a,b,c\n1,2,3\n";
  CHECK_THROWS_AS(read_csv(bad.string()), ConfigError);
  std::ofstream(bad.string()) << "";
  CHECK_THROWS_AS(read_csv(bad.string()), ConfigError);
  std::filesystem::remove(bad);
  CHECK_THROWS_AS(read_csv("/nonexistent/nowhere.csv"), ConfigError);
}

TEST_CASE("runs are deterministic for identical scenarios") {
  const Scenario sc = small_rpr();
  const std::string c1 = log_to_csv(run_scenario(sc));
  const std::string c2 = log_to_csv(run_scenario(sc));
  CHECK(c1 == c2);
  Scenario other = sc;
  other.seed = 12;
  CHECK(log_to_csv(run_scenario(other)) != c1);
}

TEST_CASE("zero perturbation with frozen adaptation matches the baseline") {
  Scenario sc = small_rpr();
  sc.perturbation_pct = 0.0;
  sc.bound_pct = 0.15;
  sc.lambda = 1e9;  // adaptation rate ~ 1/lambda: estimates stay at truth
  sc.duration = 0.5;
  const SimLog la = run_scenario(sc);
  sc.controller = ControllerKind::kBaseline;
  const SimLog lb = run_scenario(sc);
  REQUIRE(la.rows.size() == lb.rows.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < la.rows.size(); ++i)
    worst = std::max(worst,
                     (la.rows[i].X - lb.rows[i].X).cwiseAbs().maxCoeff());
  CHECK(worst < 1e-6);
}

TEST_CASE("perfect model: error contracts and V decreases") {
  Scenario sc = small_rpr();
  sc.perturbation_pct = 0.0;
  sc.bound_pct = 0.15;
  sc.lambda = 1e9;  // frozen estimates: V is the tracking energy alone
  sc.duration = 6.0;
  sc.x0 = (Vec(2) << 0.45, 0.75).finished();  // start off the trajectory
  const SimLog log = run_scenario(sc);
  const double e0 = log.rows.front().e.norm();
  const double e1 = log.rows.back().e.norm();
  CHECK(e1 < 0.05 * e0);
  CHECK(log.rows.back().V < 0.1 * log.rows.front().V);
}

TEST_CASE("desired path must stay inside the workspace") {
  Scenario sc = small_rpr();
  sc.trajectory.center = (Vec(2) << 0.5, 0.25).finished();  // dips below y=0.2
  sc.duration = 5.0;  // cover the full circle
  CHECK_THROWS_AS(run_scenario(sc), SingularConfigError);
}

TEST_CASE("halving dt barely moves the final state (order-4 integrator)") {
  Scenario sc = small_rpr();
  sc.duration = 1.0;
  const SimLog a = run_scenario(sc);
  sc.dt = 5e-4;
  const SimLog b = run_scenario(sc);
  CHECK((a.rows.back().e - b.rows.back().e).cwiseAbs().maxCoeff() < 1e-8);
}
