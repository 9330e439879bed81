#pragma once

#include <map>
#include <string>
#include <vector>

#include "pr/controller.hpp"
#include "pr/robot_model.hpp"
#include "pr/sim/trajectory.hpp"
#include "pr/types.hpp"

namespace pr {

enum class ControllerKind { kAdaptive, kBaseline };

// One reproducible closed-loop run.
struct Scenario {
  std::string robot = "rpr2";  // rpr2 | cdr4
  std::map<std::string, double> robot_params;  // overrides of defaults
  ControllerKind controller = ControllerKind::kAdaptive;
  double perturbation_pct = 0.0;
  double bound_pct = 0.0;
  double gamma = 1.0;   // Gamma = gamma I
  double kgain = 1.0;   // K = kgain I
  double lambda = 1.0;  // Lambda = lambda I
  TrajectorySpec trajectory;
  Vec x0, v0;
  double duration = 10.0;
  double dt = 1e-3;
  unsigned seed = 0;
  double noise_sigma = 0.0;  // optional seeded position measurement noise

  void validate() const;
  ControllerGains gains(int n) const;
};

// Builds the robot named by the scenario with its parameter overrides.
RobotModelPtr make_robot(const std::string& name,
                         const std::map<std::string, double>& params);

// Parses the key = value / [section] scenario format (see configs/).
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);

struct SimRow {
  double t;
  Vec X, Xd, e, S, tau;
  double V, That;
};

struct SimMetrics {
  Vec tail_max_abs_error;  // per axis over the tail window
  Vec tail_rms_error;      // per axis over the tail window
  double settle_time;      // first t after which max|e_i| stays < band
  double settle_band;
  double max_dtau;         // max |tau_i(t+dt) - tau_i(t)| over the run
};

struct SimLog {
  int n = 0, m = 0;
  std::vector<SimRow> rows;
};

SimMetrics compute_metrics(const SimLog& log, double tail_fraction,
                           double settle_band = 5e-3);

}  // namespace pr
