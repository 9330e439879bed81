#pragma once

#include <functional>

#include "pr/sim/scenario.hpp"

namespace pr {

// Perturbed nominal parameters and the matching initial adaptive state.
struct AdaptiveSetup {
  Vec phys_nominal;
  Mat Theta_hat;    // frozen kinematic estimate entering Y_F
  Vec theta_hat_c;  // frozen dynamic estimate entering Y_F
  AdaptiveState state;
};

// Each physical scalar is multiplied by (1 + u), u ~ U(-pct, pct) seeded.
Vec perturb_params(const Vec& phys_true, double pct, unsigned seed);

// Initial estimates from the perturbed physicals (partitions mutually
// consistent), bounds from corner enumeration of the +-bound_pct box, and
// the constant diagnostic targets (true theta_a / theta_b, zero eta / mu).
AdaptiveSetup make_adaptive_setup(const RobotModel& model, double pct,
                                  double bound_pct, unsigned seed);

SimLog run_scenario(const Scenario& sc);

// As above, but calls the observer with (t, theta_hat_F) at every recorded
// step of an adaptive run.
using ThetaObserver = std::function<void(double, const Vec&)>;
SimLog run_scenario(const Scenario& sc, const ThetaObserver& observe);

}  // namespace pr
