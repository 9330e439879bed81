#pragma once

#include <string>

#include "pr/controller.hpp"
#include "pr/types.hpp"

namespace pr {

// C^2 desired trajectories built from sinusoids and affine terms.
//   circle: Xd = center + radius (-cos wt, sin wt),               n = 2
//   spiral: circle in x/y, z = center_z + vertical_rate t,        n = 3
//   hold:   Xd = center, Vd = Ad = 0
struct TrajectorySpec {
  std::string kind = "circle";
  Vec center;
  double radius = 0.1;
  double period = 5.0;
  double vertical_rate = 0.0;

  int dim() const { return static_cast<int>(center.size()); }
};

TrajRefs desired_trajectory(const TrajectorySpec& spec, double t);

}  // namespace pr
