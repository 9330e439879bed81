#include "pr/sim/trajectory.hpp"

#include <cmath>

namespace pr {

TrajRefs desired_trajectory(const TrajectorySpec& spec, double t) {
  const int n = spec.dim();
  TrajRefs refs;
  refs.Xd = spec.center;
  refs.Vd = Vec::Zero(n);
  refs.Ad = Vec::Zero(n);
  if (spec.kind == "hold") return refs;
  if (spec.kind != "circle" && spec.kind != "spiral")
    throw ConfigError("unknown trajectory kind '" + spec.kind + "'");

  const double w = 2.0 * M_PI / spec.period;
  const double R = spec.radius;
  refs.Xd(0) = spec.center(0) - R * std::cos(w * t);
  refs.Xd(1) = spec.center(1) + R * std::sin(w * t);
  refs.Vd(0) = R * w * std::sin(w * t);
  refs.Vd(1) = R * w * std::cos(w * t);
  refs.Ad(0) = R * w * w * std::cos(w * t);
  refs.Ad(1) = -R * w * w * std::sin(w * t);
  if (spec.kind == "spiral") {
    if (n < 3) throw ConfigError("spiral trajectory needs a 3-d center");
    refs.Xd(2) = spec.center(2) + spec.vertical_rate * t;
    refs.Vd(2) = spec.vertical_rate;
  }
  return refs;
}

}  // namespace pr
