#include "pr/sim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "pr/robots/cdr4.hpp"
#include "pr/robots/rpr2.hpp"

namespace pr {

void Scenario::validate() const {
  if (dt <= 0.0) throw ConfigError("dt must be positive");
  if (duration < dt) throw ConfigError("duration must be at least dt");
  if (perturbation_pct < 0.0 || perturbation_pct >= 1.0)
    throw ConfigError("perturbation_pct must be in [0, 1)");
  if (controller == ControllerKind::kAdaptive && perturbation_pct > 0.0 &&
      perturbation_pct >= bound_pct)
    throw ConfigError(
        "perturbation_pct must be below bound_pct so initial estimates lie "
        "inside the projection region");
  if (gamma <= 0.0 || kgain <= 0.0 || lambda <= 0.0)
    throw ConfigError("gains must be positive");
  if (trajectory.center.size() == 0) throw ConfigError("trajectory.center unset");
  if (x0.size() != trajectory.center.size())
    throw ConfigError("x0 dimension does not match trajectory");
}

ControllerGains Scenario::gains(int n) const {
  ControllerGains g;
  g.Gamma = gamma * Mat::Identity(n, n);
  g.K = kgain * Mat::Identity(n, n);
  g.lambda = lambda;
  return g;
}

RobotModelPtr make_robot(const std::string& name,
                         const std::map<std::string, double>& params) {
  auto get = [&params](const std::string& key, double dflt) {
    auto it = params.find(key);
    return it == params.end() ? dflt : it->second;
  };
  if (name == "rpr2") {
    Rpr2Params p;
    p.m_11 = get("m_11", p.m_11);
    p.m_12 = get("m_12", p.m_12);
    p.m_21 = get("m_21", p.m_21);
    p.m_22 = get("m_22", p.m_22);
    p.c_11 = get("c_11", p.c_11);
    p.c_12 = get("c_12", p.c_12);
    p.c_21 = get("c_21", p.c_21);
    p.c_22 = get("c_22", p.c_22);
    p.I_x1 = get("I_x1", p.I_x1);
    p.I_x2 = get("I_x2", p.I_x2);
    p.m_p = get("m_p", p.m_p);
    p.a = get("a", p.a);
    p.g = get("g", p.g);
    return std::make_shared<Rpr2Model>(p);
  }
  if (name == "cdr4") {
    Cdr4Params p;
    p.a = get("a", p.a);
    p.b = get("b", p.b);
    p.h = get("h", p.h);
    p.m = get("m", p.m);
    p.g = get("g", p.g);
    return std::make_shared<Cdr4Model>(p);
  }
  throw ConfigError("unknown robot '" + name + "'");
}

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

Vec parse_vec(const std::string& value, int line_no) {
  std::vector<double> vals;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    try {
      std::size_t pos = 0;
      vals.push_back(std::stod(item, &pos));
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("line " + std::to_string(line_no) +
                        ": cannot parse number '" + item + "'");
    }
  }
  Vec v(vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i) v(i) = vals[i];
  return v;
}

double parse_num(const std::string& value, int line_no) {
  const Vec v = parse_vec(value, line_no);
  if (v.size() != 1)
    throw ConfigError("line " + std::to_string(line_no) +
                      ": expected a single number, got '" + value + "'");
  return v(0);
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
  Scenario sc;
  std::string section;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool robot_named = false;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("line " + std::to_string(line_no) +
                          ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line_no) +
                        ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section == "robot") {
      if (key == "name") {
        sc.robot = value;
        robot_named = true;
      } else {
        sc.robot_params[key] = parse_num(value, line_no);
      }
    } else if (section == "gains") {
      if (key == "gamma")
        sc.gamma = parse_num(value, line_no);
      else if (key == "k")
        sc.kgain = parse_num(value, line_no);
      else if (key == "lambda")
        sc.lambda = parse_num(value, line_no);
      else
        throw ConfigError("line " + std::to_string(line_no) +
                          ": unknown gains key '" + key + "'");
    } else if (section == "trajectory") {
      if (key == "kind")
        sc.trajectory.kind = value;
      else if (key == "center")
        sc.trajectory.center = parse_vec(value, line_no);
      else if (key == "radius")
        sc.trajectory.radius = parse_num(value, line_no);
      else if (key == "period")
        sc.trajectory.period = parse_num(value, line_no);
      else if (key == "vertical_rate")
        sc.trajectory.vertical_rate = parse_num(value, line_no);
      else
        throw ConfigError("line " + std::to_string(line_no) +
                          ": unknown trajectory key '" + key + "'");
    } else if (section == "sim") {
      if (key == "controller") {
        if (value == "adaptive")
          sc.controller = ControllerKind::kAdaptive;
        else if (value == "baseline")
          sc.controller = ControllerKind::kBaseline;
        else
          throw ConfigError("line " + std::to_string(line_no) +
                            ": controller must be adaptive or baseline");
      } else if (key == "duration")
        sc.duration = parse_num(value, line_no);
      else if (key == "dt")
        sc.dt = parse_num(value, line_no);
      else if (key == "seed")
        sc.seed = static_cast<unsigned>(parse_num(value, line_no));
      else if (key == "perturbation_pct")
        sc.perturbation_pct = parse_num(value, line_no);
      else if (key == "bound_pct")
        sc.bound_pct = parse_num(value, line_no);
      else if (key == "noise_sigma")
        sc.noise_sigma = parse_num(value, line_no);
      else if (key == "x0")
        sc.x0 = parse_vec(value, line_no);
      else if (key == "v0")
        sc.v0 = parse_vec(value, line_no);
      else
        throw ConfigError("line " + std::to_string(line_no) +
                          ": unknown sim key '" + key + "'");
    } else {
      throw ConfigError("line " + std::to_string(line_no) +
                        ": key outside of a known section");
    }
  }
  if (!robot_named) throw ConfigError("missing [robot] name");
  if (sc.v0.size() == 0 && sc.x0.size() > 0) sc.v0 = Vec::Zero(sc.x0.size());
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open scenario file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_scenario(ss.str());
}

SimMetrics compute_metrics(const SimLog& log, double tail_fraction,
                           double settle_band) {
  if (log.rows.empty()) throw NumericFault("empty simulation log");
  const int n = log.n;
  SimMetrics mt;
  mt.settle_band = settle_band;
  mt.tail_max_abs_error = Vec::Zero(n);
  mt.tail_rms_error = Vec::Zero(n);
  const double t_end = log.rows.back().t;
  const double t_tail = t_end * (1.0 - tail_fraction);
  std::size_t count = 0;
  for (const auto& row : log.rows) {
    if (row.t < t_tail) continue;
    ++count;
    for (int i = 0; i < n; ++i) {
      mt.tail_max_abs_error(i) =
          std::max(mt.tail_max_abs_error(i), std::abs(row.e(i)));
      mt.tail_rms_error(i) += row.e(i) * row.e(i);
    }
  }
  if (count > 0)
    mt.tail_rms_error =
        (mt.tail_rms_error / static_cast<double>(count)).cwiseSqrt();
  mt.settle_time = t_end;
  for (auto it = log.rows.rbegin(); it != log.rows.rend(); ++it) {
    if (it->e.cwiseAbs().maxCoeff() >= settle_band) break;
    mt.settle_time = it->t;
  }
  mt.max_dtau = 0.0;
  for (std::size_t i = 1; i < log.rows.size(); ++i)
    mt.max_dtau = std::max(
        mt.max_dtau,
        (log.rows[i].tau - log.rows[i - 1].tau).cwiseAbs().maxCoeff());
  return mt;
}

}  // namespace pr
