#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pr/sim/csv.hpp"
#include "pr/sim/runner.hpp"
#include "pr/sim/scenario.hpp"
#include "pr/plot/svg.hpp"
#include "pr/validate.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

std::string stem_of(const std::string& path) {
  return fs::path(path).stem().string();
}

std::vector<double> times(const pr::SimLog& log) {
  std::vector<double> t;
  t.reserve(log.rows.size());
  for (const auto& row : log.rows) t.push_back(row.t);
  return t;
}

std::vector<double> column(const pr::SimLog& log,
                           const std::function<double(const pr::SimRow&)>& f) {
  std::vector<double> v;
  v.reserve(log.rows.size());
  for (const auto& row : log.rows) v.push_back(f(row));
  return v;
}

ordered_json metrics_json(const pr::SimMetrics& mt, const std::string& config,
                          const std::string& controller, unsigned seed) {
  ordered_json j;
  j["config"] = config;
  j["controller"] = controller;
  j["seed"] = seed;
  j["tail_fraction"] = 0.5;
  j["tail_max_abs_error"] = std::vector<double>(
      mt.tail_max_abs_error.data(),
      mt.tail_max_abs_error.data() + mt.tail_max_abs_error.size());
  j["tail_rms_error"] = std::vector<double>(
      mt.tail_rms_error.data(),
      mt.tail_rms_error.data() + mt.tail_rms_error.size());
  j["settle_time"] = mt.settle_time;
  j["settle_band"] = mt.settle_band;
  j["max_dtau"] = mt.max_dtau;
  return j;
}

void print_tail(const std::string& label, const pr::SimMetrics& mt) {
  std::printf("%s tail max |error| per axis [m]:", label.c_str());
  for (int i = 0; i < mt.tail_max_abs_error.size(); ++i)
    std::printf(" %.6g", mt.tail_max_abs_error(i));
  std::printf("\n");
}

void plot_log(const pr::SimLog& log, const fs::path& dir,
              const std::string& stem) {
  const auto t = times(log);
  {
    std::vector<pr::Series> s;
    s.push_back({"desired", column(log, [](auto& r) { return r.Xd(0); }),
                 column(log, [](auto& r) { return r.Xd(1); })});
    s.push_back({"actual", column(log, [](auto& r) { return r.X(0); }),
                 column(log, [](auto& r) { return r.X(1); })});
    pr::write_svg_chart((dir / (stem + "_path_xy.svg")).string(),
                        "End-effector path (x-y)", "x [m]", "y [m]", s);
  }
  if (log.n >= 3) {
    std::vector<pr::Series> s;
    s.push_back({"desired", column(log, [](auto& r) { return r.Xd(0); }),
                 column(log, [](auto& r) { return r.Xd(2); })});
    s.push_back({"actual", column(log, [](auto& r) { return r.X(0); }),
                 column(log, [](auto& r) { return r.X(2); })});
    pr::write_svg_chart((dir / (stem + "_path_xz.svg")).string(),
                        "End-effector path (x-z)", "x [m]", "z [m]", s);
  }
  {
    std::vector<pr::Series> s;
    for (int i = 0; i < log.n; ++i)
      s.push_back({"e" + std::to_string(i + 1), t,
                   column(log, [i](auto& r) { return r.e(i); })});
    pr::write_svg_chart((dir / (stem + "_errors.svg")).string(),
                        "Tracking error", "t [s]", "error [m]", s);
  }
  {
    std::vector<pr::Series> s;
    for (int i = 0; i < log.m; ++i)
      s.push_back({"tau" + std::to_string(i + 1), t,
                   column(log, [i](auto& r) { return r.tau(i); })});
    pr::write_svg_chart((dir / (stem + "_tau.svg")).string(), "Control signal",
                        "t [s]", "tau [N]", s);
  }
  {
    std::vector<pr::Series> s;
    s.push_back({"V", t, column(log, [](auto& r) { return r.V; })});
    pr::write_svg_chart((dir / (stem + "_V.svg")).string(),
                        "Lyapunov function", "t [s]", "V", s);
  }
}

int cmd_run(const std::string& config, const std::string& out_dir, int seed) {
  pr::Scenario sc = pr::load_scenario(config);
  if (seed >= 0) sc.seed = static_cast<unsigned>(seed);
  const pr::SimLog log = pr::run_scenario(sc);
  const pr::SimMetrics mt = pr::compute_metrics(log, 0.5);

  const fs::path dir(out_dir);
  fs::create_directories(dir);
  const std::string stem = stem_of(config);
  pr::write_csv(log, (dir / (stem + ".csv")).string());
  const std::string ctrl_name =
      sc.controller == pr::ControllerKind::kAdaptive ? "adaptive" : "baseline";
  std::ofstream mf(dir / (stem + "_metrics.json"));
  mf << metrics_json(mt, config, ctrl_name, sc.seed).dump(2) << "\n";
  print_tail(ctrl_name, mt);
  std::printf("wrote %s\n", (dir / (stem + ".csv")).string().c_str());
  return 0;
}

int cmd_compare(const std::string& config, const std::string& out_dir) {
  pr::Scenario sc = pr::load_scenario(config);
  const fs::path dir(out_dir);
  fs::create_directories(dir);
  const std::string stem = stem_of(config);

  sc.controller = pr::ControllerKind::kAdaptive;
  const pr::SimLog la = pr::run_scenario(sc);
  sc.controller = pr::ControllerKind::kBaseline;
  const pr::SimLog lb = pr::run_scenario(sc);

  pr::write_csv(la, (dir / (stem + "_adaptive.csv")).string());
  pr::write_csv(lb, (dir / (stem + "_baseline.csv")).string());

  const pr::SimMetrics ma = pr::compute_metrics(la, 0.5);
  const pr::SimMetrics mb = pr::compute_metrics(lb, 0.5);
  print_tail("adaptive", ma);
  print_tail("baseline", mb);

  ordered_json j;
  j["adaptive"] = metrics_json(ma, config, "adaptive", sc.seed);
  j["baseline"] = metrics_json(mb, config, "baseline", sc.seed);
  std::ofstream mf(dir / (stem + "_metrics.json"));
  mf << j.dump(2) << "\n";

  std::vector<pr::Series> s;
  const auto t = times(la);
  for (int i = 0; i < la.n; ++i)
    s.push_back({"adaptive e" + std::to_string(i + 1), t,
                 column(la, [i](auto& r) { return r.e(i); })});
  for (int i = 0; i < lb.n; ++i)
    s.push_back({"baseline e" + std::to_string(i + 1), times(lb),
                 column(lb, [i](auto& r) { return r.e(i); })});
  pr::write_svg_chart((dir / (stem + "_compare_errors.svg")).string(),
                      "Tracking error: adaptive vs baseline", "t [s]",
                      "error [m]", s);
  return 0;
}

int cmd_validate(int samples, unsigned seed) {
  const auto results = pr::run_validation(samples, seed);
  std::size_t width = 0;
  for (const auto& r : results) width = std::max(width, r.name.size());
  bool ok = true;
  for (const auto& r : results) {
    std::printf("%-*s  max residual %12.5e  threshold %9.1e  %s\n",
                static_cast<int>(width), r.name.c_str(), r.max_residual,
                r.threshold, r.pass ? "pass" : "FAIL");
    ok = ok && r.pass;
  }
  std::printf("%s\n", ok ? "all properties passed" : "PROPERTY FAILURES");
  return ok ? 0 : 1;
}

int cmd_plot(const std::string& csv, const std::string& out_dir) {
  const pr::SimLog log = pr::read_csv(csv);
  if (log.rows.empty())
    throw pr::ConfigError("'" + csv + "' contains no data rows");
  const fs::path dir(out_dir);
  fs::create_directories(dir);
  plot_log(log, dir, stem_of(csv));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"parallel-robot adaptive control simulator"};
  app.require_subcommand(1);

  std::string config, out_dir = "out", csv;
  int seed_override = -1;
  int samples = 1000;
  unsigned vseed = 1;

  auto* run = app.add_subcommand("run", "simulate one scenario config");
  run->add_option("config", config, "scenario config file")->required();
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--seed", seed_override, "override the scenario seed");

  auto* cmp = app.add_subcommand(
      "compare", "run adaptive and baseline on one scenario");
  cmp->add_option("config", config, "scenario config file")->required();
  cmp->add_option("--out", out_dir, "output directory");

  auto* val = app.add_subcommand("validate", "run the property suites");
  val->add_option("--samples", samples, "samples per property")
      ->check(CLI::PositiveNumber);
  val->add_option("--seed", vseed, "sampling seed");

  auto* plt = app.add_subcommand("plot", "render SVG charts from a run CSV");
  plt->add_option("csv", csv, "simulation CSV")->required();
  plt->add_option("--out", out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(run)) return cmd_run(config, out_dir, seed_override);
    if (app.got_subcommand(cmp)) return cmd_compare(config, out_dir);
    if (app.got_subcommand(val)) return cmd_validate(samples, vseed);
    if (app.got_subcommand(plt)) return cmd_plot(csv, out_dir);
  } catch (const pr::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "fault: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
