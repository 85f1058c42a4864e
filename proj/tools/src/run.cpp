// Copyright 2026 The reachset Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <functional>
#include <map>
#include <ostream>

#include <CLI11.hpp>

#include "reachset/errors.hpp"
#include "reachset_cli/commands.hpp"

namespace reachset::cli {
namespace {

void model_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--preset", cfg.preset, "Bundled model (chloroform)");
  sub->add_option("--gen", cfg.gen_path, "Generator JSON {n, H, R, r_eq}");
  sub->add_option("--rates", cfg.rates_path, "Two-spin rate set JSON");
  sub->add_option("--epsilon", cfg.epsilon, "Scale applied to output polarizations")->capture_default_str();
  sub->add_option("--workers", cfg.workers, "Worker threads (0: hardware; REACHSET_WORKERS overrides)")
      ->capture_default_str();
  sub->add_option("--out", cfg.out, "Output path; stdout when omitted");
  sub->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
}

void ray_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--rays", cfg.rays, "fibonacci:N or a CSV of x,y,z directions")->capture_default_str();
  sub->add_option("--tol", cfg.tol, "Bisection tolerance on the radius")->capture_default_str();
  sub->add_option("--step", cfg.step, "Outward march step")->capture_default_str();
  sub->add_option("--region", cfg.region, "'wedge' keeps 0 <= x3 <= x1 <= x2 only")->capture_default_str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Reachable-set bounds and relaxation-assisted control for Lindblad systems"};
  app.require_subcommand(1);
  app.set_version_flag("--version", REACHSET_VERSION);

  std::map<CLI::App*, std::function<int(const RunConfig&, std::ostream&)>> handlers;
  auto add = [&](const char* name, const char* help, auto fn) {
    CLI::App* sub = app.add_subcommand(name, help);
    model_options(sub, cfg);
    handlers[sub] = fn;
    return sub;
  };

  add("bound", "Purity sphere enclosing every reachable state", cmd_bound);

  auto* stlc = add("stlc", "Trace the STLC boundary along rays", cmd_stlc);
  ray_options(stlc, cfg);
  stlc->add_option("--origin", cfg.origin, "Ray origin: zero or eq")->capture_default_str();

  auto* unitary = add("unitary-bound", "Best transfer to a target by unitaries alone", cmd_unitary);
  unitary->add_option("--target", cfg.target, "pps, bell or a coherence JSON file")->capture_default_str();

  auto* sim = add("simulate", "Iterate a periodic preparation sequence", cmd_simulate);
  sim->add_option("--seq", cfg.seq, "pps or bell")->capture_default_str();
  sim->add_option("--tau", cfg.tau, "Relaxation delay per period (s)")->capture_default_str();
  sim->add_option("--m", cfg.m, "Number of periods")->capture_default_str();
  sim->add_option("--record-every", cfg.record_every, "Record every k-th period")->capture_default_str();

  auto* noe = add("noe", "Steady state under saturation of one spin", cmd_noe);
  noe->add_option("--saturate", cfg.saturate, "C or H")->capture_default_str();
  noe->add_option("--times", cfg.times, "Optional trajectory grid a:b:n (s)");

  auto* rob = add("robustness", "Fixed-point error under pulse miscalibration", cmd_robustness);
  rob->add_option("--grid", cfg.grid, "Relative pulse errors a:b:n on both channels")->capture_default_str();
  rob->add_option("--tau", cfg.tau, "Relaxation delay per period (s)")->capture_default_str();
  rob->add_option("--j", cfg.j_hz, "Scalar coupling in Hz (defaults to the rate set's)");

  auto* fit = add("fit", "Fit one block's rates to measured trajectories", cmd_fit);
  fit->add_option("--block", cfg.block, "population, carbon, proton or zero_double")->capture_default_str();
  fit->add_option("--traj", cfg.traj, "Trajectory CSV (repeatable)")->required();
  fit->add_option("--restarts", cfg.restarts, "Simplex restarts")->capture_default_str();

  auto* fig = add("figure1", "Plot data: sphere, STLC boundary, polytope, trajectories", cmd_figure1);
  ray_options(fig, cfg);
  fig->add_option("--tau", cfg.tau, "PPS relaxation delay (s)")->capture_default_str();
  fig->add_option("--m", cfg.m, "PPS periods")->capture_default_str();
  fig->add_option("--record-every", cfg.record_every, "Record every k-th period")->capture_default_str();
  fig->add_option("--times", cfg.times, "NOE trajectory grid a:b:n (s)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitValidation;
  }

  for (const auto& [sub, fn] : handlers) {
    if (!sub->parsed()) continue;
    cfg.command = sub->get_name();
    try {
      return fn(cfg, out);
    } catch (const ValidationError& e) {
      err << "reachset " << cfg.command << ": invalid input: " << e.what() << "\n";
      return kExitValidation;
    } catch (const NumericalError& e) {
      err << "reachset " << cfg.command << ": numerical failure: " << e.what() << "\n";
      return kExitNumerical;
    } catch (const std::exception& e) {
      err << "reachset " << cfg.command << ": internal error: " << e.what() << "\n";
      return kExitInternal;
    }
  }
  return kExitValidation;
}

}  // namespace reachset::cli
