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

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "reachset/bloch_dynamics.hpp"
#include "reachset/chloroform_model.hpp"

namespace reachset::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitInternal = 1;

/// Everything a command needs, filled from the command line. Numeric options
/// are echoed into the metadata sidecar.
struct RunConfig {
  std::string command;
  std::string preset;
  std::string gen_path;
  std::string rates_path;
  std::string out;
  double epsilon = 1.0;
  int workers = 0;
  unsigned seed = 7;

  // bound / stlc
  std::string rays = "fibonacci:200";
  std::string origin = "zero";
  double tol = 1e-3;
  double step = 0.05;
  std::string region = "all";

  // unitary-bound / simulate
  std::string target = "pps";
  std::string seq = "pps";
  double tau = 1.5;
  int m = 500;
  int record_every = 1;

  // noe
  std::string saturate = "C";
  std::string times;

  // robustness
  std::string grid = "-0.05:0.05:11";
  double j_hz = 0.0;

  // fit
  std::string block = "population";
  std::vector<std::string> traj;
  int restarts = 6;

  [[nodiscard]] nlohmann::json to_json() const;
};

/// Generator and, when known, the rate set it came from.
struct Model {
  AffineGenerator gen;
  std::optional<chloroform::RateSet> rates;
};

/// Resolves --preset, --gen or --rates (exactly one). Validates the
/// generator invariants on the way in.
Model load_model(const RunConfig& cfg);

/// Each command writes its primary output to cfg.out (or `out` when no path
/// is given) and returns a process exit code.
int cmd_bound(const RunConfig& cfg, std::ostream& out);
int cmd_stlc(const RunConfig& cfg, std::ostream& out);
int cmd_unitary(const RunConfig& cfg, std::ostream& out);
int cmd_simulate(const RunConfig& cfg, std::ostream& out);
int cmd_noe(const RunConfig& cfg, std::ostream& out);
int cmd_robustness(const RunConfig& cfg, std::ostream& out);
int cmd_fit(const RunConfig& cfg, std::ostream& out);
/// Writes the plot data set into the directory cfg.out.
int cmd_figure1(const RunConfig& cfg, std::ostream& out);

/// "a:b:n" -> n evenly spaced values from a to b inclusive.
std::vector<double> parse_grid(const std::string& spec);

/// Full command-line entry point; maps errors to exit codes and writes
/// diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace reachset::cli
