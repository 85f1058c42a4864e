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

#include "reachset_cli/commands.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "reachset/control_sequences.hpp"
#include "reachset/diag_projection.hpp"
#include "reachset/errors.hpp"
#include "reachset/over_approx.hpp"
#include "reachset/parallel.hpp"
#include "reachset/serialization.hpp"
#include "reachset/under_approx.hpp"
#include "reachset/unitary_bound.hpp"

#ifndef REACHSET_VERSION
#define REACHSET_VERSION "unknown"
#endif

namespace reachset::cli {
namespace {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

std::vector<double> to_std(const Vec& v) { return {v.data(), v.data() + v.size()}; }

std::string csv_row(const std::vector<double>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) line += ',';
    line += io::format_double(cells[i]);
  }
  return line + '\n';
}

std::string join(const std::vector<std::string>& parts) {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i > 0 ? "," : "") + parts[i];
  return s;
}

std::vector<std::string> coherence_labels(const PauliBasis& basis) {
  return {basis.labels().begin() + 1, basis.labels().end()};
}

void write_sidecar(const RunConfig& cfg, const std::string& path, Clock::time_point start,
                   const json& summary) {
  const json meta = {
      {"tool", "reachset"},
      {"version", REACHSET_VERSION},
      {"command", cfg.command},
      {"config", cfg.to_json()},
      {"workers", resolve_workers(cfg.workers)},
      {"elapsed_s", std::chrono::duration<double>(Clock::now() - start).count()},
      {"summary", summary},
  };
  io::write_file(path, meta.dump(2) + "\n");
}

/// Primary output goes to cfg.out plus sidecar, or to the stream.
void emit(const RunConfig& cfg, std::ostream& out, const std::string& content,
          Clock::time_point start, const json& summary) {
  if (cfg.out.empty()) {
    out << content;
    return;
  }
  io::write_file(cfg.out, content);
  write_sidecar(cfg, cfg.out + ".meta.json", start, summary);
}

void require_two_qubits(const AffineGenerator& gen, const char* what) {
  if (gen.qubits() != 2) throw ValidationError(std::string(what) + " needs a two-qubit model");
}

void require_positive(double x, const char* name) {
  if (!(x > 0.0) || !std::isfinite(x)) throw ValidationError(std::string(name) + " must be positive");
}

/// The plotting region 0 <= x3 <= x1 <= x2.
bool in_plot_wedge(const Vec& x) { return 0.0 <= x(2) && x(2) <= x(0) && x(0) <= x(1); }

bool keep_point(const RunConfig& cfg, const Vec& x) {
  return cfg.region != "wedge" || in_plot_wedge(x);
}

void check_region(const RunConfig& cfg) {
  if (cfg.region != "all" && cfg.region != "wedge") {
    throw ValidationError("--region must be 'all' or 'wedge'");
  }
}

std::vector<Vec> parse_rays(const std::string& spec) {
  const std::string prefix = "fibonacci:";
  if (spec.rfind(prefix, 0) == 0) {
    int count = 0;
    try {
      std::size_t used = 0;
      count = std::stoi(spec.substr(prefix.size()), &used);
      if (used != spec.size() - prefix.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ValidationError("bad ray spec '" + spec + "'");
    }
    if (count < 1) throw ValidationError("ray count must be positive");
    return fibonacci_sphere(count);
  }
  // Otherwise a file with one x,y,z triple per line; a header line is allowed.
  std::istringstream in(io::read_file(spec));
  std::vector<Vec> rays;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    Vec v(3);
    char c1 = 0;
    char c2 = 0;
    std::istringstream row(line);
    if (!(row >> v(0) >> c1 >> v(1) >> c2 >> v(2)) || c1 != ',' || c2 != ',') {
      if (lineno == 1) continue;
      throw ValidationError("bad ray on line " + std::to_string(lineno) + " of " + spec);
    }
    if (v.norm() == 0.0) throw ValidationError("zero ray on line " + std::to_string(lineno));
    rays.push_back(v.normalized());
  }
  if (rays.empty()) throw ValidationError("no rays in " + spec);
  return rays;
}

CoherenceVector parse_target(const PauliBasis& basis, const std::string& spec) {
  if (spec == "pps") return pps_direction(basis);
  if (spec == "bell") return bell_direction(basis);
  auto v = io::coherence_from_json(io::read_file(spec));
  if (v.n != basis.qubits()) throw ValidationError("target has the wrong qubit count");
  return v;
}

/// Columns are the deviation spectra of the unit diagonal coordinates, so a
/// spectrum λ has diagonal coordinates Zᵀλ / 2^n.
Mat spectrum_to_diag(const PauliBasis& basis) {
  const int n = basis.qubits();
  const int d = basis.dim();
  Mat z(d, d - 1);
  for (int k = 0; k < d - 1; ++k) {
    DiagonalVector e{n, Vec::Unit(d - 1, k)};
    z.col(k) = diagonal_deviation(basis, embed(e));
  }
  return z.transpose() / static_cast<double>(d);
}

std::vector<double> parse_times(const std::string& spec) {
  return spec.empty() ? std::vector<double>{} : parse_grid(spec);
}

}  // namespace

json RunConfig::to_json() const {
  return {{"command", command}, {"preset", preset}, {"gen", gen_path}, {"rates", rates_path},
          {"out", out}, {"epsilon", epsilon}, {"workers", workers}, {"seed", seed},
          {"rays", rays}, {"origin", origin}, {"tol", tol}, {"step", step}, {"region", region},
          {"target", target}, {"seq", seq}, {"tau", tau}, {"m", m}, {"record_every", record_every},
          {"saturate", saturate}, {"times", times}, {"grid", grid}, {"j_hz", j_hz},
          {"block", block}, {"traj", traj}, {"restarts", restarts}};
}

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ':')) parts.push_back(part);
  if (parts.size() != 3) throw ValidationError("grid must look like a:b:n, got '" + spec + "'");
  double a = 0.0;
  double b = 0.0;
  int count = 0;
  try {
    std::size_t ua = 0;
    std::size_t ub = 0;
    std::size_t un = 0;
    a = std::stod(parts[0], &ua);
    b = std::stod(parts[1], &ub);
    count = std::stoi(parts[2], &un);
    if (ua != parts[0].size() || ub != parts[1].size() || un != parts[2].size()) {
      throw std::invalid_argument("trailing");
    }
  } catch (const std::exception&) {
    throw ValidationError("bad grid '" + spec + "'");
  }
  if (count < 1 || !std::isfinite(a) || !std::isfinite(b)) throw ValidationError("bad grid '" + spec + "'");
  if (count == 1) return {a};
  std::vector<double> g(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) g[static_cast<std::size_t>(i)] = a + (b - a) * i / (count - 1);
  return g;
}

Model load_model(const RunConfig& cfg) {
  const int sources = !cfg.preset.empty() + !cfg.gen_path.empty() + !cfg.rates_path.empty();
  if (sources != 1) throw ValidationError("give exactly one of --preset, --gen, --rates");
  if (!(cfg.epsilon > 0.0) || !std::isfinite(cfg.epsilon)) throw ValidationError("--epsilon must be positive");
  if (!cfg.preset.empty()) {
    if (cfg.preset != "chloroform") throw ValidationError("unknown preset '" + cfg.preset + "'");
    const auto rates = chloroform::RateSet::defaults();
    return {chloroform::assemble_generator(rates), rates};
  }
  if (!cfg.rates_path.empty()) {
    const auto rates = io::rates_from_json(io::read_file(cfg.rates_path));
    return {chloroform::assemble_generator(rates), rates};
  }
  return {io::generator_from_json(io::read_file(cfg.gen_path)), std::nullopt};
}

int cmd_bound(const RunConfig& cfg, std::ostream& out) {
  const auto start = Clock::now();
  const auto model = load_model(cfg);
  const auto b = max_purity_on_ellipsoid(model.gen);
  const double e = cfg.epsilon;
  const json result = {
      {"n", b.n},
      {"radius_sq", b.radius_sq * e * e},
      {"radius", std::sqrt(b.radius_sq) * e},
      {"argmax", to_std(b.argmax.r * e)},
      {"residual", b.solver_residual},
      {"lagrange_mult", b.lagrange_mult},
  };
  emit(cfg, out, result.dump(2) + "\n", start, {{"radius_sq", b.radius_sq * e * e}});
  return kExitOk;
}

int cmd_stlc(const RunConfig& cfg, std::ostream& out) {
  const auto start = Clock::now();
  check_region(cfg);
  const auto model = load_model(cfg);
  require_two_qubits(model.gen, "stlc");
  const auto rays = parse_rays(cfg.rays);
  const auto basis = PauliBasis::build(2);
  const ControlField field(model.gen, build_permutation_set(basis));
  Vec origin = Vec::Zero(3);
  if (cfg.origin == "eq") {
    origin = restrict_vector(model.gen.equilibrium(), diag_slots(2));
  } else if (cfg.origin != "zero") {
    throw ValidationError("--origin must be 'zero' or 'eq'");
  }
  RayOptions opts;
  opts.step = cfg.step;
  opts.tol = cfg.tol;
  opts.workers = resolve_workers(cfg.workers);
  const auto radii = stlc_boundary_rays(field, origin, rays, opts);
  std::string csv = "ray_x,ray_y,ray_z,boundary_radius\n";
  int kept = 0;
  for (std::size_t i = 0; i < rays.size(); ++i) {
    if (!keep_point(cfg, origin + radii[i] * rays[i])) continue;
    csv += csv_row({rays[i](0), rays[i](1), rays[i](2), radii[i] * cfg.epsilon});
    ++kept;
  }
  emit(cfg, out, csv, start, {{"rays", rays.size()}, {"rows", kept}});
  return kExitOk;
}

int cmd_unitary(const RunConfig& cfg, std::ostream& out) {
  const auto start = Clock::now();
  const auto model = load_model(cfg);
  const auto basis = PauliBasis::build(model.gen.qubits());
  const CoherenceVector eq{basis.qubits(), model.gen.equilibrium()};
  const auto target = parse_target(basis, cfg.target);
  const double kmax = kappa_unitary_max(basis, eq, target);
  const auto poly = polytope_vertices(basis, eq);
  json vertices = json::array();
  for (const auto& v : poly.vertices) vertices.push_back(to_std(v * cfg.epsilon));
  json result = {
      {"n", basis.qubits()},
      {"target", cfg.target},
      {"kappa_max", kmax * cfg.epsilon},
      {"spectrum", to_std(poly.spectrum * cfg.epsilon)},
      {"vertices", vertices},
  };
  // Radius along the target only makes sense for diagonal targets.
  const auto slots = diag_slots(basis.qubits());
  const Vec diag = restrict_vector(target.r, slots);
  if (std::abs(diag.squaredNorm() - target.r.squaredNorm()) <= 1e-12 * target.r.squaredNorm()) {
    result["polytope_radius"] = polytope_radius(poly, diag.normalized()) * cfg.epsilon;
  }
  emit(cfg, out, result.dump(2) + "\n", start, {{"kappa_max", kmax * cfg.epsilon}});
  return kExitOk;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out) {
  const auto start = Clock::now();
  const auto model = load_model(cfg);
  require_two_qubits(model.gen, "simulate");
  if (cfg.m < 1) throw ValidationError("--m must be at least 1");
  if (cfg.record_every < 1) throw ValidationError("--record-every must be at least 1");
  const auto basis = PauliBasis::build(2);
  PeriodicSequence seq;
  CoherenceVector target;
  if (cfg.seq == "pps") {
    seq = pps_sequence(basis, cfg.tau, cfg.m, gates::cyclic_v());
    target = pps_direction(basis);
  } else if (cfg.seq == "bell") {
    seq = bell_sequence(basis, cfg.tau, cfg.m, gates::cyclic_v(), gates::bell_w());
    target = bell_direction(basis);
  } else {
    throw ValidationError("--seq must be 'pps' or 'bell'");
  }
  const auto rec = simulate_sequence(model.gen, seq, {2, model.gen.equilibrium()}, target,
                                     cfg.record_every);
  const auto fp = fixed_point(model.gen, seq, target);
  const double e = cfg.epsilon;
  std::string csv = "period,t,eta,theta," + join(coherence_labels(basis)) + "\n";
  for (const auto& r : rec) {
    std::vector<double> row{static_cast<double>(r.period), r.time, r.eta * e, r.theta};
    for (Eigen::Index k = 0; k < r.state.r.size(); ++k) row.push_back(r.state.r(k) * e);
    csv += csv_row(row);
  }
  emit(cfg, out, csv, start,
       {{"eta_eff", fp.eta_eff * e}, {"theta", fp.theta}, {"spectral_radius", fp.spectral_radius},
        {"x_star", to_std(fp.x_star.r * e)}});
  return kExitOk;
}

int cmd_noe(const RunConfig& cfg, std::ostream& out) {
  const auto start = Clock::now();
  const auto model = load_model(cfg);
  require_two_qubits(model.gen, "noe");
  Spin spin;
  if (cfg.saturate == "C") {
    spin = Spin::carbon;
  } else if (cfg.saturate == "H") {
    spin = Spin::proton;
  } else {
    throw ValidationError("--saturate must be C or H");
  }
  const auto x = noe_steady_state(model.gen, spin);
  json result = {{"saturated", cfg.saturate}, {"labels", diag_labels(2)}, {"x", to_std(x.x * cfg.epsilon)}};
  const auto times = parse_times(cfg.times);
  if (!times.empty()) {
    json traj = json::array();
    const auto states = noe_trajectory(model.gen, spin, times);
    for (std::size_t i = 0; i < times.size(); ++i) {
      traj.push_back({{"t", times[i]}, {"x", to_std(states[i].x * cfg.epsilon)}});
    }
    result["trajectory"] = traj;
  }
  emit(cfg, out, result.dump(2) + "\n", start, {{"x", to_std(x.x * cfg.epsilon)}});
  return kExitOk;
}

int cmd_robustness(const RunConfig& cfg, std::ostream& out) {
  const auto start = Clock::now();
  const auto model = load_model(cfg);
  require_two_qubits(model.gen, "robustness");
  double j = cfg.j_hz;
  if (j == 0.0 && model.rates) j = model.rates->j_hz;
  require_positive(j, "J (--j)");
  const auto grid = parse_grid(cfg.grid);
  const auto cells = robustness_sweep(model.gen, cfg.tau, j, grid, grid, resolve_workers(cfg.workers));
  std::string csv = "delta_c,delta_h,delta,ok\n";
  double worst = 0.0;
  int failed = 0;
  for (const auto& c : cells) {
    csv += csv_row({c.delta_c, c.delta_h, c.delta, c.ok ? 1.0 : 0.0});
    if (c.ok) {
      worst = std::max(worst, c.delta);
    } else {
      ++failed;
    }
  }
  emit(cfg, out, csv, start, {{"max_delta", worst}, {"failed_cells", failed}, {"j_hz", j}});
  return kExitOk;
}

int cmd_fit(const RunConfig& cfg, std::ostream& out) {
  const auto start = Clock::now();
  if (cfg.traj.empty()) throw ValidationError("fit needs at least one --traj file");
  chloroform::RateSet init = chloroform::RateSet::defaults();
  if (!cfg.gen_path.empty()) throw ValidationError("fit starts from a rate set; use --rates or --preset");
  if (!cfg.preset.empty() || !cfg.rates_path.empty()) init = *load_model(cfg).rates;
  const auto block = chloroform::block_from_name(cfg.block);
  std::vector<chloroform::TrajectorySample> data;
  for (const auto& path : cfg.traj) data.push_back(io::trajectory_from_csv(io::read_file(path)));
  chloroform::FitOptions opts;
  opts.restarts = cfg.restarts;
  opts.seed = cfg.seed;
  const auto fit = chloroform::fit_rates(data, block, init, opts);
  emit(cfg, out, io::rates_to_json(fit.rates) + "\n", start,
       {{"rms_residual", fit.rms_residual}, {"objective", fit.objective},
        {"evaluations", fit.evaluations}});
  return kExitOk;
}

int cmd_figure1(const RunConfig& cfg, std::ostream& out) {
  const auto start = Clock::now();
  check_region(cfg);
  if (cfg.out.empty()) throw ValidationError("figure1 needs --out <directory>");
  const auto model = load_model(cfg);
  require_two_qubits(model.gen, "figure1");
  const auto basis = PauliBasis::build(2);
  const double e = cfg.epsilon;
  const std::filesystem::path dir(cfg.out);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ValidationError("cannot create '" + cfg.out + "': " + ec.message());
  const std::string header = join(diag_labels(2));

  // S: the purity sphere.
  const auto bound = max_purity_on_ellipsoid(model.gen);
  io::write_file((dir / "sphere.json").string(),
                 json{{"radius_sq", bound.radius_sq * e * e}, {"radius", std::sqrt(bound.radius_sq) * e}}
                         .dump(2) + "\n");

  // E: boundary points of the STLC set traced from the origin.
  const ControlField field(model.gen, build_permutation_set(basis));
  const auto rays = parse_rays(cfg.rays);
  RayOptions opts;
  opts.step = cfg.step;
  opts.tol = cfg.tol;
  opts.workers = resolve_workers(cfg.workers);
  const auto radii = stlc_boundary_rays(field, Vec::Zero(3), rays, opts);
  std::string csv = header + "\n";
  for (std::size_t i = 0; i < rays.size(); ++i) {
    const Vec x = radii[i] * rays[i];
    if (keep_point(cfg, x)) csv += csv_row(to_std(x * e));
  }
  io::write_file((dir / "stlc_boundary.csv").string(), csv);

  // P: vertices of the unitary polytope in diagonal coordinates.
  const auto poly = polytope_vertices(basis, {2, model.gen.equilibrium()});
  const Mat to_diag = spectrum_to_diag(basis);
  csv = header + "\n";
  for (const auto& v : poly.vertices) {
    const Vec x = to_diag * v;
    if (keep_point(cfg, x)) csv += csv_row(to_std(x * e));
  }
  io::write_file((dir / "polytope_vertices.csv").string(), csv);

  // PPS preparation trajectory from equilibrium.
  const auto seq = pps_sequence(basis, cfg.tau, cfg.m, gates::cyclic_v());
  const auto rec = simulate_sequence(model.gen, seq, {2, model.gen.equilibrium()}, pps_direction(basis),
                                     cfg.record_every);
  csv = "period,t," + header + "\n";
  for (const auto& r : rec) {
    std::vector<double> row{static_cast<double>(r.period), r.time};
    const Vec x = restrict_to_diagonal(r.state).x * e;
    row.insert(row.end(), x.data(), x.data() + x.size());
    csv += csv_row(row);
  }
  io::write_file((dir / "pps_trajectory.csv").string(), csv);

  // NOE build-up under carbon saturation.
  auto times = parse_times(cfg.times);
  if (times.empty()) times = parse_grid("0:300:61");
  const auto noe = noe_trajectory(model.gen, Spin::carbon, times);
  csv = "t," + header + "\n";
  for (std::size_t i = 0; i < times.size(); ++i) {
    std::vector<double> row{times[i]};
    const Vec x = noe[i].x * e;
    row.insert(row.end(), x.data(), x.data() + x.size());
    csv += csv_row(row);
  }
  io::write_file((dir / "noe_trajectory.csv").string(), csv);

  write_sidecar(cfg, (dir / "figure1.meta.json").string(), start,
                {{"radius_sq", bound.radius_sq * e * e}, {"boundary_rays", rays.size()},
                 {"polytope_vertices", poly.vertices.size()}});
  out << "wrote " << cfg.out << "\n";
  return kExitOk;
}

}  // namespace reachset::cli
