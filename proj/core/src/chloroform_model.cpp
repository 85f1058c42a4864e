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

#include "reachset/chloroform_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include "reachset/diag_projection.hpp"
#include "reachset/errors.hpp"

namespace reachset::chloroform {
namespace {

const PauliBasis& two_qubit_basis() {
  static const PauliBasis basis = PauliBasis::build(2);
  return basis;
}

int slot(const std::string& label) { return two_qubit_basis().coherence_index(label); }

std::vector<SecularBlock> make_blocks() {
  std::vector<SecularBlock> blocks = {
      {Block::population, "population", {"ZI", "IZ", "ZZ"}, {}, {1, 2, 3, 4, 5, 6}},
      {Block::carbon_coherence, "carbon", {"XI", "YI", "XZ", "YZ"}, {}, {7, 8, 9}},
      {Block::proton_coherence, "proton", {"IX", "IY", "ZX", "ZY"}, {}, {10, 11, 12}},
      {Block::zero_double, "zero_double", {"XY", "YX", "XX", "YY"}, {}, {13, 14}},
  };
  for (auto& b : blocks) {
    for (const auto& l : b.labels) b.slots.push_back(slot(l));
  }
  return blocks;
}

// One-quantum block ordered (P_I, Q_I, P_Z, Q_Z) with auto rates a, b and
// cross rate c.
void fill_one_quantum(Mat& r, const std::vector<int>& s, double a, double b, double c) {
  r(s[0], s[0]) = a;
  r(s[1], s[1]) = a;
  r(s[2], s[2]) = b;
  r(s[3], s[3]) = b;
  r(s[0], s[2]) = r(s[2], s[0]) = c;
  r(s[1], s[3]) = r(s[3], s[1]) = c;
}

void fill_one_quantum_coupling(Mat& h, const std::vector<int>& s, double pj) {
  h(s[0], s[3]) = -pj;
  h(s[1], s[2]) = pj;
  h(s[2], s[1]) = -pj;
  h(s[3], s[0]) = pj;
}

void check_rates(const RateSet& rates) {
  for (double x : rates.rates) {
    if (!std::isfinite(x)) throw ValidationError("rates must be finite");
  }
  for (int k : {1, 2, 3, 7, 8, 10, 11, 13}) {
    if (!(rates.r(k) > 0.0)) {
      throw ValidationError("auto-relaxation rate r" + std::to_string(k) + " must be positive");
    }
  }
  if (!std::isfinite(rates.j_hz) || !std::isfinite(rates.eps_c) || !std::isfinite(rates.eps_h)) {
    throw ValidationError("J and polarizations must be finite");
  }
}

// Block-restricted linear dynamics x(t) = x_eq + e^{At}(x0 − x_eq).
class BlockDynamics {
 public:
  BlockDynamics(const Mat& a, Vec x_eq) : a_(a), x_eq_(std::move(x_eq)) {
    Eigen::EigenSolver<Mat> es(a);
    if (es.info() == Eigen::Success) {
      vecs_ = es.eigenvectors();
      vals_ = es.eigenvalues();
      Eigen::PartialPivLU<CMat> lu(vecs_);
      // Near-defective matrices fall back to the dense exponential.
      if (std::abs(lu.determinant()) > 1e-10) {
        inv_ = lu.inverse();
        diagonalizable_ = true;
      }
    }
  }

  [[nodiscard]] Vec at(const Vec& x0, double t) const {
    const Vec dev = x0 - x_eq_;
    if (diagonalizable_) {
      const CVec coeffs = inv_ * dev.cast<Complex>();
      const CVec evolved = vecs_ * (vals_.array() * t).exp().matrix().cwiseProduct(coeffs);
      return x_eq_ + evolved.real();
    }
    return x_eq_ + Mat(a_ * t).exp() * dev;
  }

 private:
  Mat a_;
  Vec x_eq_;
  CMat vecs_;
  CMat inv_;
  CVec vals_;
  bool diagonalizable_ = false;
};

struct Observation {
  Vec x0;
  // Per time: t and column indices (into the block) with observed values.
  std::vector<double> times;
  std::vector<std::vector<std::pair<int, double>>> values;
};

// Nelder–Mead on f, starting from `start` with per-coordinate step `step`.
struct SimplexResult {
  Vec x;
  double f = 0.0;
};

template <typename F>
SimplexResult nelder_mead(const F& f, const Vec& start, double step, double spread_tol,
                          int& evaluations, int max_evaluations) {
  const auto dim = start.size();
  std::vector<Vec> pts(static_cast<std::size_t>(dim + 1), start);
  std::vector<double> vals(static_cast<std::size_t>(dim + 1));
  for (Eigen::Index i = 0; i < dim; ++i) {
    pts[static_cast<std::size_t>(i + 1)](i) += step;
  }
  for (std::size_t i = 0; i < pts.size(); ++i) {
    vals[i] = f(pts[i]);
    ++evaluations;
  }
  std::vector<std::size_t> order(pts.size());
  while (evaluations < max_evaluations) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return vals[a] < vals[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[order.size() - 2];
    double diameter = 0.0;
    for (const auto& p : pts) diameter = std::max(diameter, (p - pts[best]).cwiseAbs().maxCoeff());
    if (vals[worst] - vals[best] <= spread_tol && diameter < 1e-10) break;
    if (diameter < 1e-14) break;

    Vec centroid = Vec::Zero(dim);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i != worst) centroid += pts[i];
    }
    centroid /= static_cast<double>(dim);

    auto eval = [&](const Vec& p) {
      ++evaluations;
      return f(p);
    };
    const Vec reflected = centroid + (centroid - pts[worst]);
    const double fr = eval(reflected);
    if (fr < vals[best]) {
      const Vec expanded = centroid + 2.0 * (centroid - pts[worst]);
      const double fe = eval(expanded);
      if (fe < fr) {
        pts[worst] = expanded;
        vals[worst] = fe;
      } else {
        pts[worst] = reflected;
        vals[worst] = fr;
      }
      continue;
    }
    if (fr < vals[second]) {
      pts[worst] = reflected;
      vals[worst] = fr;
      continue;
    }
    const bool outside = fr < vals[worst];
    const Vec contracted = outside ? Vec(centroid + 0.5 * (reflected - centroid))
                                   : Vec(centroid + 0.5 * (pts[worst] - centroid));
    const double fc = eval(contracted);
    if (fc < (outside ? fr : vals[worst])) {
      pts[worst] = contracted;
      vals[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i == best) continue;
      pts[i] = pts[best] + 0.5 * (pts[i] - pts[best]);
      vals[i] = eval(pts[i]);
    }
  }
  const auto it = std::min_element(vals.begin(), vals.end());
  return {pts[static_cast<std::size_t>(it - vals.begin())], *it};
}

}  // namespace

RateSet RateSet::defaults() {
  RateSet s;
  s.rates = {0.0532, 0.0918, 0.0798, 0.0212, 0.0000, 0.0022, 3.495,
             6.536,  0.0100, 2.955,  6.118,  0.030,  9.523,  0.008};
  s.j_hz = 214.5;
  return s;
}

std::vector<SecularBlock> secular_blocks() { return make_blocks(); }

const SecularBlock& secular_block(Block b) {
  static const std::vector<SecularBlock> blocks = make_blocks();
  return blocks.at(static_cast<std::size_t>(b));
}

Block block_from_name(const std::string& name) {
  for (const auto& b : secular_blocks()) {
    if (b.name == name) return b.block;
  }
  throw ValidationError("unknown block '" + name +
                        "' (expected population, carbon, proton or zero_double)");
}

Mat relaxation_matrix(const RateSet& rates) {
  Mat r = Mat::Zero(15, 15);
  const auto& pop = secular_block(Block::population).slots;
  const double p[3][3] = {{rates.r(1), rates.r(4), rates.r(5)},
                          {rates.r(4), rates.r(2), rates.r(6)},
                          {rates.r(5), rates.r(6), rates.r(3)}};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) r(pop[static_cast<std::size_t>(i)], pop[static_cast<std::size_t>(j)]) = p[i][j];
  }
  fill_one_quantum(r, secular_block(Block::carbon_coherence).slots, rates.r(7), rates.r(8), rates.r(9));
  fill_one_quantum(r, secular_block(Block::proton_coherence).slots, rates.r(10), rates.r(11), rates.r(12));
  // (XY, YX, XX, YY)
  const auto& zd = secular_block(Block::zero_double).slots;
  for (int s : zd) r(s, s) = rates.r(13);
  r(zd[0], zd[1]) = r(zd[1], zd[0]) = -rates.r(14);
  r(zd[2], zd[3]) = r(zd[3], zd[2]) = rates.r(14);
  return r;
}

Mat coupling_matrix(const RateSet& rates) {
  Mat h = Mat::Zero(15, 15);
  const double pj = std::numbers::pi * rates.j_hz;
  fill_one_quantum_coupling(h, secular_block(Block::carbon_coherence).slots, pj);
  fill_one_quantum_coupling(h, secular_block(Block::proton_coherence).slots, pj);
  return h;
}

Vec population_drive_column(const RateSet& rates) {
  Vec col(3);
  col << -4.0 * (rates.r(1) * rates.eps_c + rates.r(4) * rates.eps_h),
      -4.0 * (rates.r(4) * rates.eps_c + rates.r(2) * rates.eps_h),
      -4.0 * (rates.r(5) * rates.eps_c + rates.r(6) * rates.eps_h);
  return col;
}

AffineGenerator assemble_generator(const RateSet& rates) {
  check_rates(rates);
  const Mat r = relaxation_matrix(rates);
  const Mat h = coupling_matrix(rates);

  // The ±πJ entries must be exactly the coherent part of (πJ/2) ZZ.
  const auto& basis = two_qubit_basis();
  const CMat hs = (std::numbers::pi * rates.j_hz / 2.0) * basis.matrix(basis.index_of("ZZ"));
  const Superoperator none = [](const CMat& x) { return CMat::Zero(x.rows(), x.cols()); };
  const Mat expected = bloch_matrices(basis, hs, none).h;
  if ((expected - h).cwiseAbs().maxCoeff() > 1e-9 * std::max(1.0, h.cwiseAbs().maxCoeff())) {
    throw ModelError("J-coupling entries disagree with the scalar-coupling Hamiltonian");
  }

  // Tabulated column multiplies the identity coefficient 1/4; flipping the
  // sign of the whole block turns it into the drive v.
  Vec v = Vec::Zero(15);
  const Vec col = population_drive_column(rates);
  const auto& pop = secular_block(Block::population).slots;
  for (int i = 0; i < 3; ++i) v(pop[static_cast<std::size_t>(i)]) = -col(i) / 4.0;

  Eigen::SelfAdjointEigenSolver<Mat> es(r, Eigen::EigenvaluesOnly);
  if (!(es.eigenvalues().minCoeff() > 0.0)) {
    throw ContractivityViolation("assembled relaxation matrix is not positive definite");
  }
  auto gen = AffineGenerator::from_drive(2, h, r, v);

  Vec expected_eq = Vec::Zero(15);
  expected_eq(pop[0]) = rates.eps_c;
  expected_eq(pop[1]) = rates.eps_h;
  if ((gen.equilibrium() - expected_eq).cwiseAbs().maxCoeff() > 1e-9) {
    throw ModelError("population block steady state differs from (eps_C, eps_H, 0)");
  }
  return gen;
}

TrajectorySample simulate_trajectory(const AffineGenerator& gen, const Vec& initial,
                                     const std::vector<double>& times,
                                     const std::vector<std::string>& labels) {
  if (gen.qubits() != 2) throw ValidationError("trajectory model is two-qubit");
  if (initial.size() != 15) throw ValidationError("initial state must have 15 coordinates");
  const auto& basis = two_qubit_basis();
  std::vector<int> idx;
  for (const auto& l : labels) idx.push_back(basis.coherence_index(l));

  TrajectorySample out;
  out.times = times;
  out.labels = labels;
  out.initial = initial;
  for (double t : times) {
    const Vec x = propagator(gen, t).apply(initial);
    std::vector<double> row;
    for (int k : idx) row.push_back(x(k));
    out.values.push_back(std::move(row));
  }
  return out;
}

FitResult fit_rates(const std::vector<TrajectorySample>& trajectories, Block block,
                    const RateSet& init_guess, const FitOptions& opts) {
  const SecularBlock& sb = secular_block(block);
  const auto& ids = sb.rate_ids;
  const auto nfree = static_cast<Eigen::Index>(ids.size());
  check_rates(init_guess);

  // Collect observations restricted to this block.
  std::vector<Observation> obs;
  std::size_t samples = 0;
  for (const auto& tr : trajectories) {
    if (tr.values.size() != tr.times.size()) throw ValidationError("trajectory rows and times differ");
    for (std::size_t i = 1; i < tr.times.size(); ++i) {
      if (!(tr.times[i] > tr.times[i - 1])) throw ValidationError("times must be strictly increasing");
    }
    std::vector<int> cols(tr.labels.size(), -1);
    for (std::size_t j = 0; j < tr.labels.size(); ++j) {
      static_cast<void>(two_qubit_basis().coherence_index(tr.labels[j]));  // validates the label
      const auto it = std::find(sb.labels.begin(), sb.labels.end(), tr.labels[j]);
      if (it != sb.labels.end()) cols[j] = static_cast<int>(it - sb.labels.begin());
    }
    Observation o;
    o.x0 = Vec::Zero(static_cast<Eigen::Index>(sb.labels.size()));
    if (tr.initial.size() == 15) {
      for (std::size_t k = 0; k < sb.slots.size(); ++k) o.x0(static_cast<Eigen::Index>(k)) = tr.initial(sb.slots[k]);
    } else if (tr.initial.size() != 0) {
      throw ValidationError("initial state must have 15 coordinates");
    } else {
      if (tr.times.empty()) throw RankDeficient("empty trajectory");
      std::vector<bool> seen(sb.labels.size(), false);
      for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j] >= 0) {
          o.x0(cols[j]) = tr.values[0][j];
          seen[static_cast<std::size_t>(cols[j])] = true;
        }
      }
      if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
        throw ValidationError("trajectory does not cover the " + sb.name + " block observables");
      }
    }
    const double t0 = tr.times.empty() ? 0.0 : tr.times.front();
    const bool initial_given = tr.initial.size() == 15;
    for (std::size_t i = 0; i < tr.times.size(); ++i) {
      std::vector<std::pair<int, double>> row;
      for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j] >= 0) row.emplace_back(cols[j], tr.values[i].at(j));
      }
      if (row.empty()) continue;
      // Without an explicit initial state the first row only seeds x0.
      if (!initial_given && i == 0) continue;
      o.times.push_back(initial_given ? tr.times[i] : tr.times[i] - t0);
      samples += row.size();
      o.values.push_back(std::move(row));
    }
    obs.push_back(std::move(o));
  }
  if (samples < static_cast<std::size_t>(nfree)) {
    throw RankDeficient("only " + std::to_string(samples) + " samples for " +
                        std::to_string(nfree) + " free rates");
  }

  // Block equilibrium is rate independent: (ε_C, ε_H, 0) or zero.
  Vec x_eq = Vec::Zero(static_cast<Eigen::Index>(sb.labels.size()));
  if (block == Block::population) x_eq << init_guess.eps_c, init_guess.eps_h, 0.0;

  // Parameters are rates divided by a per-rate scale.
  Vec scale(nfree);
  double max_init = 0.0;
  for (int id : ids) max_init = std::max(max_init, std::abs(init_guess.r(id)));
  for (Eigen::Index i = 0; i < nfree; ++i) {
    scale(i) = std::max({std::abs(init_guess.r(ids[static_cast<std::size_t>(i)])), 0.1 * max_init, 1e-6});
  }
  auto rates_of = [&](const Vec& p) {
    RateSet rs = init_guess;
    for (Eigen::Index i = 0; i < nfree; ++i) rs.r(ids[static_cast<std::size_t>(i)]) = p(i) * scale(i);
    return rs;
  };
  const Mat h_full = coupling_matrix(init_guess);
  auto residuals = [&](const Vec& p) {
    const RateSet rs = rates_of(p);
    const Mat r = relaxation_matrix(rs);
    const auto m = static_cast<Eigen::Index>(sb.slots.size());
    Mat a(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
      for (Eigen::Index j = 0; j < m; ++j) {
        const int si = sb.slots[static_cast<std::size_t>(i)];
        const int sj = sb.slots[static_cast<std::size_t>(j)];
        a(i, j) = h_full(si, sj) - r(si, sj);
      }
    }
    const BlockDynamics dyn(a, x_eq);
    Vec res(static_cast<Eigen::Index>(samples));
    Eigen::Index k = 0;
    for (const auto& o : obs) {
      for (std::size_t i = 0; i < o.times.size(); ++i) {
        const Vec x = dyn.at(o.x0, o.times[i]);
        for (const auto& [col, value] : o.values[i]) res(k++) = x(col) - value;
      }
    }
    return res;
  };
  auto objective = [&](const Vec& p) {
    const Vec res = residuals(p);
    const double f = res.squaredNorm();
    return std::isfinite(f) ? f : std::numeric_limits<double>::max();
  };

  Vec start(nfree);
  for (Eigen::Index i = 0; i < nfree; ++i) start(i) = init_guess.r(ids[static_cast<std::size_t>(i)]) / scale(i);

  // Identifiability: the Jacobian at the initial guess must have full rank.
  {
    const Vec r0 = residuals(start);
    Mat jac(r0.size(), nfree);
    for (Eigen::Index i = 0; i < nfree; ++i) {
      Vec p = start;
      const double hstep = 1e-6 * std::max(1.0, std::abs(p(i)));
      p(i) += hstep;
      jac.col(i) = (residuals(p) - r0) / hstep;
    }
    Eigen::JacobiSVD<Mat> svd(jac);
    const Vec sv = svd.singularValues();
    if (sv.size() < nfree || !(sv(nfree - 1) > 1e-9 * std::max(sv(0), 1e-300))) {
      throw RankDeficient("data do not determine all " + sb.name + " block rates");
    }
  }

  const double f_start = objective(start);
  const double spread_tol = opts.objective_tol * std::max(f_start, 1e-300);
  int evaluations = 1;
  const int per_run = std::max(1, opts.max_evaluations / (opts.restarts + 2));
  SimplexResult best = nelder_mead(objective, start, 0.1, spread_tol, evaluations,
                                   evaluations + per_run);
  std::mt19937 rng(opts.seed);
  std::lognormal_distribution<double> jitter(0.0, 0.3);
  for (int k = 0; k < opts.restarts; ++k) {
    Vec s = start;
    for (Eigen::Index i = 0; i < nfree; ++i) s(i) *= jitter(rng);
    auto run = nelder_mead(objective, s, 0.1, spread_tol, evaluations, evaluations + per_run);
    if (run.f < best.f) best = run;
  }
  // Restart from the incumbent to escape a collapsed simplex.
  auto final_run = nelder_mead(objective, best.x, 0.01, spread_tol, evaluations, evaluations + per_run);
  if (final_run.f < best.f) best = final_run;

  // Levenberg–Marquardt polish with forward-difference Jacobians.
  Vec p = best.x;
  Vec res = residuals(p);
  double f = res.squaredNorm();
  double lambda = 1e-3;
  for (int iter = 0; iter < 200 && evaluations < opts.max_evaluations; ++iter) {
    Mat jac(res.size(), nfree);
    for (Eigen::Index i = 0; i < nfree; ++i) {
      Vec q = p;
      const double hstep = 1e-7 * std::max(1.0, std::abs(q(i)));
      q(i) += hstep;
      jac.col(i) = (residuals(q) - res) / hstep;
      ++evaluations;
    }
    const Mat jtj = jac.transpose() * jac;
    const Vec grad = jac.transpose() * res;
    bool improved = false;
    for (int attempt = 0; attempt < 20; ++attempt) {
      Mat lhs = jtj;
      lhs.diagonal() += lambda * jtj.diagonal().cwiseMax(1e-300);
      const Vec step = lhs.ldlt().solve(-grad);
      const Vec q = p + step;
      const Vec rq = residuals(q);
      ++evaluations;
      const double fq = rq.squaredNorm();
      if (std::isfinite(fq) && fq < f) {
        const double rel = step.norm() / std::max(p.norm(), 1e-300);
        p = q;
        res = rq;
        f = fq;
        lambda = std::max(lambda / 3.0, 1e-12);
        improved = true;
        if (rel < 1e-13) iter = 1 << 20;
        break;
      }
      lambda *= 4.0;
    }
    if (!improved) break;
  }
  if (f < best.f) best = {p, f};

  FitResult out;
  out.rates = rates_of(best.x);
  out.objective = best.f;
  out.rms_residual = std::sqrt(best.f / static_cast<double>(samples));
  out.evaluations = evaluations;
  return out;
}

}  // namespace reachset::chloroform
