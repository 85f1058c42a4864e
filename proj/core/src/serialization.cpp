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

#include "reachset/serialization.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "reachset/errors.hpp"

namespace reachset::io {
namespace {

using nlohmann::json;

json vec_json(const Vec& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

json mat_json(const Mat& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) rows.push_back(vec_json(m.row(i).transpose()));
  return rows;
}

Vec json_vec(const json& j, const char* what) {
  if (!j.is_array()) throw ValidationError(std::string(what) + " must be an array");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw ValidationError(std::string(what) + " must contain numbers");
    v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  return v;
}

Mat json_mat(const json& j, const char* what, Eigen::Index dim) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != dim) {
    throw ValidationError(std::string(what) + " must have " + std::to_string(dim) + " rows");
  }
  Mat m(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const Vec row = json_vec(j[static_cast<std::size_t>(i)], what);
    if (row.size() != dim) throw ValidationError(std::string(what) + " must be square");
    m.row(i) = row.transpose();
  }
  return m;
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ValidationError(std::string("missing field '") + key + "'");
  return j.at(key);
}

int qubit_count(const json& j) {
  const json& n = field(j, "n");
  if (!n.is_number_integer()) throw ValidationError("'n' must be an integer");
  const int q = n.get<int>();
  if (q < 1 || q > kMaxQubits) throw SizeError("qubit count out of range");
  return q;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    const auto a = cell.find_first_not_of(" \t\r");
    const auto b = cell.find_last_not_of(" \t\r");
    out.push_back(a == std::string::npos ? std::string() : cell.substr(a, b - a + 1));
  }
  return out;
}

}  // namespace

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string coherence_to_json(const CoherenceVector& v) {
  json j = {{"n", v.n}, {"order", "lex-IXYZ"}, {"r", vec_json(v.r)}};
  return j.dump(2);
}

CoherenceVector coherence_from_json(const std::string& text) {
  const json j = parse(text);
  const int n = qubit_count(j);
  if (j.contains("order") && j.at("order") != "lex-IXYZ") {
    throw ValidationError("unsupported basis order");
  }
  Vec r = json_vec(field(j, "r"), "r");
  if (r.size() != (Eigen::Index{1} << (2 * n)) - 1) throw SizeError("r must have 4^n - 1 entries");
  return {n, std::move(r)};
}

std::string generator_to_json(const AffineGenerator& gen) {
  json j = {{"n", gen.qubits()},
            {"H", mat_json(gen.hamiltonian())},
            {"R", mat_json(gen.relaxation())},
            {"r_eq", vec_json(gen.equilibrium())}};
  return j.dump(2);
}

AffineGenerator generator_from_json(const std::string& text) {
  const json j = parse(text);
  const int n = qubit_count(j);
  const Eigen::Index dim = (Eigen::Index{1} << (2 * n)) - 1;
  Mat h = json_mat(field(j, "H"), "H", dim);
  Mat r = json_mat(field(j, "R"), "R", dim);
  Vec r_eq = json_vec(field(j, "r_eq"), "r_eq");
  if (r_eq.size() != dim) throw SizeError("r_eq must have 4^n - 1 entries");
  return AffineGenerator::from_equilibrium(n, std::move(h), std::move(r), std::move(r_eq));
}

std::string rates_to_json(const chloroform::RateSet& rates) {
  json j = {{"r", std::vector<double>(rates.rates.begin(), rates.rates.end())},
            {"J_hz", rates.j_hz},
            {"eps_C", rates.eps_c},
            {"eps_H", rates.eps_h}};
  return j.dump(2);
}

chloroform::RateSet rates_from_json(const std::string& text) {
  const json j = parse(text);
  chloroform::RateSet rates;
  const Vec r = json_vec(field(j, "r"), "r");
  if (r.size() != 14) throw ValidationError("'r' must list 14 rates");
  for (int k = 0; k < 14; ++k) rates.rates[static_cast<std::size_t>(k)] = r(k);
  const json& jz = field(j, "J_hz");
  if (!jz.is_number()) throw ValidationError("'J_hz' must be a number");
  rates.j_hz = jz.get<double>();
  if (j.contains("eps_C")) rates.eps_c = j.at("eps_C").get<double>();
  if (j.contains("eps_H")) rates.eps_h = j.at("eps_H").get<double>();
  return rates;
}

std::string trajectory_to_csv(const chloroform::TrajectorySample& traj) {
  std::string out = "t";
  for (const auto& l : traj.labels) out += "," + l;
  out += "\n";
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    out += format_double(traj.times[i]);
    for (double v : traj.values.at(i)) out += "," + format_double(v);
    out += "\n";
  }
  return out;
}

chloroform::TrajectorySample trajectory_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("empty trajectory CSV");
  auto header = split(line);
  if (header.empty() || header.front() != "t") throw ValidationError("CSV header must start with 't'");
  chloroform::TrajectorySample traj;
  const PauliBasis basis = PauliBasis::build(2);
  for (std::size_t k = 1; k < header.size(); ++k) {
    static_cast<void>(basis.coherence_index(header[k]));
    traj.labels.push_back(header[k]);
  }
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = split(line);
    if (cells.size() != header.size()) {
      throw ValidationError("CSV line " + std::to_string(lineno) + " has the wrong number of fields");
    }
    std::vector<double> row;
    for (std::size_t k = 0; k < cells.size(); ++k) {
      double value = 0.0;
      try {
        std::size_t used = 0;
        value = std::stod(cells[k], &used);
        if (used != cells[k].size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw ValidationError("CSV line " + std::to_string(lineno) + ": bad number '" + cells[k] + "'");
      }
      if (k == 0) {
        traj.times.push_back(value);
      } else {
        row.push_back(value);
      }
    }
    traj.values.push_back(std::move(row));
  }
  return traj;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ValidationError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ValidationError("cannot write '" + path + "'");
  f << contents;
  if (!f) throw ValidationError("failed writing '" + path + "'");
}

}  // namespace reachset::io
