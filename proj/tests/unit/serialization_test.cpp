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

#include <cmath>
#include <filesystem>
#include <limits>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "reachset/errors.hpp"

namespace reachset {
namespace {

TEST(SerializationTest, CoherenceRoundTripIsBitExact) {
  CoherenceVector v{2, Vec::LinSpaced(15, -1.0 / 3.0, 2.0 / 7.0)};
  const auto back = io::coherence_from_json(io::coherence_to_json(v));
  EXPECT_EQ(back.n, 2);
  EXPECT_EQ(back.r, v.r);
}

TEST(SerializationTest, GeneratorRoundTrip) {
  const auto& gen = testing::chloroform();
  const auto back = io::generator_from_json(io::generator_to_json(gen));
  EXPECT_EQ(back.qubits(), 2);
  EXPECT_EQ(back.hamiltonian(), gen.hamiltonian());
  EXPECT_EQ(back.relaxation(), gen.relaxation());
  EXPECT_EQ(back.equilibrium(), gen.equilibrium());
}

TEST(SerializationTest, RatesRoundTrip) {
  auto rates = chloroform::RateSet::defaults();
  rates.eps_h = 3.98;
  const auto back = io::rates_from_json(io::rates_to_json(rates));
  EXPECT_EQ(back.rates, rates.rates);
  EXPECT_EQ(back.j_hz, rates.j_hz);
  EXPECT_EQ(back.eps_h, 3.98);
}

TEST(SerializationTest, RatesDefaultEpsilons) {
  std::string text = R"({"r":[1,1,1,0,0,0,1,1,0,1,1,0,1,0],"J_hz":200})";
  const auto r = io::rates_from_json(text);
  EXPECT_EQ(r.eps_c, 1.0);
  EXPECT_EQ(r.eps_h, 4.0);
}

TEST(SerializationTest, TrajectoryCsvRoundTrip) {
  chloroform::TrajectorySample t;
  t.times = {0.0, 0.1, 1e-7};
  t.labels = {"ZI", "XY"};
  t.values = {{1.0, -0.5}, {1.0 / 3.0, 2e-300}, {-0.0, 12345.678}};
  const auto back = io::trajectory_from_csv(io::trajectory_to_csv(t));
  EXPECT_EQ(back.times, t.times);
  EXPECT_EQ(back.labels, t.labels);
  EXPECT_EQ(back.values, t.values);
}

TEST(SerializationTest, FormatDoubleRoundTrips) {
  for (double x : {0.1, 1.0 / 3.0, 6.02e23, 1.7976931348623157e308}) {
    EXPECT_EQ(std::stod(io::format_double(x)), x);
  }
}

TEST(SerializationTest, MalformedInputIsRejected) {
  EXPECT_THROW(io::coherence_from_json("{"), ValidationError);
  EXPECT_THROW(io::coherence_from_json(R"({"n":2,"order":"lex-IXYZ","r":[1,2]})"), ValidationError);
  EXPECT_THROW(io::coherence_from_json(R"({"n":2,"order":"IZXY","r":[]})"), ValidationError);
  EXPECT_THROW(io::rates_from_json(R"({"r":[1,2,3],"J_hz":1})"), ValidationError);
  EXPECT_THROW(io::rates_from_json(R"({"r":"x","J_hz":1})"), ValidationError);
  EXPECT_THROW(io::generator_from_json(R"({"n":1,"H":[[0]],"R":[[1]],"r_eq":[0]})"), ValidationError);
  EXPECT_THROW(io::trajectory_from_csv(""), ValidationError);
  EXPECT_THROW(io::trajectory_from_csv("t,QQ\n0,1\n"), ValidationError);
  EXPECT_THROW(io::trajectory_from_csv("t,ZI\n0,1,2\n"), ValidationError);
  EXPECT_THROW(io::trajectory_from_csv("t,ZI\n0,abc\n"), ValidationError);
  EXPECT_THROW(io::trajectory_from_csv("x,ZI\n0,1\n"), ValidationError);
}

TEST(SerializationTest, FileHelpers) {
  const auto path = std::filesystem::temp_directory_path() / "reachset_io_test.json";
  io::write_file(path.string(), "{\"a\":1}");
  EXPECT_EQ(io::read_file(path.string()), "{\"a\":1}");
  std::filesystem::remove(path);
  EXPECT_THROW(io::read_file(path.string()), ValidationError);
  EXPECT_THROW(io::write_file("/nonexistent-dir/x/y.json", "x"), ValidationError);
}

}  // namespace
}  // namespace reachset
