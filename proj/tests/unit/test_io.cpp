// Copyright 2026 The egra Authors
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

#include <cmath>
#include <cstring>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "egra/error.hpp"
#include "egra/generator.hpp"
#include "egra/io.hpp"
#include "test_support.hpp"

namespace egra {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using testing::scratch_dir;
using testing::slurp;

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

bool same_bits(const MatrixXd& a, const MatrixXd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (!same_bits(a.data()[i], b.data()[i])) return false;
  }
  return true;
}

GeneratorSpec spec_for(int dim, std::uint64_t seed) {
  GeneratorSpec spec;
  spec.dim = dim;
  spec.seed = seed;
  return spec;
}

TEST(InstanceJson, RoundTripIsBitExact) {
  const auto dir = scratch_dir("io_roundtrip");
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto inst = generate(spec_for(9, seed));
    const auto path = dir / ("inst" + std::to_string(seed) + ".json");
    save_instance(path, inst, spec_for(9, seed));
    const auto back = load_instance(path);
    EXPECT_TRUE(same_bits(inst.P, back.P));
    EXPECT_TRUE(same_bits(inst.Q, back.Q));
    EXPECT_TRUE(same_bits(inst.q, back.q));
    EXPECT_TRUE(same_bits(inst.feasible.A, back.feasible.A));
    EXPECT_TRUE(same_bits(inst.feasible.b, back.feasible.b));
    EXPECT_TRUE(same_bits(inst.feasible.interior_point,
                          back.feasible.interior_point));
    // load -> save reproduces the same bytes
    const auto again = dir / ("again" + std::to_string(seed) + ".json");
    save_instance(again, back, spec_for(9, seed));
    EXPECT_EQ(slurp(path), slurp(again));
  }
}

TEST(InstanceJson, ExtremeValuesRoundTrip) {
  auto inst = testing::one_d_instance();
  inst.q(0) = 5e-324;
  inst.P(0, 0) = 0.1 + 0.2;
  inst.feasible.b(0) = std::numeric_limits<double>::max();
  const auto back = instance_from_json(nlohmann::json::parse(
      instance_to_json(inst).dump()));
  EXPECT_TRUE(same_bits(inst.q, back.q));
  EXPECT_TRUE(same_bits(inst.P, back.P));
  EXPECT_TRUE(same_bits(inst.feasible.b, back.feasible.b));
}

TEST(InstanceJson, HasDocumentedKeysAndProvenance) {
  const auto dir = scratch_dir("io_keys");
  const auto path = dir / "i.json";
  save_instance(path, generate(spec_for(3, 2)), spec_for(3, 2));
  const auto doc = nlohmann::json::parse(slurp(path));
  for (const char* key : {"dim", "P", "Q", "q", "A", "b", "interior_point",
                          "generator_spec"}) {
    EXPECT_TRUE(doc.contains(key)) << key;
  }
  EXPECT_EQ(doc["dim"], 3);
  EXPECT_EQ(doc["P"].size(), 3u);
  const auto spec = generator_spec_from_json(doc["generator_spec"]);
  EXPECT_EQ(spec.seed, 2u);
  EXPECT_EQ(spec.dim, 3);
}

TEST(InstanceJson, MalformedInputsRaiseValidationError) {
  const auto dir = scratch_dir("io_bad");
  const auto path = dir / "bad.json";
  write_text_file(path, "{\"dim\": 2, \"P\": [[1, 0], [0, 1]");
  EXPECT_THROW(load_instance(path), ValidationError);

  auto doc = instance_to_json(generate(spec_for(2, 1)));
  doc.erase("Q");
  EXPECT_THROW(instance_from_json(doc), ValidationError);

  doc = instance_to_json(generate(spec_for(2, 1)));
  doc["P"][0][1] = "x";
  EXPECT_THROW(instance_from_json(doc), ValidationError);

  doc = instance_to_json(generate(spec_for(2, 1)));
  doc["P"][1] = nlohmann::json::array({1.0});
  EXPECT_THROW(instance_from_json(doc), ValidationError);

  doc = instance_to_json(generate(spec_for(2, 1)));
  doc["dim"] = 3;
  EXPECT_THROW(instance_from_json(doc), ValidationError);
}

TEST(InstanceJson, MissingFileIsIoError) {
  EXPECT_THROW(load_instance("/nonexistent/dir/instance.json"), IoError);
}

TEST(TraceCsv, SeventeenDigitRoundTrip) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> expo(-300.0, 5.0);
  SolverTrace trace;
  for (int n = 0; n < 500; ++n) {
    TraceRecord r;
    r.n = n;
    r.d_n = std::pow(10.0, expo(rng));
    r.lambda_n = 1.0 / (n + 3.0);
    r.elapsed_seconds = 1e-3 * n + 1.0 / 3.0;
    r.prox_calls = n;
    r.f_evals = 3L * n;
    trace.records.push_back(r);
  }
  trace.records[7].d_n = 4.9406564584124654e-324;
  trace.records[8].d_n = 0.0;
  const auto text = trace_to_csv(trace);
  EXPECT_EQ(text.substr(0, text.find('\n')), kTraceCsvHeader);
  const auto back = parse_trace_csv(text);
  ASSERT_EQ(back.size(), trace.records.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(back[i].n, trace.records[i].n);
    EXPECT_TRUE(same_bits(back[i].d_n, trace.records[i].d_n)) << i;
    EXPECT_TRUE(same_bits(back[i].lambda_n, trace.records[i].lambda_n));
    EXPECT_TRUE(same_bits(back[i].elapsed_seconds,
                          trace.records[i].elapsed_seconds));
    EXPECT_EQ(back[i].prox_calls, trace.records[i].prox_calls);
    EXPECT_EQ(back[i].f_evals, trace.records[i].f_evals);
  }
}

TEST(TraceCsv, ProjectedStartNoteIsSkippedByParser) {
  SolverTrace trace;
  trace.start_projected = true;
  trace.note = "starting point projected onto C";
  trace.records.push_back(TraceRecord{0, 1.5, 1.0, 0.0, 0, 0, 1});
  const auto text = trace_to_csv(trace);
  EXPECT_EQ(text.rfind("# starting point", 0), 0u);
  EXPECT_EQ(parse_trace_csv(text).size(), 1u);
}

TEST(TraceCsv, RejectsWrongHeader) {
  EXPECT_THROW(parse_trace_csv("a,b\n1,2\n"), ValidationError);
}

TEST(FormatDouble, ShortestFormsParseBack) {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, -2.5, 6.02214076e23}) {
    EXPECT_TRUE(same_bits(std::strtod(format_double(v).c_str(), nullptr), v));
  }
}

}  // namespace
}  // namespace egra
