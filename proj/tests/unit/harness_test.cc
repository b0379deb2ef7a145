// Copyright 2026 The convsec Authors.
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

#include "convsec/harness.h"

#include <algorithm>
#include <set>

#include "convsec/error.h"
#include "convsec/rng.h"
#include "convsec/serialization.h"
#include "convsec/verify.h"
#include "gtest/gtest.h"
#include "support/test_oracles.h"

namespace convsec {
namespace {

using ::convsec::testing::CanonicalInstance;
using ::convsec::testing::CoupledQuadratic;
using ::convsec::testing::EnumerateBest;
using ::convsec::testing::MakeItems;

// 64-bit FNV-1a over each id as eight little-endian bytes.
std::uint64_t ReferenceFnv(const std::vector<ItemId>& ids) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (ItemId id : ids) {
    const std::uint64_t u = static_cast<std::uint64_t>(id);
    for (int b = 0; b < 8; ++b) {
      h ^= (u >> (8 * b)) & 0xff;
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

ExperimentSpec SmallSpec() {
  ExperimentSpec spec;
  spec.generator.n = 8;
  spec.generator.value_max = 2.0;
  spec.generator.coeff_lo = 0.3;
  spec.generator.matroid_kind = "uniform";
  spec.generator.rank = 3;
  spec.dims = {1, 2};
  spec.pipelines = AllPipelines();
  spec.trials = 4;
  spec.seed = 11;
  return spec;
}

TEST(RngTest, DeterministicAndWellFormed) {
  Rng a(5);
  Rng b(5);
  for (int k = 0; k < 100; ++k) EXPECT_EQ(a.Uniform(), b.Uniform());
  Rng r(9);
  for (int k = 0; k < 100; ++k) {
    Subset p = r.Permutation(7);
    std::sort(p.begin(), p.end());
    EXPECT_EQ(p, (Subset{0, 1, 2, 3, 4, 5, 6}));
    const int h = r.BinomialHalf(10);
    EXPECT_GE(h, 0);
    EXPECT_LE(h, 10);
    EXPECT_FALSE(r.Bernoulli(0.0));
    EXPECT_TRUE(r.Bernoulli(1.0));
    const double u = r.Uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
  EXPECT_NE(MixSeed(1, 1), MixSeed(1, 2));
  EXPECT_NE(MixSeed(1, 1), MixSeed(2, 1));
}

TEST(OrderHashTest, MatchesReferenceFnv) {
  EXPECT_EQ(OrderHash({}), 0xcbf29ce484222325ULL);
  EXPECT_EQ(OrderHash({1, 0, 2}), ReferenceFnv({1, 0, 2}));
  EXPECT_EQ(OrderHash({-3, 70000}), ReferenceFnv({-3, 70000}));
  EXPECT_NE(OrderHash({0, 1}), OrderHash({1, 0}));
  EXPECT_EQ(HexHash(0xcbf29ce484222325ULL), "cbf29ce484222325");
  EXPECT_EQ(HexHash(1), "0000000000000001");
}

TEST(PipelineTest, NamesRoundTrip) {
  for (Pipeline p : AllPipelines()) EXPECT_EQ(ParsePipeline(PipelineName(p)), p);
  EXPECT_THROW(ParsePipeline("nope"), Error);
}

TEST(ExperimentTest, CsvHeaderAndDeterminism) {
  const ExperimentSpec spec = SmallSpec();
  const std::string one = RowsToCsv(RunExperiment(spec, 1).rows);
  const std::string again = RowsToCsv(RunExperiment(spec, 1).rows);
  const std::string four = RowsToCsv(RunExperiment(spec, 4).rows);
  EXPECT_EQ(one, again);
  EXPECT_EQ(one, four);
  EXPECT_EQ(one.substr(0, one.find('\n')),
            "seed,order_hash,pipeline,profit,baseline,ratio,mu_tau,sample_size,"
            "branch,d");
  EXPECT_EQ(std::count(one.begin(), one.end(), '\n'), 1 + 2 * 5 * 4);
}

TEST(ExperimentTest, SingleTrialEqualsSolvePipeline) {
  ExperimentSpec spec = SmallSpec();
  spec.trials = 1;
  spec.dims = {2};
  for (Pipeline p : AllPipelines()) {
    spec.pipelines = {p};
    const ExperimentResult result = RunExperiment(spec);
    ASSERT_EQ(result.rows.size(), 1u);
    const TrialRow& row = result.rows[0];
    const Instance inst = TrialInstance(spec, p, 2, 0);
    const SolveOutput out = SolvePipeline(spec, p, inst, TrialSeed(spec.seed, 2, 0));
    EXPECT_EQ(row.seed, TrialSeed(spec.seed, 2, 0));
    EXPECT_EQ(row.profit, out.profit) << PipelineName(p);
    EXPECT_TRUE(row.feasible);
  }
}

TEST(ExperimentTest, RatiosAgainstExhaustiveOpt) {
  ExperimentSpec spec = SmallSpec();
  spec.oracle = false;
  spec.trials = 6;
  for (int d : spec.dims) {
    for (Pipeline p : spec.pipelines) {
      for (int k = 0; k < spec.trials; ++k) {
        const Instance inst = TrialInstance(spec, p, d, k);
        const SolveOutput out = SolvePipeline(spec, p, inst, TrialSeed(spec.seed, d, k));
        // Preprocessing lowers values, so the raw instance's opt bounds both.
        const double opt = EnumerateBest(inst).value;
        EXPECT_GE(out.profit, 0.0);
        if (opt > 1e-12) EXPECT_LE(out.profit / opt, 1.0 + 1e-9);
      }
    }
  }
}

TEST(ExperimentTest, SummaryCells) {
  const ExperimentSpec spec = SmallSpec();
  const ExperimentResult result = RunExperiment(spec);
  ASSERT_EQ(result.cells.size(), 2u * 5u);
  for (const CellSummary& cell : result.cells) {
    EXPECT_EQ(cell.trials, 4);
    EXPECT_EQ(cell.baseline_kind, "fopt");
    EXPECT_EQ(cell.infeasible, 0);
    EXPECT_EQ(cell.negative, 0);
    EXPECT_EQ(cell.guard_violations, 0);
    ASSERT_TRUE(cell.mean_ratio.has_value());
    EXPECT_LE(*cell.min_ratio, *cell.mean_ratio + 1e-12);
    EXPECT_LE(*cell.mean_ratio, *cell.max_ratio + 1e-12);
  }
}

TEST(ExperimentTest, RejectsZeroTrials) {
  ExperimentSpec spec = SmallSpec();
  spec.trials = 0;
  EXPECT_THROW(RunExperiment(spec), Error);
}

TEST(SerializationTest, InstanceRoundTrip) {
  GeneratorConfig c;
  c.n = 6;
  c.d = 2;
  c.cost_family = "quadratic";
  c.matroid_kind = "partition";
  c.num_blocks = 2;
  c.block_cap = 1;
  const Instance inst = Generate(c, 4);
  const Json j = InstanceToJson(inst);
  const Instance back = InstanceFromJson(ParseJson(j.dump()));
  EXPECT_EQ(InstanceToJson(back).dump(), j.dump());
  ASSERT_EQ(back.size(), inst.size());
  for (std::size_t p = 0; p < inst.size(); ++p) {
    EXPECT_EQ(back.item(p).value, inst.item(p).value);
    EXPECT_EQ(back.item(p).size, inst.item(p).size);
  }
  const Subset all = inst.All();
  EXPECT_EQ(back.SubsetProfit(all), inst.SubsetProfit(all));
}

TEST(SerializationTest, EmptyInstanceRoundTrip) {
  const Instance inst({}, CoupledQuadratic(), Matroid::Uniform(2));
  const Instance back = InstanceFromJson(InstanceToJson(inst));
  EXPECT_TRUE(back.empty());
  EXPECT_EQ(back.dim(), 2);
}

TEST(SerializationTest, StrictRejectsNonSupermodularQ) {
  Json j = InstanceToJson(
      Instance(MakeItems({1.0}, {{1.0, 1.0}}), CoupledQuadratic(), Matroid::Free()));
  j["cost"]["params"]["q"] = Json::array({Json::array({1.0, -0.5}),
                                          Json::array({-0.5, 1.0})});
  try {
    InstanceFromJson(j);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidCost);
  }
  EXPECT_NO_THROW(InstanceFromJson(j, false));
}

TEST(SerializationTest, ParseErrors) {
  try {
    ParseJson("{not json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
  }
  EXPECT_THROW(InstanceFromJson(Json::object()), Error);
}

TEST(SerializationTest, SentinelClassifierIsNull) {
  EXPECT_TRUE(ClassifierToJson(SentinelClassifier(2)).is_null());
  const Json c = ClassifierToJson(CurvePoint(CanonicalInstance().cost(), 1.0));
  EXPECT_TRUE(c.is_object());
}

TEST(SerializationTest, SpecRoundTrip) {
  const ExperimentSpec spec = SmallSpec();
  const Json j = ExperimentSpecToJson(spec);
  EXPECT_EQ(ExperimentSpecToJson(ExperimentSpecFromJson(j)).dump(), j.dump());
  EXPECT_EQ(GeneratorConfigToJson(GeneratorConfigFromJson(
                                      GeneratorConfigToJson(spec.generator)))
                .dump(),
            GeneratorConfigToJson(spec.generator).dump());
}

TEST(VerifyTest, EmptySelectionPasses) {
  VerifyOptions options;
  EXPECT_TRUE(RunVerify(options).empty());
  options.suites = {"bogus"};
  EXPECT_THROW(RunVerify(options), Error);
}

TEST(VerifyTest, QuickSuitesPass) {
  VerifyOptions options;
  options.suites = AllSuites();
  const std::vector<SuiteReport> reports = RunVerify(options);
  ASSERT_EQ(reports.size(), AllSuites().size());
  for (const SuiteReport& r : reports) {
    EXPECT_TRUE(r.passed) << r.name << ": " << r.witness;
    EXPECT_GT(r.checks, 0) << r.name;
  }
}

TEST(VerifyTest, BrokenQuadraticFailsWithWitness) {
  Json j = InstanceToJson(Instance(MakeItems({1.0, 1.0}, {{1.0, 0.0}, {0.0, 1.0}}),
                                   CoupledQuadratic(), Matroid::Free()));
  j["cost"]["params"]["q"] = Json::array({Json::array({1.0, -0.5}),
                                          Json::array({-0.5, 1.0})});
  VerifyOptions options;
  options.suites = {"supermodularity"};
  options.instance = InstanceFromJson(j, false);
  const std::vector<SuiteReport> reports = RunVerify(options);
  ASSERT_EQ(reports.size(), 1u);
  EXPECT_FALSE(reports[0].passed);
  EXPECT_GT(reports[0].failures, 0);
  EXPECT_FALSE(reports[0].witness.empty());
}

}  // namespace
}  // namespace convsec
