// Copyright 2026 The starglider-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

#include <gtest/gtest.h>

#include "starglider/harness.hpp"

namespace starglider {
namespace {

std::string FirstLine(const std::string& text) {
  return text.substr(0, text.find('\n'));
}

int CountLines(const std::string& text) {
  return static_cast<int>(std::count(text.begin(), text.end(), '\n'));
}

ExperimentConfig Small(ScenarioKind kind, int trials) {
  ExperimentConfig c;
  c.kind = kind;
  c.trials = trials;
  c.rng_seed = 99;
  return c;
}

TEST(Config, ParsesJsonWithPolicy) {
  const ExperimentConfig c = ExperimentConfigFromJson(nlohmann::json::parse(R"({
      "kind": "validate", "trials": 5, "failure_count": 2,
      "failure_mode": "consecutive", "rng_seed": 7,
      "threshold_pcts": [5, 15], "botnet_sizes": [10],
      "policy": {"max_excess_steps": 4, "budget_offset": 0}})"));
  EXPECT_EQ(c.kind, ScenarioKind::kValidation);
  EXPECT_EQ(c.trials, 5);
  EXPECT_EQ(c.failure_count, 2);
  EXPECT_EQ(c.failure_mode, FailureMode::kConsecutive);
  EXPECT_EQ(c.rng_seed, 7u);
  EXPECT_EQ(c.threshold_pcts, (std::vector<double>{5, 15}));
  EXPECT_EQ(c.policy.max_excess_steps, 4);
  EXPECT_EQ(c.policy.budget_offset, 0);
  EXPECT_EQ(c.policy.max_inversions, 1);
}

TEST(Config, RejectsBadValues) {
  using nlohmann::json;
  EXPECT_THROW(ExperimentConfigFromJson(json{{"failure_count", 4}}),
               std::invalid_argument);
  EXPECT_THROW(ExperimentConfigFromJson(json{{"kind", "nope"}}),
               std::invalid_argument);
  EXPECT_THROW(ExperimentConfigFromJson(json{{"failure_mode", "later"}}),
               std::invalid_argument);
  EXPECT_THROW(ExperimentConfigFromJson(json{{"trials", -1}}),
               std::invalid_argument);
  EXPECT_THROW(LoadExperimentConfig("/nonexistent.json"), std::runtime_error);
  for (const char* name : {"frr.json", "validate.json", "multigs.json"}) {
    EXPECT_NO_THROW(
        LoadExperimentConfig(std::string(STARGLIDER_TEST_CONFIG_DIR "/") + name));
  }
}

TEST(Config, DefaultStationsAreTheCityCorpus) {
  EXPECT_EQ(LoadStations(ExperimentConfig{}).size(), 55u);
}

// Each placed failure lies on the shortest path given the earlier ones.
TEST(PlaceFailures, EachFailureHitsTheCurrentShortestPath) {
  ConstellationConfig cfg;
  std::mt19937_64 rng(3);
  for (int k = 0; k < 50; ++k) {
    const SatelliteId s = FromFlat(cfg, rng() % cfg.NumSatellites());
    const SatelliteId d = FromFlat(cfg, rng() % cfg.NumSatellites());
    if (s == d) continue;
    const WeightedSnapshot snap(cfg, 70.0 * k);
    const std::vector<LinkId> f = place_failures(snap, s, d, 3, rng);
    ASSERT_EQ(f.size(), 3u);
    LinkStateMap known;
    for (const LinkId& l : f) {
      const Path sp = *dijkstra(snap.WithExtraFailures(known), s, d);
      const std::vector<LinkId> on = sp.Links(cfg);
      EXPECT_NE(std::find(on.begin(), on.end(), l), on.end());
      known.failed_links.insert(l);
    }
  }
}

TEST(Frr, DeterministicCsvWithSchema) {
  const ExperimentConfig c = Small(ScenarioKind::kFrr, 20);
  const std::string a = run_experiment(c);
  EXPECT_EQ(a, run_experiment(c));
  EXPECT_EQ(FirstLine(a),
            "schema,trial,failures,mode,scheme,delivered,delay_s,"
            "optimal_delay_s,stretch_pct,hops,hop_stretch,reroute_count,looped");
  EXPECT_EQ(CountLines(a), 1 + 20 * static_cast<int>(FrrResult::Schemes().size()));
  EXPECT_EQ(a.find("\nfrr/1,0,1,simultaneous,starglider,"), FirstLine(a).size());
  ExperimentConfig other = c;
  other.rng_seed = 100;
  EXPECT_NE(a, run_experiment(other));
}

TEST(Frr, DroppedPacketsUseTheInfSentinel) {
  ExperimentConfig c = Small(ScenarioKind::kFrr, 60);
  c.failure_count = 3;
  const FrrResult r = run_frr_trials(c);
  int dropped = 0;
  for (const FrrRow& row : r.rows) {
    if (!row.delivered) {
      ++dropped;
      EXPECT_EQ(row.delay_s, std::numeric_limits<double>::infinity());
    } else {
      EXPECT_GE(row.delay_s, row.optimal_delay_s * (1 - 1e-12));
    }
    if (row.scheme == "optimal_global") {
      EXPECT_TRUE(row.delivered);
    }
    if (row.scheme == "starglider") {
      EXPECT_LE(row.reroute_count, 2);
    }
  }
  ASSERT_GT(dropped, 0);
  std::ostringstream out;
  WriteFrrCsv(c, r, out);
  EXPECT_NE(out.str().find(",inf,"), std::string::npos);
}

TEST(Validation, RowsAndSchema) {
  const ExperimentConfig c = Small(ScenarioKind::kValidation, 6);
  const std::vector<ValidationRow> rows = run_validation_trials(c);
  std::ostringstream out;
  WriteValidationCsv(c, rows, out);
  const std::string text = out.str();
  EXPECT_EQ(FirstLine(text),
            "schema,trial,class,variant,target,ingress,terminal,tag_count,"
            "encodable,starglider_pass,failed_check,inversions,"
            "inversion_steps,intra_steps,cross_steps,r_min,c_min,"
            "threshold_10_pass,threshold_20_pass");
  EXPECT_EQ(CountLines(text), 1 + static_cast<int>(rows.size()));
  EXPECT_EQ(text, run_validation_experiment(c));
  for (const ValidationRow& r : rows) {
    EXPECT_EQ(r.threshold_pass.size(), 2u);
    EXPECT_EQ(r.failed_check.has_value(), !r.starglider_pass && r.encodable);
    EXPECT_EQ(r.target.has_value(), r.packet_class.rfind("attack", 0) == 0);
    if (r.packet_class == "legit_0f") {
      EXPECT_TRUE(r.starglider_pass);
    }
  }
}

TEST(MultiGs, EmptyBotnetAndSchema) {
  ExperimentConfig c = Small(ScenarioKind::kMultiGs, 0);
  c.botnet_sizes = {0, 30};
  c.botnet_repeats = 2;
  const std::vector<MultiGsRow> rows = run_multi_gs_trials(c, LoadStations(c));
  ASSERT_EQ(rows.size(), 4u);
  for (int k = 0; k < 2; ++k) {
    EXPECT_EQ(rows[k].usable_pairs, 0);
    EXPECT_EQ(rows[k].usable_fraction, 0);
    EXPECT_EQ(rows[k].critical_median, 0);
    EXPECT_EQ(rows[k].distinct_ingress, 0);
  }
  for (int k = 2; k < 4; ++k) {
    EXPECT_EQ(rows[k].usable_pairs,
              static_cast<int>(rows[k].critical_per_pair.size()));
    EXPECT_DOUBLE_EQ(rows[k].usable_fraction, rows[k].usable_pairs / 30.0);
  }
  std::ostringstream out;
  WriteMultiGsCsv(rows, out);
  EXPECT_EQ(FirstLine(out.str()),
            "schema,botnet_size,repeat,target,time_s,usable_pairs,"
            "usable_fraction,critical_median,distinct_ingress");
  EXPECT_EQ(out.str(), run_multi_gs_experiment(c));
  c.botnet_sizes = {55 * 54 + 1};
  EXPECT_THROW(run_multi_gs_trials(c, LoadStations(c)), std::invalid_argument);
}

TEST(Bench, ReportsOnePassPerValidation) {
  ExperimentConfig c = Small(ScenarioKind::kBench, 0);
  c.bench_headers = 200;
  const BenchResult b = bench_validation(c);
  EXPECT_EQ(b.headers, 200);
  EXPECT_EQ(b.tag_passes_per_validation, 1u);
  EXPECT_GT(b.throughput_per_s, 0);
  EXPECT_LE(b.starglider_ns.p50, b.starglider_ns.p99);
  const nlohmann::json j = nlohmann::json::parse(run_experiment(c));
  EXPECT_TRUE(j.contains("speedup_median"));
}

}  // namespace
}  // namespace starglider
