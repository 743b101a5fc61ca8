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

#ifndef STARGLIDER_HARNESS_HPP_
#define STARGLIDER_HARNESS_HPP_

#include <cstdint>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "starglider/constellation.hpp"
#include "starglider/ground.hpp"
#include "starglider/validator.hpp"

namespace starglider {

enum class ScenarioKind { kFrr, kValidation, kMultiGs, kAssumptions, kBench };
enum class FailureMode {
  // Every failure is unknown to the source when the packet is sent.
  kSimultaneous,
  // All but the last failure are known; the header avoids them.
  kConsecutive,
};

const char* ToString(ScenarioKind kind);
const char* ToString(FailureMode mode);
// Throw std::invalid_argument on an unknown name.
ScenarioKind ParseScenarioKind(const std::string& name);
FailureMode ParseFailureMode(const std::string& name);

struct ExperimentConfig {
  ScenarioKind kind = ScenarioKind::kFrr;
  int trials = 1000;
  int failure_count = 1;  // 0..3
  FailureMode failure_mode = FailureMode::kSimultaneous;
  std::uint64_t rng_seed = 1;
  ConstellationConfig constellation;
  std::string constellation_file;  // "key = value" file; empty: defaults
  std::string gs_file;  // city CSV (.csv) or station JSON; empty: built-in
  std::string output_path;
  // Headers are built at the trial instant and sent up to this much later.
  double notification_window_s = 0.1;
  double min_elevation_deg = 25.0;
  std::vector<double> threshold_pcts = {10.0, 20.0};
  std::vector<int> botnet_sizes = {100, 500, 1000};
  int botnet_repeats = 20;
  int bench_headers = 10000;
  int assumption_times = 50;
  int assumption_pairs = 200;
  ValidationPolicy policy;

  // Throws std::invalid_argument when a field is out of range.
  void Validate() const;
};

// Keys mirror the field names; "kind" and "failure_mode" take the CLI
// spellings; "policy" holds the ValidationPolicy fields. A set
// constellation_file is loaded into `constellation`.
ExperimentConfig ExperimentConfigFromJson(const nlohmann::json& j);
ExperimentConfig LoadExperimentConfig(const std::string& path);

// Ground stations for cfg.gs_file, or the bundled 55-city corpus when empty.
GsDatabase LoadStations(const ExperimentConfig& cfg);
std::string DefaultCityCsvPath();

// Failures placed one at a time, each on the current shortest s -> d path
// given the earlier ones. Stops early if s and d disconnect.
std::vector<LinkId> place_failures(const WeightedSnapshot& snap, SatelliteId s,
                                   SatelliteId d, int count,
                                   std::mt19937_64& rng);

inline constexpr const char* kFrrSchema = "frr/1";
inline constexpr const char* kValidationSchema = "validation/1";
inline constexpr const char* kMultiGsSchema = "multigs/1";

struct FrrRow {
  int trial = 0;
  std::string scheme;  // starglider | lfa | mpls_frr | optimal_local |
                       // optimal_global
  bool delivered = false;
  double delay_s = 0;  // infinity when not delivered
  double optimal_delay_s = 0;
  double stretch_pct = 0;  // infinity when not delivered
  int hops = 0;
  int hop_stretch = 0;  // hops minus primary hops; meaningless if dropped
  int reroute_count = 0;
  bool looped = false;  // starglider: repeated forwarding state
};

struct FrrResult {
  std::vector<FrrRow> rows;
  // Schemes in row order of each trial.
  static const std::vector<std::string>& Schemes();
};

FrrResult run_frr_trials(const ExperimentConfig& cfg);
void WriteFrrCsv(const ExperimentConfig& cfg, const FrrResult& r,
                 std::ostream& out);
std::string run_frr_experiment(const ExperimentConfig& cfg);

struct ValidationRow {
  int trial = 0;
  std::string packet_class;  // legit_0f .. legit_2f, attack_1hop .. 3hop
  std::string variant;       // concat | detour | optimal
  // Attack classes: the target link, whose nearer endpoint is k hops from
  // the shortest path.
  std::optional<LinkId> target;
  SatelliteId ingress;
  SatelliteId terminal;
  int tag_count = 0;
  // More than kMaxTags tags: the header cannot be built, every validator
  // counts the packet as blocked.
  bool encodable = true;
  bool starglider_pass = false;
  std::optional<Check> failed_check;
  ValidationMetrics metrics;
  std::vector<bool> threshold_pass;  // aligned with cfg.threshold_pcts
};

std::vector<ValidationRow> run_validation_trials(const ExperimentConfig& cfg);
void WriteValidationCsv(const ExperimentConfig& cfg,
                        const std::vector<ValidationRow>& rows,
                        std::ostream& out);
std::string run_validation_experiment(const ExperimentConfig& cfg);

struct MultiGsRow {
  int botnet_size = 0;
  int repeat = 0;
  LinkId target;
  double t = 0;
  int usable_pairs = 0;
  double usable_fraction = 0;  // 0 for an empty botnet
  // Per usable pair: ingress satellites with at least one passing header.
  std::vector<int> critical_per_pair;
  double critical_median = 0;  // of critical_per_pair; 0 when empty
  int distinct_ingress = 0;    // union over usable pairs
};

std::vector<MultiGsRow> run_multi_gs_trials(const ExperimentConfig& cfg,
                                            const GsDatabase& cities);
void WriteMultiGsCsv(const std::vector<MultiGsRow>& rows, std::ostream& out);
std::string run_multi_gs_experiment(const ExperimentConfig& cfg);

struct Percentiles {
  double p50 = 0;
  double p90 = 0;
  double p99 = 0;
};

struct BenchResult {
  int headers = 0;
  Percentiles starglider_ns;
  Percentiles baseline_ns;
  double speedup_median = 0;  // baseline p50 / starglider p50
  double throughput_per_s = 0;
  std::uint64_t tag_passes_per_validation = 0;
};

BenchResult bench_validation(const ExperimentConfig& cfg);
void to_json(nlohmann::json& j, const BenchResult& b);

AssumptionReport run_assumptions(const ExperimentConfig& cfg);

// Runs cfg.kind and returns the CSV or JSON text.
std::string run_experiment(const ExperimentConfig& cfg);

}  // namespace starglider

#endif  // STARGLIDER_HARNESS_HPP_
