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

#ifndef STARGLIDER_VALIDATOR_HPP_
#define STARGLIDER_VALIDATOR_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

#include "starglider/constellation.hpp"
#include "starglider/ground.hpp"
#include "starglider/path_codec.hpp"

namespace starglider {

struct AdmissionEntry {
  std::uint32_t src_gs = 0;
  std::uint32_t dst_gs = 0;
  SatelliteId ingress;  // the only satellite admitting this pair
  double rate_bps = 0;  // > 0
};

// Per GS pair: one ingress satellite and a token bucket holding at most
// bucket_window_s * rate_bps bits, full at registration. Tokens refill
// continuously at rate_bps.
class AdmissionTable {
 public:
  explicit AdmissionTable(double bucket_window_s = 0.1);

  // Replaces an existing entry for the pair. Throws std::invalid_argument
  // on a non-positive rate.
  void Register(const AdmissionEntry& entry);
  const AdmissionEntry* Find(std::uint32_t src_gs, std::uint32_t dst_gs) const;
  double bucket_window_s() const { return window_s_; }

  // Consumes size_bits tokens when the pair is registered at `ingress`
  // and enough tokens are available. Time must not go backwards per pair.
  bool Admit(std::uint32_t src_gs, std::uint32_t dst_gs, SatelliteId ingress,
             double size_bits, double t);

 private:
  struct State {
    AdmissionEntry entry;
    double tokens = 0;
    double last_t = 0;
    bool started = false;
  };
  double window_s_;
  std::map<std::pair<std::uint32_t, std::uint32_t>, State> pairs_;
};

// {"bucket_window_s"?: x, "pairs": [{"src_gs", "dst_gs", "ingress": [p, i],
//  "rate_bps"}, ...]}
AdmissionTable AdmissionTableFromJson(const nlohmann::json& j);
AdmissionTable LoadAdmissionTable(const std::string& path);

bool pre_check(AdmissionTable& table, const PacketHeader& header,
               SatelliteId ingress, double size_bits, double t);

// Everything checks 1-3 need, gathered in one walk over the tags.
struct TagSummary {
  SatelliteId terminal;  // satellite reached by expanding the tags
  int intra_steps = 0;
  int cross_steps = 0;
  // Tags opposing the first direction seen on their axis, and their steps.
  int inversions = 0;
  int inversion_steps = 0;
};

// One pass over `tags`; increments the tag-pass counter.
TagSummary scan_tags(const ConstellationConfig& cfg,
                     std::span<const PathTag> tags, SatelliteId ingress);

// Tag-list passes made by this thread since the last reset.
std::uint64_t tag_pass_count();
void reset_tag_pass_count();

// Fails closed on an unknown station.
bool check1(const ConstellationConfig& cfg, std::span<const PathTag> tags,
            SatelliteId ingress, std::uint32_t dst_gs, double t,
            const GsDatabase& gs_db);
bool check1(const ConstellationConfig& cfg, const TagSummary& summary,
            std::uint32_t dst_gs, double t, const GsDatabase& gs_db);

struct ValidationPolicy {
  int max_inversions = 1;
  int max_inversion_steps = 3;  // waived when G_min is single-path
  int max_excess_steps = 2;
  // In-grid budgets are r_min - offset intra and c_min - offset cross
  // steps. 1 is the exact traversal length of the grid; 0 reads "exceeding
  // r_min" literally.
  int budget_offset = 1;
};

// At most max_inversions inversions totalling at most max_inversion_steps
// steps; the length bound is waived when the minimal grid is single-path.
bool check2(std::span<const PathTag> tags, bool gmin_single_path,
            const ValidationPolicy& policy = {});
bool check2(const TagSummary& summary, bool gmin_single_path,
            const ValidationPolicy& policy = {});

// Steps beyond the in-grid budgets total at most max_excess_steps.
bool check3(std::span<const PathTag> tags, int r_min, int c_min,
            const ValidationPolicy& policy = {});
bool check3(const TagSummary& summary, int r_min, int c_min,
            const ValidationPolicy& policy = {});

enum class Check { kPre, kCheck1, kCheck2, kCheck3 };

const char* ToString(Check check);

struct ValidationMetrics {
  int inversions = 0;
  int inversion_steps = 0;
  int intra_steps = 0;
  int cross_steps = 0;
  int r_min = 0;
  int c_min = 0;
  bool gmin_single_path = false;
  SatelliteId terminal;
};

struct ValidationVerdict {
  bool passed = true;
  std::optional<Check> failed_check;  // set iff !passed
  ValidationMetrics metrics;
};

// Checks 1-3 in order over the unconsumed tags, short-circuiting, with one
// tag pass. When ingress and terminal coincide the minimal grid is taken as
// the single satellite (r_min = c_min = 1, single-path).
ValidationVerdict validate_checks(const ConstellationConfig& cfg,
                                  const PacketHeader& header,
                                  SatelliteId ingress, double t,
                                  const GsDatabase& gs_db,
                                  const ValidationPolicy& policy = {});

// pre_check, then validate_checks.
ValidationVerdict validate(const ConstellationConfig& cfg,
                           AdmissionTable& table, const PacketHeader& header,
                           SatelliteId ingress, double size_bits, double t,
                           const GsDatabase& gs_db,
                           const ValidationPolicy& policy = {});

// Verdict tallies: one CSV row per outcome ("pass", "pre", "check1", ...).
class VerdictCounters {
 public:
  void Add(const ValidationVerdict& v);
  std::uint64_t passed() const { return passed_; }
  std::uint64_t failed(Check c) const;
  std::uint64_t total() const;
  void WriteCsv(std::ostream& out) const;

 private:
  std::uint64_t passed_ = 0;
  std::uint64_t failed_[4] = {0, 0, 0, 0};
};

}  // namespace starglider

#endif  // STARGLIDER_VALIDATOR_HPP_
