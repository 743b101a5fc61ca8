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

#include "starglider/validator.hpp"

#include <fstream>
#include <stdexcept>

#include "starglider/grid.hpp"

namespace starglider {
namespace {

thread_local std::uint64_t g_tag_passes = 0;

struct GminInfo {
  int r_min = 1;
  int c_min = 1;
  bool single_path = true;
};

GminInfo Gmin(const ConstellationConfig& cfg, SatelliteId s, SatelliteId d) {
  if (s == d) return {};
  const MinimalGrid g = minimal_grid(cfg, s, d);
  return {g.r_min, g.c_min, g.grid.SinglePath()};
}

std::span<const PathTag> Unconsumed(const PacketHeader& h) {
  return std::span<const PathTag>(h.tags).subspan(h.curr_index);
}

}  // namespace

AdmissionTable::AdmissionTable(double bucket_window_s)
    : window_s_(bucket_window_s) {
  if (!(bucket_window_s > 0)) {
    throw std::invalid_argument("bucket window must be positive");
  }
}

void AdmissionTable::Register(const AdmissionEntry& entry) {
  if (!(entry.rate_bps > 0)) {
    throw std::invalid_argument("rate_bps must be positive");
  }
  State st;
  st.entry = entry;
  st.tokens = window_s_ * entry.rate_bps;
  pairs_[{entry.src_gs, entry.dst_gs}] = st;
}

const AdmissionEntry* AdmissionTable::Find(std::uint32_t src_gs,
                                           std::uint32_t dst_gs) const {
  auto it = pairs_.find({src_gs, dst_gs});
  return it == pairs_.end() ? nullptr : &it->second.entry;
}

bool AdmissionTable::Admit(std::uint32_t src_gs, std::uint32_t dst_gs,
                           SatelliteId ingress, double size_bits, double t) {
  auto it = pairs_.find({src_gs, dst_gs});
  if (it == pairs_.end()) return false;
  State& st = it->second;
  if (st.entry.ingress != ingress) return false;
  const double capacity = window_s_ * st.entry.rate_bps;
  if (st.started && t > st.last_t) {
    st.tokens = std::min(capacity, st.tokens + (t - st.last_t) * st.entry.rate_bps);
  }
  if (!st.started || t > st.last_t) st.last_t = t;
  st.started = true;
  if (st.tokens < size_bits) return false;
  st.tokens -= size_bits;
  return true;
}

AdmissionTable AdmissionTableFromJson(const nlohmann::json& j) {
  AdmissionTable table(j.value("bucket_window_s", 0.1));
  for (const nlohmann::json& e : j.at("pairs")) {
    AdmissionEntry entry;
    entry.src_gs = e.at("src_gs").get<std::uint32_t>();
    entry.dst_gs = e.at("dst_gs").get<std::uint32_t>();
    entry.ingress = {e.at("ingress").at(0).get<int>(),
                     e.at("ingress").at(1).get<int>()};
    entry.rate_bps = e.at("rate_bps").get<double>();
    table.Register(entry);
  }
  return table;
}

AdmissionTable LoadAdmissionTable(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return AdmissionTableFromJson(nlohmann::json::parse(in));
}

bool pre_check(AdmissionTable& table, const PacketHeader& header,
               SatelliteId ingress, double size_bits, double t) {
  return table.Admit(header.src_gs, header.dst_gs, ingress, size_bits, t);
}

std::uint64_t tag_pass_count() { return g_tag_passes; }
void reset_tag_pass_count() { g_tag_passes = 0; }

TagSummary scan_tags(const ConstellationConfig& cfg,
                     std::span<const PathTag> tags, SatelliteId ingress) {
  ++g_tag_passes;
  TagSummary s;
  int dp = 0, di = 0;
  // First direction seen on the cross (0) and intra (1) axis.
  std::optional<Direction> first[2];
  for (const PathTag& t : tags) {
    const bool cross = IsCrossOrbit(t.direction);
    switch (t.direction) {
      case Direction::kEast:
        dp += t.steps;
        break;
      case Direction::kWest:
        dp -= t.steps;
        break;
      case Direction::kPrograde:
        di += t.steps;
        break;
      case Direction::kRetrograde:
        di -= t.steps;
        break;
    }
    (cross ? s.cross_steps : s.intra_steps) += t.steps;
    if (t.steps == 0) continue;
    std::optional<Direction>& f = first[cross ? 0 : 1];
    if (!f) {
      f = t.direction;
    } else if (t.direction != *f) {
      ++s.inversions;
      s.inversion_steps += t.steps;
    }
  }
  s.terminal = Canonical(cfg, {ingress.plane + dp, ingress.index + di});
  return s;
}

bool check1(const ConstellationConfig& cfg, const TagSummary& summary,
            std::uint32_t dst_gs, double t, const GsDatabase& gs_db) {
  const GroundStation* gs = gs_db.Find(dst_gs);
  if (gs == nullptr) return false;
  return is_visible(cfg, *gs, summary.terminal, t);
}

bool check1(const ConstellationConfig& cfg, std::span<const PathTag> tags,
            SatelliteId ingress, std::uint32_t dst_gs, double t,
            const GsDatabase& gs_db) {
  return check1(cfg, scan_tags(cfg, tags, ingress), dst_gs, t, gs_db);
}

bool check2(const TagSummary& summary, bool gmin_single_path,
            const ValidationPolicy& policy) {
  if (summary.inversions > policy.max_inversions) return false;
  return gmin_single_path ||
         summary.inversion_steps <= policy.max_inversion_steps;
}

bool check2(std::span<const PathTag> tags, bool gmin_single_path,
            const ValidationPolicy& policy) {
  // Only the direction bookkeeping is needed; the origin is irrelevant.
  ConstellationConfig unit;
  return check2(scan_tags(unit, tags, {}), gmin_single_path, policy);
}

bool check3(const TagSummary& summary, int r_min, int c_min,
            const ValidationPolicy& policy) {
  const int excess =
      std::max(0, summary.intra_steps - (r_min - policy.budget_offset)) +
      std::max(0, summary.cross_steps - (c_min - policy.budget_offset));
  return excess <= policy.max_excess_steps;
}

bool check3(std::span<const PathTag> tags, int r_min, int c_min,
            const ValidationPolicy& policy) {
  ConstellationConfig unit;
  return check3(scan_tags(unit, tags, {}), r_min, c_min, policy);
}

const char* ToString(Check check) {
  switch (check) {
    case Check::kPre:
      return "pre";
    case Check::kCheck1:
      return "check1";
    case Check::kCheck2:
      return "check2";
    case Check::kCheck3:
      return "check3";
  }
  return "?";
}

ValidationVerdict validate_checks(const ConstellationConfig& cfg,
                                  const PacketHeader& header,
                                  SatelliteId ingress, double t,
                                  const GsDatabase& gs_db,
                                  const ValidationPolicy& policy) {
  ValidationVerdict v;
  const TagSummary s = scan_tags(cfg, Unconsumed(header), ingress);
  ValidationMetrics& m = v.metrics;
  m.inversions = s.inversions;
  m.inversion_steps = s.inversion_steps;
  m.intra_steps = s.intra_steps;
  m.cross_steps = s.cross_steps;
  m.terminal = s.terminal;
  auto fail = [&](Check c) {
    v.passed = false;
    v.failed_check = c;
    return v;
  };
  if (!check1(cfg, s, header.dst_gs, t, gs_db)) return fail(Check::kCheck1);
  const GminInfo g = Gmin(cfg, ingress, s.terminal);
  m.r_min = g.r_min;
  m.c_min = g.c_min;
  m.gmin_single_path = g.single_path;
  if (!check2(s, g.single_path, policy)) return fail(Check::kCheck2);
  if (!check3(s, g.r_min, g.c_min, policy)) return fail(Check::kCheck3);
  return v;
}

ValidationVerdict validate(const ConstellationConfig& cfg,
                           AdmissionTable& table, const PacketHeader& header,
                           SatelliteId ingress, double size_bits, double t,
                           const GsDatabase& gs_db,
                           const ValidationPolicy& policy) {
  if (!pre_check(table, header, ingress, size_bits, t)) {
    ValidationVerdict v;
    v.passed = false;
    v.failed_check = Check::kPre;
    return v;
  }
  return validate_checks(cfg, header, ingress, t, gs_db, policy);
}

void VerdictCounters::Add(const ValidationVerdict& v) {
  if (v.passed) {
    ++passed_;
  } else {
    ++failed_[static_cast<int>(*v.failed_check)];
  }
}

std::uint64_t VerdictCounters::failed(Check c) const {
  return failed_[static_cast<int>(c)];
}

std::uint64_t VerdictCounters::total() const {
  return passed_ + failed_[0] + failed_[1] + failed_[2] + failed_[3];
}

void VerdictCounters::WriteCsv(std::ostream& out) const {
  out << "outcome,count\n";
  out << "pass," << passed_ << "\n";
  for (Check c : {Check::kPre, Check::kCheck1, Check::kCheck2, Check::kCheck3}) {
    out << ToString(c) << "," << failed(c) << "\n";
  }
}

}  // namespace starglider
