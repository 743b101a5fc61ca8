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

#include "starglider/forwarding.hpp"

#include <set>
#include <tuple>

namespace starglider {

const char* ToString(DropReason reason) {
  switch (reason) {
    case DropReason::kRerouteLinkFailed:
      return "reroute_link_failed";
    case DropReason::kLoopFlagExhausted:
      return "loop_flag_exhausted";
    case DropReason::kTagOverflow:
      return "tag_overflow";
  }
  return "?";
}

const char* ToString(Trajectory::Outcome outcome) {
  switch (outcome) {
    case Trajectory::Outcome::kDelivered:
      return "delivered";
    case Trajectory::Outcome::kDropped:
      return "dropped";
    case Trajectory::Outcome::kLooped:
      return "looped";
  }
  return "?";
}

ForwardDecision process_tags(const ConstellationConfig& cfg, SatelliteId sat,
                             const PacketHeader& header,
                             const LinkStateMap& links) {
  header.Validate();
  ForwardDecision out;
  out.header = header;
  PacketHeader& h = out.header;
  while (h.curr_index < h.tag_count() && h.tags[h.curr_index].steps == 0) {
    ++h.curr_index;
  }
  if (h.curr_index == h.tag_count()) {
    out.kind = ForwardDecision::Kind::kDeliver;
    return out;
  }
  auto drop = [&](DropReason reason) {
    out.kind = ForwardDecision::Kind::kDrop;
    out.reason = reason;
    return out;
  };
  auto forward = [&](Direction dir, bool rerouted) {
    out.kind = ForwardDecision::Kind::kForward;
    out.direction = dir;
    out.rerouted = rerouted;
    return out;
  };

  PathTag& current = h.tags[h.curr_index];
  if (links.LinkUp(cfg, sat, current.direction)) {
    --current.steps;
    return forward(current.direction, false);
  }
  if (h.loop_flag >= kMaxLoopFlag) return drop(DropReason::kLoopFlagExhausted);
  ++h.loop_flag;

  int k = h.curr_index + 1;
  while (k < h.tag_count() && h.tags[k].steps == 0) ++k;
  if (k < h.tag_count()) {
    PathTag& next = h.tags[k];
    if (!links.LinkUp(cfg, sat, next.direction)) {
      return drop(DropReason::kRerouteLinkFailed);
    }
    --next.steps;
    return forward(next.direction, true);
  }

  Direction dir;
  if (h.curr_index > 0) {
    dir = h.tags[h.curr_index - 1].direction;
  } else {
    dir = IsCrossOrbit(current.direction) ? Direction::kPrograde
                                          : Direction::kEast;
  }
  if (!links.LinkUp(cfg, sat, dir)) return drop(DropReason::kRerouteLinkFailed);
  if (h.tag_count() + 1 > kMaxTags) return drop(DropReason::kTagOverflow);
  h.tags.push_back({Opposite(dir), 1});
  return forward(dir, true);
}

Path Trajectory::Walk() const {
  Path p;
  p.sats.push_back(ingress);
  for (const TrajectoryHop& hop : hops) p.sats.push_back(hop.to);
  return p;
}

Trajectory route_packet(const Snapshot& snap, SatelliteId ingress,
                        const PacketHeader& header, const LinkStateMap& links) {
  const ConstellationConfig& cfg = snap.config();
  Trajectory tr;
  tr.ingress = ingress;
  tr.final_sat = ingress;
  PacketHeader h = header;
  SatelliteId at = ingress;
  std::set<std::tuple<SatelliteId, int, int, int>> seen;
  const int max_hops = cfg.NumSatellites();
  for (;;) {
    const ForwardDecision dec = process_tags(cfg, at, h, links);
    h = dec.header;
    if (dec.kind == ForwardDecision::Kind::kDeliver) {
      tr.outcome = Trajectory::Outcome::kDelivered;
      break;
    }
    if (dec.kind == ForwardDecision::Kind::kDrop) {
      tr.outcome = Trajectory::Outcome::kDropped;
      tr.drop_reason = dec.reason;
      break;
    }
    // State after the decision: remaining steps of the tag in use.
    const int remaining = h.tags[h.curr_index].steps;
    if (!seen.insert({at, h.curr_index, remaining, h.loop_flag}).second ||
        tr.HopCount() >= max_hops) {
      tr.outcome = Trajectory::Outcome::kLooped;
      break;
    }
    const SatelliteId next = neighbor(cfg, at, dec.direction);
    const double delay = snap.link(at, dec.direction).delay_s;
    tr.hops.push_back({at, next, dec.direction, delay, dec.rerouted});
    tr.total_delay_s += delay;
    at = next;
  }
  tr.final_sat = at;
  tr.final_header = h;
  tr.reroute_count = h.loop_flag;
  return tr;
}

Trajectory route_packet(const ConstellationConfig& cfg, SatelliteId ingress,
                        const PacketHeader& header, const LinkStateMap& links,
                        double t) {
  return route_packet(Snapshot(cfg, t), ingress, header, links);
}

void to_json(nlohmann::json& j, const Trajectory& tr) {
  nlohmann::json hops = nlohmann::json::array();
  for (const TrajectoryHop& hop : tr.hops) {
    hops.push_back({{"from", {hop.from.plane, hop.from.index}},
                    {"to", {hop.to.plane, hop.to.index}},
                    {"direction", std::string(1, DirectionLetter(hop.direction))},
                    {"delay_s", hop.delay_s},
                    {"rerouted", hop.rerouted}});
  }
  j = nlohmann::json{
      {"ingress", {tr.ingress.plane, tr.ingress.index}},
      {"outcome", ToString(tr.outcome)},
      {"final_sat", {tr.final_sat.plane, tr.final_sat.index}},
      {"hops", hops},
      {"total_delay_s", tr.total_delay_s},
      {"reroute_count", tr.reroute_count},
      {"tags", ToString(tr.final_header.tags)}};
  if (tr.outcome == Trajectory::Outcome::kDropped) {
    j["drop_reason"] = ToString(tr.drop_reason);
  }
}

}  // namespace starglider
