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

#ifndef STARGLIDER_FORWARDING_HPP_
#define STARGLIDER_FORWARDING_HPP_

#include <vector>

#include <nlohmann/json.hpp>

#include "starglider/constellation.hpp"
#include "starglider/link_state.hpp"
#include "starglider/path.hpp"
#include "starglider/path_codec.hpp"

namespace starglider {

enum class DropReason { kRerouteLinkFailed, kLoopFlagExhausted, kTagOverflow };

// Stable vocabulary: "reroute_link_failed", "loop_flag_exhausted",
// "tag_overflow".
const char* ToString(DropReason reason);

struct ForwardDecision {
  enum class Kind { kDeliver, kDrop, kForward };

  Kind kind = Kind::kDeliver;
  DropReason reason = DropReason::kRerouteLinkFailed;  // kDrop only
  Direction direction = Direction::kEast;               // kForward only
  bool rerouted = false;  // kForward took a fast-reroute branch
  PacketHeader header;    // header as it leaves (or stays at) the satellite
};

// Per-satellite forwarding step. Reads only the satellite id, the header and
// the liveness of the satellite's own four links.
//
// Decrement-on-send: the sender decrements the tag it follows; the receiver
// only skips tags already at zero steps. On a failed current direction the
// packet takes one hop along the next unconsumed tag (decrementing it) or,
// when none remains, one hop along the most recently consumed tag's
// direction with an appended one-step tag pointing back. At most
// kMaxLoopFlag reroutes per packet.
ForwardDecision process_tags(const ConstellationConfig& cfg, SatelliteId sat,
                             const PacketHeader& header,
                             const LinkStateMap& links);

struct TrajectoryHop {
  SatelliteId from;
  SatelliteId to;
  Direction direction = Direction::kEast;
  double delay_s = 0;
  bool rerouted = false;
};

struct Trajectory {
  enum class Outcome {
    kDelivered,
    kDropped,
    // A forwarding state (satellite, curr_index, remaining steps of the
    // current tag, loop_flag) repeated. Never expected; the walk stops.
    kLooped,
  };

  SatelliteId ingress;
  std::vector<TrajectoryHop> hops;
  Outcome outcome = Outcome::kDelivered;
  DropReason drop_reason = DropReason::kRerouteLinkFailed;  // kDropped only
  SatelliteId final_sat;  // destination when delivered, dropping satellite
  double total_delay_s = 0;
  int reroute_count = 0;  // equals final_header.loop_flag
  PacketHeader final_header;

  bool delivered() const { return outcome == Outcome::kDelivered; }
  int HopCount() const { return static_cast<int>(hops.size()); }
  Path Walk() const;
};

// Applies process_tags hop by hop from `ingress`, summing link delays of
// `snap`. Stops on delivery, drop, a repeated forwarding state, or after
// NumSatellites() hops.
Trajectory route_packet(const Snapshot& snap, SatelliteId ingress,
                        const PacketHeader& header, const LinkStateMap& links);
Trajectory route_packet(const ConstellationConfig& cfg, SatelliteId ingress,
                        const PacketHeader& header, const LinkStateMap& links,
                        double t);

const char* ToString(Trajectory::Outcome outcome);
void to_json(nlohmann::json& j, const Trajectory& tr);

}  // namespace starglider

#endif  // STARGLIDER_FORWARDING_HPP_
