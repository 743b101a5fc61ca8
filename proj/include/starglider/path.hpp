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

#ifndef STARGLIDER_PATH_HPP_
#define STARGLIDER_PATH_HPP_

#include <vector>

#include <nlohmann/json.hpp>

#include "starglider/constellation.hpp"

namespace starglider {

// Ordered satellite sequence. An empty path means "no hops"; a path with a
// single satellite is a zero-length path at that satellite.
struct Path {
  std::vector<SatelliteId> sats;

  bool empty() const { return sats.empty(); }
  int HopCount() const {
    return sats.empty() ? 0 : static_cast<int>(sats.size()) - 1;
  }
  // Throws std::invalid_argument on a non-adjacent consecutive pair.
  std::vector<LinkId> Links(const ConstellationConfig& cfg) const;
  std::vector<Direction> Directions(const ConstellationConfig& cfg) const;
  double Delay(const Snapshot& snap) const;
  bool HasRepeatedSatellite() const;

  friend bool operator==(const Path&, const Path&) = default;
};

// Strict order used for every shortest-path tie-break in the library:
// delay, then hop count, then lexicographic satellite sequence.
bool PathLess(const Path& a, double delay_a, const Path& b, double delay_b);

// {"satellites": [[plane, index], ...], "link_delays_s": [...],
//  "total_delay_s": x}
nlohmann::json PathToJson(const Path& path, const Snapshot& snap);

}  // namespace starglider

#endif  // STARGLIDER_PATH_HPP_
