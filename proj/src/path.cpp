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

#include "starglider/path.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace starglider {

std::vector<LinkId> Path::Links(const ConstellationConfig& cfg) const {
  std::vector<LinkId> out;
  for (std::size_t k = 1; k < sats.size(); ++k) {
    out.push_back(MakeLink(cfg, sats[k - 1], sats[k]));
  }
  return out;
}

std::vector<Direction> Path::Directions(const ConstellationConfig& cfg) const {
  std::vector<Direction> out;
  for (std::size_t k = 1; k < sats.size(); ++k) {
    bool found = false;
    for (Direction dir : kAllDirections) {
      if (neighbor(cfg, sats[k - 1], dir) == sats[k]) {
        out.push_back(dir);
        found = true;
        break;
      }
    }
    if (!found) {
      throw std::invalid_argument("path step " + ToString(sats[k - 1]) +
                                  " -> " + ToString(sats[k]) +
                                  " is not a link");
    }
  }
  return out;
}

double Path::Delay(const Snapshot& snap) const {
  double total = 0;
  for (std::size_t k = 1; k < sats.size(); ++k) {
    total += snap.delay(sats[k - 1], sats[k]);
  }
  return total;
}

bool Path::HasRepeatedSatellite() const {
  std::unordered_set<SatelliteId> seen;
  for (const SatelliteId& s : sats) {
    if (!seen.insert(s).second) return true;
  }
  return false;
}

bool PathLess(const Path& a, double delay_a, const Path& b, double delay_b) {
  if (delay_a != delay_b) return delay_a < delay_b;
  if (a.HopCount() != b.HopCount()) return a.HopCount() < b.HopCount();
  return std::lexicographical_compare(a.sats.begin(), a.sats.end(),
                                      b.sats.begin(), b.sats.end());
}

nlohmann::json PathToJson(const Path& path, const Snapshot& snap) {
  nlohmann::json sats = nlohmann::json::array();
  for (const SatelliteId& s : path.sats) sats.push_back({s.plane, s.index});
  nlohmann::json delays = nlohmann::json::array();
  double total = 0;
  for (std::size_t k = 1; k < path.sats.size(); ++k) {
    const double d = snap.delay(path.sats[k - 1], path.sats[k]);
    delays.push_back(d);
    total += d;
  }
  return {{"satellites", sats}, {"link_delays_s", delays},
          {"total_delay_s", total}};
}

}  // namespace starglider
