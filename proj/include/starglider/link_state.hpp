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

#ifndef STARGLIDER_LINK_STATE_HPP_
#define STARGLIDER_LINK_STATE_HPP_

#include <set>

#include "starglider/constellation.hpp"

namespace starglider {

// Failed elements at one simulation instant. A failed satellite makes all
// four of its links unusable.
struct LinkStateMap {
  std::set<LinkId> failed_links;
  std::set<SatelliteId> failed_sats;

  bool LinkUp(const LinkId& link) const {
    return !failed_links.contains(link) && !failed_sats.contains(link.a) &&
           !failed_sats.contains(link.b);
  }
  bool LinkUp(const ConstellationConfig& cfg, SatelliteId sat,
              Direction dir) const {
    return LinkUp(LinkFrom(cfg, sat, dir));
  }
  bool SatUp(SatelliteId sat) const { return !failed_sats.contains(sat); }
  bool empty() const { return failed_links.empty() && failed_sats.empty(); }
};

}  // namespace starglider

#endif  // STARGLIDER_LINK_STATE_HPP_
