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

#ifndef STARGLIDER_BASELINES_HPP_
#define STARGLIDER_BASELINES_HPP_

#include <optional>
#include <vector>

#include "starglider/constellation.hpp"
#include "starglider/link_state.hpp"
#include "starglider/path.hpp"
#include "starglider/path_codec.hpp"

namespace starglider {

// +Grid adjacency weighted by link delay at one instant, with failed links
// and satellites removed. Weights are symmetric and positive.
class WeightedSnapshot {
 public:
  WeightedSnapshot(const Snapshot& geometry, LinkStateMap failures = {});
  WeightedSnapshot(const ConstellationConfig& cfg, double t,
                   LinkStateMap failures = {});

  const ConstellationConfig& config() const { return geometry_.config(); }
  const Snapshot& geometry() const { return geometry_; }
  const LinkStateMap& failures() const { return failures_; }
  bool Usable(SatelliteId sat, Direction dir) const;
  // Infinity for failed links.
  double Weight(SatelliteId sat, Direction dir) const;
  WeightedSnapshot WithExtraFailures(const LinkStateMap& extra) const;

 private:
  Snapshot geometry_;
  LinkStateMap failures_;
};

// Single-source shortest-path tree with the library-wide tie-break.
struct ShortestPathTree {
  SatelliteId source;
  std::vector<double> dist;  // indexed by FlatIndex; infinity if unreachable
  std::vector<int> hops;
  std::vector<int> pred;  // -1 at the source and at unreachable satellites

  std::optional<Path> PathTo(const ConstellationConfig& cfg,
                             SatelliteId d) const;
};

ShortestPathTree dijkstra_tree(const WeightedSnapshot& snap, SatelliteId s);

// Empty path when s == d; nullopt when d is unreachable.
std::optional<Path> dijkstra(const WeightedSnapshot& snap, SatelliteId s,
                             SatelliteId d);

// Loop-free alternate protecting link (u, v) towards d: the neighbor n != v
// with dist(n, d) < dist(n, u) + dist(u, d) minimizing dist(u, n) +
// dist(n, d). Distances are taken on `snap` (the pre-failure view).
std::optional<SatelliteId> lfa_backup(const WeightedSnapshot& snap,
                                      SatelliteId u, SatelliteId v,
                                      SatelliteId d);

// Link-protection bypass: shortest u -> v path avoiding (u, v) spliced into
// `primary` in place of that link, with loops removed.
std::optional<Path> mpls_frr_backup(const WeightedSnapshot& snap,
                                    const Path& primary, SatelliteId u,
                                    SatelliteId v);

// Removes cycles: whenever a satellite reappears, the segment between its
// two visits is dropped.
Path RemoveLoops(const Path& path);

// Passes iff delay(expanded path) <= (1 + pct/100) * delay(shortest).
bool delay_threshold_validate(const WeightedSnapshot& snap,
                              const std::vector<PathTag>& tags,
                              SatelliteId ingress, double stretch_pct);

}  // namespace starglider

#endif  // STARGLIDER_BASELINES_HPP_
