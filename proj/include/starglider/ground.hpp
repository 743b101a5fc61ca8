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

#ifndef STARGLIDER_GROUND_HPP_
#define STARGLIDER_GROUND_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "starglider/baselines.hpp"
#include "starglider/constellation.hpp"
#include "starglider/link_state.hpp"
#include "starglider/path.hpp"
#include "starglider/path_codec.hpp"

namespace starglider {

struct GroundStation {
  std::uint32_t id = 0;
  std::string name;
  double latitude_deg = 0;
  double longitude_deg = 0;
  double min_elevation_deg = 25.0;  // in (0, 90)
  int antenna_count = 1;

  // Throws std::invalid_argument when an invariant is violated.
  void Validate() const;
};

// Spherical-Earth position in the Earth-fixed frame.
Vec3 ground_position(const ConstellationConfig& cfg, const GroundStation& gs);

// Elevation of `sat` above the local horizon of `gs`, Earth rotation
// included.
double elevation_deg(const ConstellationConfig& cfg, const GroundStation& gs,
                     SatelliteId sat, double t);
bool is_visible(const ConstellationConfig& cfg, const GroundStation& gs,
                SatelliteId sat, double t);

// Satellites at or above the elevation mask, highest elevation first; ties
// go to the smaller satellite id.
std::vector<SatelliteId> visible_sats(const ConstellationConfig& cfg,
                                      const GroundStation& gs, double t);
std::vector<SatelliteId> visible_sats(const Snapshot& snap,
                                      const GroundStation& gs);

// Immutable id -> station map.
class GsDatabase {
 public:
  GsDatabase() = default;
  explicit GsDatabase(std::vector<GroundStation> stations);

  // Throws std::invalid_argument on a duplicate id.
  void Add(GroundStation gs);
  const GroundStation* Find(std::uint32_t id) const;
  const std::vector<GroundStation>& stations() const { return list_; }
  std::size_t size() const { return list_.size(); }

 private:
  std::vector<GroundStation> list_;
  std::map<std::uint32_t, std::size_t> by_id_;
};

// JSON: [{"id", "name"?, "lat", "lon", "min_elevation_deg"?,
// "antenna_count"?}, ...] or {"stations": [...]}.
GsDatabase GsDatabaseFromJson(const nlohmann::json& j);
GsDatabase LoadGsDatabase(const std::string& path);
// CSV with header "id,name,latitude_deg,longitude_deg".
GsDatabase LoadCityCsv(const std::string& path,
                       double min_elevation_deg = 25.0);

enum class RouteMode { kDijkstra, kTheory };

const char* ToString(RouteMode mode);

struct SourceRoute {
  SatelliteId ingress;
  SatelliteId egress;
  Path path;
  PacketHeader header;
  // Theory mode only: the theory path crossed a known failure and the
  // Dijkstra path over the failure-free snapshot was used instead.
  bool theory_fallback = false;
};

// Ingress and egress are the highest-elevation visible satellites of the
// two stations. Throws std::invalid_argument when either sees none, or when
// known failures disconnect them.
SourceRoute source_route(const Snapshot& snap, const GroundStation& src,
                         const GroundStation& dst, RouteMode mode,
                         const LinkStateMap& failures_known = {});

enum class AttackVariant { kConcatenation, kDetour };

const char* ToString(AttackVariant variant);

struct AttackPath {
  AttackVariant variant = AttackVariant::kConcatenation;
  Path path;
  std::vector<PathTag> tags;
};

struct AttackTarget {
  std::optional<SatelliteId> sat;
  std::optional<LinkId> link;

  static AttackTarget Satellite(SatelliteId s) { return {s, std::nullopt}; }
  static AttackTarget Link(LinkId l) { return {std::nullopt, l}; }
};

// Malicious s -> d walks through `target`: the concatenation of shortest
// paths s -> target -> d, and the detour variant that follows the s -> d
// shortest path up to a random satellite x before heading to the target.
// Throws std::invalid_argument when the target lies on the s -> d shortest
// path or when s == d.
std::vector<AttackPath> attack_paths(const WeightedSnapshot& snap,
                                     SatelliteId src, SatelliteId dst,
                                     const AttackTarget& target,
                                     std::mt19937_64& rng);

// Hop distance on the torus (ignoring failures) from `sat` to the nearest
// satellite of `path`.
int hop_distance_to_path(const ConstellationConfig& cfg, SatelliteId sat,
                         const Path& path);

// Satellites exactly `hops` hops from `path`, sorted.
std::vector<SatelliteId> satellites_at_distance(const ConstellationConfig& cfg,
                                                const Path& path, int hops);
// Links off `path` whose nearer endpoint is exactly `hops` hops from it,
// sorted. hops = 0 gives the links hanging off the path.
std::vector<LinkId> links_at_distance(const ConstellationConfig& cfg,
                                      const Path& path, int hops);

}  // namespace starglider

#endif  // STARGLIDER_GROUND_HPP_
