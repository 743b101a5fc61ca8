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

#include "starglider/ground.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

#include "starglider/grid.hpp"

namespace starglider {
namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

double Dot(const Vec3& a, const Vec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

double ElevationRad(const Vec3& station, const Vec3& sat) {
  const Vec3 los{sat.x - station.x, sat.y - station.y, sat.z - station.z};
  // Rounding can push the sine past 1 at the zenith.
  const double sine = Dot(los, station) / (Norm(los) * Norm(station));
  return std::asin(std::clamp(sine, -1.0, 1.0));
}

// Station position in the inertial frame at t: the Earth-fixed frame lags
// the inertial one by earth_rotation * t.
Vec3 InertialStation(const ConstellationConfig& cfg, const GroundStation& gs,
                     double t) {
  const Vec3 e = ground_position(cfg, gs);
  const double th = cfg.earth_rotation_rad_s * t;
  const double c = std::cos(th), s = std::sin(th);
  return {c * e.x - s * e.y, s * e.x + c * e.y, e.z};
}

int Mod(int a, int m) {
  const int r = a % m;
  return r < 0 ? r + m : r;
}

int TorusHops(const ConstellationConfig& cfg, SatelliteId a, SatelliteId b) {
  const int dp = Mod(b.plane - a.plane, cfg.num_planes);
  const int di = Mod(b.index - a.index, cfg.sats_per_plane);
  return std::min(dp, cfg.num_planes - dp) +
         std::min(di, cfg.sats_per_plane - di);
}

Path Concat(Path a, const Path& b) {
  if (a.sats.empty()) return b;
  a.sats.insert(a.sats.end(), b.sats.begin() + 1, b.sats.end());
  return a;
}

Path ShortestOrThrow(const WeightedSnapshot& snap, SatelliteId s,
                     SatelliteId d) {
  std::optional<Path> p = dijkstra(snap, s, d);
  if (!p) throw std::invalid_argument("no path between satellites");
  if (p->empty()) p->sats.push_back(s);
  return *p;
}

}  // namespace

void GroundStation::Validate() const {
  if (!(min_elevation_deg > 0 && min_elevation_deg < 90)) {
    throw std::invalid_argument("min_elevation_deg must be in (0, 90)");
  }
  if (!(latitude_deg >= -90 && latitude_deg <= 90)) {
    throw std::invalid_argument("latitude_deg must be in [-90, 90]");
  }
  if (antenna_count < 1) {
    throw std::invalid_argument("antenna_count must be positive");
  }
}

Vec3 ground_position(const ConstellationConfig& cfg, const GroundStation& gs) {
  const double lat = gs.latitude_deg * kDeg, lon = gs.longitude_deg * kDeg;
  const double r = cfg.earth_radius_m;
  return {r * std::cos(lat) * std::cos(lon), r * std::cos(lat) * std::sin(lon),
          r * std::sin(lat)};
}

double elevation_deg(const ConstellationConfig& cfg, const GroundStation& gs,
                     SatelliteId sat, double t) {
  const GeoState g = satellite_geo(cfg, sat, t, Frame::kEarthFixed);
  return ElevationRad(ground_position(cfg, gs), g.ecef) / kDeg;
}

bool is_visible(const ConstellationConfig& cfg, const GroundStation& gs,
                SatelliteId sat, double t) {
  return elevation_deg(cfg, gs, sat, t) >= gs.min_elevation_deg;
}

std::vector<SatelliteId> visible_sats(const Snapshot& snap,
                                      const GroundStation& gs) {
  const ConstellationConfig& cfg = snap.config();
  const Vec3 station = InertialStation(cfg, gs, snap.time());
  std::vector<std::pair<double, SatelliteId>> seen;
  for (int f = 0; f < cfg.NumSatellites(); ++f) {
    const SatelliteId sat = FromFlat(cfg, f);
    const double el = ElevationRad(station, snap.geo(sat).ecef) / kDeg;
    if (el >= gs.min_elevation_deg) seen.push_back({el, sat});
  }
  std::sort(seen.begin(), seen.end(), [](const auto& x, const auto& y) {
    if (x.first != y.first) return x.first > y.first;
    return x.second < y.second;
  });
  std::vector<SatelliteId> out;
  for (const auto& [el, sat] : seen) out.push_back(sat);
  return out;
}

std::vector<SatelliteId> visible_sats(const ConstellationConfig& cfg,
                                      const GroundStation& gs, double t) {
  return visible_sats(Snapshot(cfg, t), gs);
}

GsDatabase::GsDatabase(std::vector<GroundStation> stations) {
  for (GroundStation& gs : stations) Add(std::move(gs));
}

void GsDatabase::Add(GroundStation gs) {
  gs.Validate();
  if (by_id_.contains(gs.id)) {
    throw std::invalid_argument("duplicate ground station id " +
                                std::to_string(gs.id));
  }
  by_id_[gs.id] = list_.size();
  list_.push_back(std::move(gs));
}

const GroundStation* GsDatabase::Find(std::uint32_t id) const {
  auto it = by_id_.find(id);
  return it == by_id_.end() ? nullptr : &list_[it->second];
}

GsDatabase GsDatabaseFromJson(const nlohmann::json& j) {
  const nlohmann::json& arr = j.is_object() ? j.at("stations") : j;
  GsDatabase db;
  for (const nlohmann::json& e : arr) {
    GroundStation gs;
    gs.id = e.at("id").get<std::uint32_t>();
    gs.name = e.value("name", "");
    gs.latitude_deg = e.at("lat").get<double>();
    gs.longitude_deg = e.at("lon").get<double>();
    gs.min_elevation_deg = e.value("min_elevation_deg", 25.0);
    gs.antenna_count = e.value("antenna_count", 1);
    db.Add(std::move(gs));
  }
  return db;
}

GsDatabase LoadGsDatabase(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return GsDatabaseFromJson(nlohmann::json::parse(in));
}

GsDatabase LoadCityCsv(const std::string& path, double min_elevation_deg) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line) ||
      line.rfind("id,name,latitude_deg,longitude_deg", 0) != 0) {
    throw std::runtime_error(path + ": unexpected CSV header");
  }
  GsDatabase db;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string id, name, lat, lon;
    std::getline(ss, id, ',');
    std::getline(ss, name, ',');
    std::getline(ss, lat, ',');
    std::getline(ss, lon, ',');
    GroundStation gs;
    gs.id = static_cast<std::uint32_t>(std::stoul(id));
    gs.name = name;
    gs.latitude_deg = std::stod(lat);
    gs.longitude_deg = std::stod(lon);
    gs.min_elevation_deg = min_elevation_deg;
    db.Add(std::move(gs));
  }
  return db;
}

const char* ToString(RouteMode mode) {
  return mode == RouteMode::kDijkstra ? "dijkstra" : "theory";
}

const char* ToString(AttackVariant variant) {
  return variant == AttackVariant::kConcatenation ? "concat" : "detour";
}

SourceRoute source_route(const Snapshot& snap, const GroundStation& src,
                         const GroundStation& dst, RouteMode mode,
                         const LinkStateMap& failures_known) {
  const ConstellationConfig& cfg = snap.config();
  const std::vector<SatelliteId> up = visible_sats(snap, src);
  const std::vector<SatelliteId> down = visible_sats(snap, dst);
  if (up.empty()) throw std::invalid_argument("source GS sees no satellite");
  if (down.empty()) {
    throw std::invalid_argument("destination GS sees no satellite");
  }
  SourceRoute r;
  r.ingress = up.front();
  r.egress = down.front();
  const WeightedSnapshot weighted(snap, failures_known);
  if (mode == RouteMode::kTheory) {
    r.path = theory_shortest_path(snap, r.ingress, r.egress);
    if (r.path.empty()) r.path.sats.push_back(r.ingress);
    for (const LinkId& l : r.path.Links(cfg)) {
      if (!failures_known.LinkUp(l)) {
        r.theory_fallback = true;
        break;
      }
    }
  }
  if (mode == RouteMode::kDijkstra || r.theory_fallback) {
    r.path = ShortestOrThrow(weighted, r.ingress, r.egress);
  }
  r.header.src_gs = src.id;
  r.header.dst_gs = dst.id;
  r.header.tags = encode_path(cfg, r.path);
  r.header.Validate();
  return r;
}

int hop_distance_to_path(const ConstellationConfig& cfg, SatelliteId sat,
                         const Path& path) {
  int best = cfg.NumSatellites();
  for (const SatelliteId& p : path.sats) {
    best = std::min(best, TorusHops(cfg, sat, p));
  }
  return best;
}

std::vector<SatelliteId> satellites_at_distance(const ConstellationConfig& cfg,
                                                const Path& path, int hops) {
  std::vector<SatelliteId> out;
  for (int f = 0; f < cfg.NumSatellites(); ++f) {
    const SatelliteId sat = FromFlat(cfg, f);
    if (hop_distance_to_path(cfg, sat, path) == hops) out.push_back(sat);
  }
  return out;
}

std::vector<LinkId> links_at_distance(const ConstellationConfig& cfg,
                                      const Path& path, int hops) {
  std::vector<int> dist(cfg.NumSatellites());
  for (int f = 0; f < cfg.NumSatellites(); ++f) {
    dist[f] = hop_distance_to_path(cfg, FromFlat(cfg, f), path);
  }
  std::set<LinkId> on_path;
  if (path.sats.size() > 1) {
    for (const LinkId& l : path.Links(cfg)) on_path.insert(l);
  }
  std::vector<LinkId> out;
  for (int f = 0; f < cfg.NumSatellites(); ++f) {
    const SatelliteId a = FromFlat(cfg, f);
    for (Direction dir : {Direction::kEast, Direction::kPrograde}) {
      const LinkId l = LinkFrom(cfg, a, dir);
      if (on_path.contains(l)) continue;
      if (std::min(dist[f], dist[FlatIndex(cfg, l.b)]) == hops) {
        out.push_back(l);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<AttackPath> attack_paths(const WeightedSnapshot& snap,
                                     SatelliteId src, SatelliteId dst,
                                     const AttackTarget& target,
                                     std::mt19937_64& rng) {
  const ConstellationConfig& cfg = snap.config();
  if (src == dst) throw std::invalid_argument("source equals destination");
  const Path sp = ShortestOrThrow(snap, src, dst);
  if (target.sat) {
    if (std::find(sp.sats.begin(), sp.sats.end(), *target.sat) !=
        sp.sats.end()) {
      throw std::invalid_argument("target satellite lies on the shortest path");
    }
  } else if (target.link) {
    for (const LinkId& l : sp.Links(cfg)) {
      if (l == *target.link) {
        throw std::invalid_argument("target link lies on the shortest path");
      }
    }
  } else {
    throw std::invalid_argument("empty attack target");
  }

  // Walk from `from` through the target to `dst`. For a link target both
  // traversal orientations are tried and the lower-delay one kept.
  auto via_target = [&](SatelliteId from) {
    if (target.sat) {
      return Concat(ShortestOrThrow(snap, from, *target.sat),
                    ShortestOrThrow(snap, *target.sat, dst));
    }
    const LinkId& l = *target.link;
    Path best;
    double best_delay = 0;
    for (auto [first, second] : {std::pair{l.a, l.b}, std::pair{l.b, l.a}}) {
      Path p = ShortestOrThrow(snap, from, first);
      p.sats.push_back(second);
      p = Concat(p, ShortestOrThrow(snap, second, dst));
      const double delay = p.Delay(snap.geometry());
      if (best.empty() || delay < best_delay) {
        best = p;
        best_delay = delay;
      }
    }
    return best;
  };

  std::vector<AttackPath> out;
  AttackPath concat;
  concat.variant = AttackVariant::kConcatenation;
  concat.path = via_target(src);
  concat.tags = encode_path(cfg, concat.path);
  out.push_back(std::move(concat));

  std::uniform_int_distribution<std::size_t> pick(0, sp.sats.size() - 2);
  const std::size_t x = pick(rng);
  AttackPath detour;
  detour.variant = AttackVariant::kDetour;
  detour.path.sats.assign(sp.sats.begin(), sp.sats.begin() + x + 1);
  detour.path = Concat(detour.path, via_target(sp.sats[x]));
  detour.tags = encode_path(cfg, detour.path);
  out.push_back(std::move(detour));
  return out;
}

}  // namespace starglider
