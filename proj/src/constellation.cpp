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

#include "starglider/constellation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <queue>
#include <random>
#include <sstream>
#include <stdexcept>

namespace starglider {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

int Mod(int a, int m) {
  int r = a % m;
  return r < 0 ? r + m : r;
}

std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

Direction Opposite(Direction dir) {
  switch (dir) {
    case Direction::kEast:
      return Direction::kWest;
    case Direction::kWest:
      return Direction::kEast;
    case Direction::kPrograde:
      return Direction::kRetrograde;
    case Direction::kRetrograde:
      return Direction::kPrograde;
  }
  return dir;
}

bool IsCrossOrbit(Direction dir) {
  return dir == Direction::kEast || dir == Direction::kWest;
}

char DirectionLetter(Direction dir) {
  switch (dir) {
    case Direction::kEast:
      return 'E';
    case Direction::kWest:
      return 'W';
    case Direction::kPrograde:
      return 'P';
    case Direction::kRetrograde:
      return 'R';
  }
  return '?';
}

double ConstellationConfig::Period() const {
  const double a = SemiMajorAxis();
  return kTwoPi * std::sqrt(a * a * a / mu_m3s2);
}

double ConstellationConfig::MeanMotion() const { return kTwoPi / Period(); }

double ConstellationConfig::InclinationRad() const {
  return inclination_deg * kPi / 180.0;
}

void ConstellationConfig::Validate() const {
  if (num_planes < 3) throw std::invalid_argument("num_planes must be >= 3");
  if (sats_per_plane < 4) {
    throw std::invalid_argument("sats_per_plane must be >= 4");
  }
  if (!(inclination_deg >= 0.0 && inclination_deg < 90.0)) {
    throw std::invalid_argument("inclination_deg must be in [0, 90)");
  }
  if (!(phase_offset >= 0.0 && phase_offset < 1.0)) {
    throw std::invalid_argument("phase_offset must be in [0, 1)");
  }
  if (!(altitude_m > 0 && earth_radius_m > 0 && mu_m3s2 > 0 &&
        light_speed_m_s > 0 && earth_rotation_rad_s >= 0)) {
    throw std::invalid_argument("physical constants must be positive");
  }
  const double p = Period();
  if (!std::isfinite(p) || p <= 0) {
    throw std::invalid_argument("orbital period is not finite");
  }
}

ConstellationConfig ParseConstellationConfig(const std::string& text) {
  ConstellationConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key = value");
    }
    const std::string key = Trim(line.substr(0, eq));
    const std::string value = Trim(line.substr(eq + 1));
    double v = 0;
    try {
      std::size_t used = 0;
      v = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::exception&) {
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": bad number '" + value + "'");
    }
    if (key == "num_planes") {
      cfg.num_planes = static_cast<int>(v);
    } else if (key == "sats_per_plane") {
      cfg.sats_per_plane = static_cast<int>(v);
    } else if (key == "altitude_m") {
      cfg.altitude_m = v;
    } else if (key == "inclination_deg") {
      cfg.inclination_deg = v;
    } else if (key == "phase_offset") {
      cfg.phase_offset = v;
    } else if (key == "earth_radius_m") {
      cfg.earth_radius_m = v;
    } else if (key == "mu_m3s2") {
      cfg.mu_m3s2 = v;
    } else if (key == "earth_rotation_rad_s") {
      cfg.earth_rotation_rad_s = v;
    } else if (key == "light_speed_m_s") {
      cfg.light_speed_m_s = v;
    } else if (key == "intra_spread_tolerance") {
      cfg.intra_spread_tolerance = v;
    } else {
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": unknown key '" + key + "'");
    }
  }
  cfg.Validate();
  return cfg;
}

ConstellationConfig LoadConstellationConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return ParseConstellationConfig(buf.str());
}

SatelliteId Canonical(const ConstellationConfig& cfg, SatelliteId sat) {
  return {Mod(sat.plane, cfg.num_planes), Mod(sat.index, cfg.sats_per_plane)};
}

int FlatIndex(const ConstellationConfig& cfg, SatelliteId sat) {
  return sat.plane * cfg.sats_per_plane + sat.index;
}

SatelliteId FromFlat(const ConstellationConfig& cfg, int flat) {
  return {flat / cfg.sats_per_plane, flat % cfg.sats_per_plane};
}

std::string ToString(SatelliteId sat) {
  return "(" + std::to_string(sat.plane) + "," + std::to_string(sat.index) +
         ")";
}

SatelliteId neighbor(const ConstellationConfig& cfg, SatelliteId sat,
                     Direction dir) {
  switch (dir) {
    case Direction::kEast:
      return {Mod(sat.plane + 1, cfg.num_planes), sat.index};
    case Direction::kWest:
      return {Mod(sat.plane - 1, cfg.num_planes), sat.index};
    case Direction::kPrograde:
      return {sat.plane, Mod(sat.index + 1, cfg.sats_per_plane)};
    case Direction::kRetrograde:
      return {sat.plane, Mod(sat.index - 1, cfg.sats_per_plane)};
  }
  return sat;
}

LinkId LinkFrom(const ConstellationConfig& cfg, SatelliteId sat,
                Direction dir) {
  const SatelliteId other = neighbor(cfg, sat, dir);
  switch (dir) {
    case Direction::kEast:
      return {LinkKind::kCrossOrbit, sat, other};
    case Direction::kWest:
      return {LinkKind::kCrossOrbit, other, sat};
    case Direction::kPrograde:
      return {LinkKind::kIntraOrbit, sat, other};
    case Direction::kRetrograde:
      return {LinkKind::kIntraOrbit, other, sat};
  }
  return {};
}

LinkId MakeLink(const ConstellationConfig& cfg, SatelliteId u,
                SatelliteId v) {
  for (Direction dir : kAllDirections) {
    if (neighbor(cfg, u, dir) == v) return LinkFrom(cfg, u, dir);
  }
  throw std::invalid_argument("satellites " + ToString(u) + " and " +
                              ToString(v) + " are not neighbors");
}

int FlatLinkIndex(const ConstellationConfig& cfg, const LinkId& link) {
  return 2 * FlatIndex(cfg, link.a) +
         (link.kind == LinkKind::kCrossOrbit ? 0 : 1);
}

std::string ToString(const LinkId& link) {
  return std::string(link.kind == LinkKind::kCrossOrbit ? "cross" : "intra") +
         ToString(link.a) + "-" + ToString(link.b);
}

double Norm(const Vec3& v) { return std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z); }

double Distance(const Vec3& a, const Vec3& b) {
  return Norm({a.x - b.x, a.y - b.y, a.z - b.z});
}

GeoState satellite_geo(const ConstellationConfig& cfg, SatelliteId sat,
                       double t, Frame frame) {
  const double s = cfg.sats_per_plane;
  const double raan = kTwoPi * sat.plane / cfg.num_planes;
  double u = kTwoPi * (sat.index + sat.plane * cfg.phase_offset) / s +
             cfg.MeanMotion() * t;
  u = std::fmod(u, kTwoPi);
  if (u < 0) u += kTwoPi;
  const double inc = cfg.InclinationRad();
  const double a = cfg.SemiMajorAxis();
  const double cu = std::cos(u), su = std::sin(u);
  const double co = std::cos(raan), so = std::sin(raan);
  const double ci = std::cos(inc), si = std::sin(inc);

  GeoState g;
  g.arg_latitude_rad = u;
  g.ecef = {a * (co * cu - so * su * ci), a * (so * cu + co * su * ci),
            a * su * si};
  if (frame == Frame::kEarthFixed) {
    const double th = -cfg.earth_rotation_rad_s * t;
    const double c = std::cos(th), sn = std::sin(th);
    g.ecef = {c * g.ecef.x - sn * g.ecef.y, sn * g.ecef.x + c * g.ecef.y,
              g.ecef.z};
  }
  g.latitude_rad = std::asin(std::clamp(su * si, -1.0, 1.0));
  g.longitude_rad = std::atan2(g.ecef.y, g.ecef.x);
  // Northbound on the ascending half of the orbit; flips at u = pi/2, 3pi/2.
  g.heading = (u < kPi / 2 || u >= 3 * kPi / 2) ? Heading::kNorthbound
                                                : Heading::kSouthbound;
  return g;
}

namespace {

LinkGeometry GeometryBetween(const ConstellationConfig& cfg, const Vec3& p,
                             const Vec3& q) {
  LinkGeometry lg;
  lg.length_m = Distance(p, q);
  lg.delay_s = lg.length_m / cfg.light_speed_m_s;
  const Vec3 mid{(p.x + q.x) / 2, (p.y + q.y) / 2, (p.z + q.z) / 2};
  const double n = Norm(mid);
  lg.midpoint_latitude_rad = n > 0 ? std::asin(std::clamp(mid.z / n, -1.0, 1.0)) : 0;
  lg.equator_distance_rad = std::abs(lg.midpoint_latitude_rad);
  return lg;
}

}  // namespace

LinkGeometry link_geometry(const ConstellationConfig& cfg, const LinkId& link,
                           double t) {
  return GeometryBetween(cfg, satellite_geo(cfg, link.a, t).ecef,
                         satellite_geo(cfg, link.b, t).ecef);
}

double link_delay(const ConstellationConfig& cfg, const LinkId& link,
                  double t) {
  return link_geometry(cfg, link, t).delay_s;
}

Snapshot::Snapshot(const ConstellationConfig& cfg, double t)
    : cfg_(cfg), t_(t) {
  const int n = cfg.NumSatellites();
  geo_.resize(n);
  for (int f = 0; f < n; ++f) geo_[f] = satellite_geo(cfg, FromFlat(cfg, f), t);
  links_.resize(2 * n);
  for (int f = 0; f < n; ++f) {
    const SatelliteId sat = FromFlat(cfg, f);
    const SatelliteId east = neighbor(cfg, sat, Direction::kEast);
    const SatelliteId pro = neighbor(cfg, sat, Direction::kPrograde);
    links_[2 * f] = GeometryBetween(cfg, geo_[f].ecef, geo_[FlatIndex(cfg, east)].ecef);
    links_[2 * f + 1] =
        GeometryBetween(cfg, geo_[f].ecef, geo_[FlatIndex(cfg, pro)].ecef);
  }
}

const LinkGeometry& Snapshot::link(SatelliteId sat, Direction dir) const {
  return link(LinkFrom(cfg_, sat, dir));
}

double Snapshot::delay(SatelliteId u, SatelliteId v) const {
  return link(MakeLink(cfg_, u, v)).delay_s;
}

bool AssumptionReport::AllHold() const {
  return property1.violations == 0 && property2.violations == 0 &&
         assumption1.violations == 0 && assumption2.violations == 0;
}

void to_json(nlohmann::json& j, const AssumptionCheck& c) {
  j = nlohmann::json{{"name", c.name},
                     {"samples", c.samples},
                     {"violations", c.violations},
                     {"worst_margin", c.worst_margin}};
}

void to_json(nlohmann::json& j, const AssumptionReport& r) {
  j = nlohmann::json{{"property1", r.property1},
                     {"property2", r.property2},
                     {"assumption1", r.assumption1},
                     {"assumption2", r.assumption2},
                     {"intra_spread", r.intra_spread},
                     {"intra_spread_tolerance", r.intra_spread_tolerance},
                     {"all_hold", r.AllHold()}};
}

namespace {

// Shortest path that uses at least one link of kind `required`. Layer 0 has
// not used such a link yet; layer 1 has.
double ShortestMixedDelay(const Snapshot& snap, SatelliteId s, SatelliteId d,
                          LinkKind required) {
  const ConstellationConfig& cfg = snap.config();
  const int n = cfg.NumSatellites();
  std::vector<double> dist(2 * n, std::numeric_limits<double>::infinity());
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[FlatIndex(cfg, s)] = 0;
  pq.push({0, FlatIndex(cfg, s)});
  const int target = n + FlatIndex(cfg, d);
  while (!pq.empty()) {
    auto [du, node] = pq.top();
    pq.pop();
    if (du > dist[node]) continue;
    if (node == target) return du;
    const int layer = node / n;
    const SatelliteId u = FromFlat(cfg, node % n);
    for (Direction dir : kAllDirections) {
      const SatelliteId v = neighbor(cfg, u, dir);
      const LinkId l = LinkFrom(cfg, u, dir);
      const int next_layer = (layer == 1 || l.kind == required) ? 1 : 0;
      const int vn = next_layer * n + FlatIndex(cfg, v);
      const double nd = du + snap.link(l).delay_s;
      if (nd < dist[vn]) {
        dist[vn] = nd;
        pq.push({nd, vn});
      }
    }
  }
  return dist[target];
}

double PureDelay(const Snapshot& snap, SatelliteId s, SatelliteId d,
                 Direction forward) {
  const ConstellationConfig& cfg = snap.config();
  double best = std::numeric_limits<double>::infinity();
  for (Direction dir : {forward, Opposite(forward)}) {
    double total = 0;
    SatelliteId cur = s;
    while (cur != d) {
      total += snap.link(cur, dir).delay_s;
      cur = neighbor(cfg, cur, dir);
    }
    best = std::min(best, total);
  }
  return best;
}

}  // namespace

AssumptionReport verify_model_assumptions(const ConstellationConfig& cfg,
                                          const std::vector<double>& times,
                                          int sample_pairs,
                                          std::uint64_t seed) {
  if (times.empty()) throw std::invalid_argument("no sample times");
  cfg.Validate();
  AssumptionReport rep;
  rep.property1.name = "property1_intra_equal_length";
  rep.property2.name = "property2_cross_length_vs_equator";
  rep.assumption1.name = "assumption1_pure_beats_mixed";
  rep.assumption2.name = "assumption2_one_equator_link_per_column";
  rep.intra_spread_tolerance = cfg.intra_spread_tolerance;
  rep.property2.worst_margin = std::numeric_limits<double>::infinity();
  rep.assumption1.worst_margin = std::numeric_limits<double>::infinity();
  rep.assumption2.worst_margin = std::numeric_limits<double>::infinity();

  std::mt19937_64 rng(seed);
  const int planes = cfg.num_planes, spp = cfg.sats_per_plane;
  double intra_min = std::numeric_limits<double>::infinity();
  double intra_max = 0;

  for (double t : times) {
    const Snapshot snap(cfg, t);

    for (int p = 0; p < planes; ++p) {
      for (int i = 0; i < spp; ++i) {
        const double len = snap.link({p, i}, Direction::kPrograde).length_m;
        intra_min = std::min(intra_min, len);
        intra_max = std::max(intra_max, len);
        ++rep.property1.samples;
      }
    }

    // The ring of a plane pair crosses the equator twice, half an orbit
    // apart: link i straddles it iff link i + spp / 2 does. Assumption 2 is
    // therefore checked on every window of spp / 2 consecutive links, the
    // columns of grids spanning less than half an orbit.
    const int window = spp / 2;
    for (int p = 0; p < planes; ++p) {
      std::vector<const LinkGeometry*> column;
      std::vector<int> straddles(spp, 0);
      double min_dlat = std::numeric_limits<double>::infinity();
      for (int i = 0; i < spp; ++i) {
        const SatelliteId a{p, i};
        const SatelliteId b = neighbor(cfg, a, Direction::kEast);
        const double la = snap.geo(a).latitude_rad;
        const double lb = snap.geo(b).latitude_rad;
        if (la * lb <= 0) {
          straddles[i] = 1;
          min_dlat = std::min(min_dlat, std::abs(la - lb));
        }
        column.push_back(&snap.link(a, Direction::kEast));
      }
      int worst_window = 0;
      for (int i = 0; i < spp; ++i) {
        int count = 0;
        for (int k = 0; k < window; ++k) count += straddles[(i + k) % spp];
        worst_window = std::max(worst_window, count);
      }
      ++rep.assumption2.samples;
      rep.assumption2.worst_margin = std::min(rep.assumption2.worst_margin, min_dlat);
      // An equator-straddling link with endpoints at equal latitude lies on
      // the equator, which is then parallel to it.
      const bool parallel = min_dlat < 1e-9;
      if (worst_window > 1 || parallel) ++rep.assumption2.violations;

      std::sort(column.begin(), column.end(),
                [](const LinkGeometry* x, const LinkGeometry* y) {
                  return x->equator_distance_rad < y->equator_distance_rad;
                });
      for (std::size_t k = 1; k < column.size(); ++k) {
        const LinkGeometry& nearer = *column[k - 1];
        const LinkGeometry& farther = *column[k];
        if (farther.equator_distance_rad - nearer.equator_distance_rad < 1e-12) {
          continue;  // equal equator distance: no order is implied
        }
        ++rep.property2.samples;
        const double margin =
            (nearer.length_m - farther.length_m) / nearer.length_m;
        rep.property2.worst_margin = std::min(rep.property2.worst_margin, margin);
        if (margin <= 0) ++rep.property2.violations;
      }
    }

    std::uniform_int_distribution<int> pick_plane(0, planes - 1);
    std::uniform_int_distribution<int> pick_index(0, spp - 1);
    for (int k = 0; k < sample_pairs; ++k) {
      // Same row: equal index, different planes.
      const SatelliteId s{pick_plane(rng), pick_index(rng)};
      SatelliteId d{pick_plane(rng), s.index};
      while (d.plane == s.plane) d.plane = pick_plane(rng);
      const double pure_row = PureDelay(snap, s, d, Direction::kEast);
      const double mixed_row =
          ShortestMixedDelay(snap, s, d, LinkKind::kIntraOrbit);
      // Same column: equal plane, different indices.
      SatelliteId e{s.plane, pick_index(rng)};
      while (e.index == s.index) e.index = pick_index(rng);
      const double pure_col = PureDelay(snap, s, e, Direction::kPrograde);
      const double mixed_col =
          ShortestMixedDelay(snap, s, e, LinkKind::kCrossOrbit);
      for (auto [pure, mixed] : {std::pair{pure_row, mixed_row},
                                 std::pair{pure_col, mixed_col}}) {
        const double margin = (mixed - pure) / pure;
        ++rep.assumption1.samples;
        rep.assumption1.worst_margin = std::min(rep.assumption1.worst_margin, margin);
        if (margin <= 0) ++rep.assumption1.violations;
      }
    }
  }

  rep.intra_spread = (intra_max - intra_min) / intra_max;
  rep.property1.worst_margin = cfg.intra_spread_tolerance - rep.intra_spread;
  if (rep.intra_spread > cfg.intra_spread_tolerance) rep.property1.violations = 1;
  if (rep.assumption1.samples == 0) rep.assumption1.worst_margin = 0;
  return rep;
}

}  // namespace starglider
