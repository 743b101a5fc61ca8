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

#ifndef STARGLIDER_CONSTELLATION_HPP_
#define STARGLIDER_CONSTELLATION_HPP_

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace starglider {

// Absolute torus directions. The numeric values are the 2-bit wire codes.
enum class Direction : std::uint8_t {
  kEast = 0,
  kWest = 1,
  kPrograde = 2,
  kRetrograde = 3,
};

inline constexpr std::array<Direction, 4> kAllDirections = {
    Direction::kEast, Direction::kWest, Direction::kPrograde,
    Direction::kRetrograde};

Direction Opposite(Direction dir);
bool IsCrossOrbit(Direction dir);
char DirectionLetter(Direction dir);

struct ConstellationConfig {
  int num_planes = 24;
  int sats_per_plane = 66;
  double altitude_m = 550e3;
  double inclination_deg = 53.0;
  // Fraction of the in-plane spacing added per plane: satellite (p, i) sits
  // at argument of latitude 2*pi*(i + p*phase_offset)/sats_per_plane at t=0.
  double phase_offset = 0.04;  // below 1/23 so the seam column keeps Assumption 2
  double earth_radius_m = 6371e3;
  double mu_m3s2 = 3.986004418e14;
  double earth_rotation_rad_s = 7.2921159e-5;
  double light_speed_m_s = 299792458.0;
  // Allowed relative spread of intra-orbit link lengths.
  double intra_spread_tolerance = 0.02;

  double SemiMajorAxis() const { return earth_radius_m + altitude_m; }
  double Period() const;
  double MeanMotion() const;
  double InclinationRad() const;
  int NumSatellites() const { return num_planes * sats_per_plane; }

  // Throws std::invalid_argument when an invariant is violated.
  void Validate() const;
};

// Parses "key = value" lines; '#' starts a comment. Unknown keys throw.
ConstellationConfig LoadConstellationConfig(const std::string& path);
ConstellationConfig ParseConstellationConfig(const std::string& text);

struct SatelliteId {
  int plane = 0;
  int index = 0;

  friend bool operator==(const SatelliteId&, const SatelliteId&) = default;
  friend auto operator<=>(const SatelliteId&, const SatelliteId&) = default;
};

SatelliteId Canonical(const ConstellationConfig& cfg, SatelliteId sat);
int FlatIndex(const ConstellationConfig& cfg, SatelliteId sat);
SatelliteId FromFlat(const ConstellationConfig& cfg, int flat);
std::string ToString(SatelliteId sat);

SatelliteId neighbor(const ConstellationConfig& cfg, SatelliteId sat,
                     Direction dir);

enum class LinkKind : std::uint8_t { kIntraOrbit, kCrossOrbit };

// `a` is the endpoint whose East (cross) or Prograde (intra) neighbor is `b`.
struct LinkId {
  LinkKind kind = LinkKind::kIntraOrbit;
  SatelliteId a;
  SatelliteId b;

  friend bool operator==(const LinkId&, const LinkId&) = default;
  friend auto operator<=>(const LinkId&, const LinkId&) = default;
};

// Throws std::invalid_argument when u and v are not +Grid neighbors.
LinkId MakeLink(const ConstellationConfig& cfg, SatelliteId u, SatelliteId v);
LinkId LinkFrom(const ConstellationConfig& cfg, SatelliteId sat,
                Direction dir);
// Dense id in [0, 2 * NumSatellites()).
int FlatLinkIndex(const ConstellationConfig& cfg, const LinkId& link);
std::string ToString(const LinkId& link);

enum class Heading : std::uint8_t { kNorthbound, kSouthbound };

enum class Frame : std::uint8_t { kInertial, kEarthFixed };

struct Vec3 {
  double x = 0, y = 0, z = 0;
};

double Norm(const Vec3& v);
double Distance(const Vec3& a, const Vec3& b);

struct GeoState {
  double latitude_rad = 0;
  double longitude_rad = 0;
  Vec3 ecef;
  Heading heading = Heading::kNorthbound;
  double arg_latitude_rad = 0;  // in [0, 2*pi)
};

GeoState satellite_geo(const ConstellationConfig& cfg, SatelliteId sat,
                       double t, Frame frame = Frame::kInertial);

struct LinkGeometry {
  double length_m = 0;
  double delay_s = 0;
  // |latitude| of the chord midpoint.
  double equator_distance_rad = 0;
  double midpoint_latitude_rad = 0;
};

LinkGeometry link_geometry(const ConstellationConfig& cfg, const LinkId& link,
                           double t);
double link_delay(const ConstellationConfig& cfg, const LinkId& link,
                  double t);

// Geometry of every satellite and link at one instant. Immutable.
class Snapshot {
 public:
  Snapshot(const ConstellationConfig& cfg, double t);

  const ConstellationConfig& config() const { return cfg_; }
  double time() const { return t_; }
  const GeoState& geo(SatelliteId sat) const {
    return geo_[FlatIndex(cfg_, sat)];
  }
  const LinkGeometry& link(const LinkId& link) const {
    return links_[FlatLinkIndex(cfg_, link)];
  }
  const LinkGeometry& link(SatelliteId sat, Direction dir) const;
  double delay(SatelliteId u, SatelliteId v) const;

 private:
  ConstellationConfig cfg_;
  double t_;
  std::vector<GeoState> geo_;
  std::vector<LinkGeometry> links_;
};

struct AssumptionCheck {
  std::string name;
  std::int64_t samples = 0;
  std::int64_t violations = 0;
  double worst_margin = 0;
};

struct AssumptionReport {
  AssumptionCheck property1;    // intra-orbit length spread
  AssumptionCheck property2;    // cross-orbit length vs equator distance
  AssumptionCheck assumption1;  // pure paths beat mixed paths
  AssumptionCheck assumption2;  // at most one equator-spanning link/column
  double intra_spread = 0;      // max relative spread over all samples
  double intra_spread_tolerance = 0;

  bool AllHold() const;
};

void to_json(nlohmann::json& j, const AssumptionCheck& c);
void to_json(nlohmann::json& j, const AssumptionReport& r);

// sample_pairs same-row and sample_pairs same-column pairs are drawn per
// sample time from an RNG seeded with `seed`.
AssumptionReport verify_model_assumptions(const ConstellationConfig& cfg,
                                          const std::vector<double>& times,
                                          int sample_pairs,
                                          std::uint64_t seed = 1);

}  // namespace starglider

template <>
struct std::hash<starglider::SatelliteId> {
  std::size_t operator()(const starglider::SatelliteId& s) const noexcept {
    return std::hash<long long>()((static_cast<long long>(s.plane) << 32) ^
                                  static_cast<unsigned>(s.index));
  }
};

#endif  // STARGLIDER_CONSTELLATION_HPP_
