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

#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <stdexcept>

#include <gtest/gtest.h>

#include "starglider/constellation.hpp"

namespace starglider {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(ConstellationConfig, PeriodMatchesKeplerThirdLaw) {
  ConstellationConfig cfg;
  const double a = 6371e3 + 550e3;
  const double oracle = 2 * kPi * std::sqrt(a * a * a / 3.986004418e14);
  EXPECT_NEAR(cfg.Period(), oracle, 1e-9 * oracle);
  // About 95.6 minutes at 550 km.
  EXPECT_NEAR(cfg.Period() / 60.0, 95.6, 0.1);
}

TEST(ConstellationConfig, ParsesKeyValueText) {
  const ConstellationConfig cfg = ParseConstellationConfig(
      "# shell\nnum_planes = 8\nsats_per_plane=12  # trailing\n"
      "altitude_m = 600000\ninclination_deg = 60\nphase_offset = 0\n");
  EXPECT_EQ(cfg.num_planes, 8);
  EXPECT_EQ(cfg.sats_per_plane, 12);
  EXPECT_DOUBLE_EQ(cfg.altitude_m, 600000);
  EXPECT_DOUBLE_EQ(cfg.inclination_deg, 60);
  EXPECT_DOUBLE_EQ(cfg.phase_offset, 0);
}

TEST(ConstellationConfig, RejectsBadInput) {
  EXPECT_THROW(ParseConstellationConfig("bogus = 1\n"), std::invalid_argument);
  EXPECT_THROW(ParseConstellationConfig("num_planes = 2\n"),
               std::invalid_argument);
  EXPECT_THROW(ParseConstellationConfig("inclination_deg = 95\n"),
               std::invalid_argument);
  EXPECT_THROW(ParseConstellationConfig("num_planes = many\n"),
               std::invalid_argument);
  EXPECT_THROW(LoadConstellationConfig("/nonexistent/shell.conf"),
               std::runtime_error);
}

TEST(ConstellationConfig, BundledFileMatchesDefaults) {
  const ConstellationConfig cfg =
      LoadConstellationConfig(STARGLIDER_TEST_CONFIG_DIR "/constellation.conf");
  const ConstellationConfig def;
  EXPECT_EQ(cfg.num_planes, def.num_planes);
  EXPECT_EQ(cfg.sats_per_plane, def.sats_per_plane);
  EXPECT_DOUBLE_EQ(cfg.altitude_m, def.altitude_m);
  EXPECT_DOUBLE_EQ(cfg.inclination_deg, def.inclination_deg);
  EXPECT_DOUBLE_EQ(cfg.phase_offset, def.phase_offset);
}

TEST(Topology, NeighborsWrapAtTheSeam) {
  ConstellationConfig cfg;
  EXPECT_EQ(neighbor(cfg, {23, 5}, Direction::kEast), (SatelliteId{0, 5}));
  EXPECT_EQ(neighbor(cfg, {0, 5}, Direction::kWest), (SatelliteId{23, 5}));
  EXPECT_EQ(neighbor(cfg, {3, 65}, Direction::kPrograde), (SatelliteId{3, 0}));
  EXPECT_EQ(neighbor(cfg, {3, 0}, Direction::kRetrograde),
            (SatelliteId{3, 65}));
}

TEST(Topology, OppositeUndoesEveryStep) {
  ConstellationConfig cfg;
  for (int p = 0; p < cfg.num_planes; ++p) {
    for (int i = 0; i < cfg.sats_per_plane; ++i) {
      for (Direction dir : kAllDirections) {
        const SatelliteId s{p, i};
        EXPECT_EQ(neighbor(cfg, neighbor(cfg, s, dir), Opposite(dir)), s);
        EXPECT_EQ(IsCrossOrbit(dir),
                  dir == Direction::kEast || dir == Direction::kWest);
      }
    }
  }
}

TEST(Topology, LinkIdsAreDenseAndSymmetric) {
  ConstellationConfig cfg;
  cfg.num_planes = 5;
  cfg.sats_per_plane = 7;
  std::set<int> seen;
  for (int f = 0; f < cfg.NumSatellites(); ++f) {
    const SatelliteId s = FromFlat(cfg, f);
    EXPECT_EQ(FlatIndex(cfg, s), f);
    for (Direction dir : kAllDirections) {
      const SatelliteId n = neighbor(cfg, s, dir);
      const LinkId l = LinkFrom(cfg, s, dir);
      EXPECT_EQ(l, MakeLink(cfg, s, n));
      EXPECT_EQ(l, MakeLink(cfg, n, s));
      EXPECT_EQ(l, LinkFrom(cfg, n, Opposite(dir)));
      seen.insert(FlatLinkIndex(cfg, l));
    }
  }
  EXPECT_EQ(seen.size(), static_cast<std::size_t>(2 * cfg.NumSatellites()));
  EXPECT_EQ(*seen.begin(), 0);
  EXPECT_EQ(*seen.rbegin(), 2 * cfg.NumSatellites() - 1);
  EXPECT_THROW(MakeLink(cfg, {0, 0}, {2, 0}), std::invalid_argument);
}

TEST(Geometry, IntraOrbitChordIsConstant) {
  ConstellationConfig cfg;
  const double a = cfg.SemiMajorAxis();
  const double chord = 2 * a * std::sin(kPi / cfg.sats_per_plane);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> t(0, cfg.Period());
  for (int k = 0; k < 200; ++k) {
    const SatelliteId s{static_cast<int>(rng() % 24), static_cast<int>(rng() % 66)};
    const LinkGeometry g =
        link_geometry(cfg, LinkFrom(cfg, s, Direction::kPrograde), t(rng));
    EXPECT_NEAR(g.length_m, chord, 1e-6);
    EXPECT_NEAR(g.delay_s, chord / cfg.light_speed_m_s, 1e-15);
  }
}

// Independent position oracle: rotate the in-plane vector (cos u, sin u, 0)
// by the inclination about x, then by the RAAN about z.
TEST(Geometry, PositionsMatchRotationOracle) {
  ConstellationConfig cfg;
  const double a = cfg.SemiMajorAxis();
  const double inc = cfg.inclination_deg * kPi / 180;
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> t(0, 3 * cfg.Period());
  for (int k = 0; k < 500; ++k) {
    const SatelliteId s{static_cast<int>(rng() % 24), static_cast<int>(rng() % 66)};
    const double tt = t(rng);
    const double u = 2 * kPi * (s.index + s.plane * cfg.phase_offset) / 66 +
                     2 * kPi / cfg.Period() * tt;
    const double raan = 2 * kPi * s.plane / 24;
    const double x0 = std::cos(u), y0 = std::sin(u) * std::cos(inc),
                 z0 = std::sin(u) * std::sin(inc);
    const double x = a * (std::cos(raan) * x0 - std::sin(raan) * y0);
    const double y = a * (std::sin(raan) * x0 + std::cos(raan) * y0);
    const double z = a * z0;
    const GeoState g = satellite_geo(cfg, s, tt);
    EXPECT_NEAR(g.ecef.x, x, 1e-3);
    EXPECT_NEAR(g.ecef.y, y, 1e-3);
    EXPECT_NEAR(g.ecef.z, z, 1e-3);
    EXPECT_NEAR(g.latitude_rad, std::asin(z / a), 1e-12);
    EXPECT_LE(std::abs(g.latitude_rad), inc + 1e-12);
    // Northbound exactly when the z velocity is positive.
    const bool north = std::cos(u) > 0;
    if (std::abs(std::cos(u)) > 1e-9) {
      EXPECT_EQ(g.heading == Heading::kNorthbound, north);
    }
    // The Earth-fixed frame only rotates about z.
    const GeoState e = satellite_geo(cfg, s, tt, Frame::kEarthFixed);
    EXPECT_NEAR(Norm(e.ecef), a, 1e-3);
    EXPECT_NEAR(e.ecef.z, z, 1e-3);
  }
}

TEST(Geometry, CrossOrbitLinksShortenTowardThePoles) {
  ConstellationConfig cfg;
  cfg.phase_offset = 0;
  // With zero phase offset, satellites of equal index in adjacent planes
  // share the argument of latitude. At u = 0 both sit on the equator.
  const Snapshot eq(cfg, 0);
  const LinkGeometry at_equator =
      eq.link(LinkFrom(cfg, {0, 0}, Direction::kEast));
  const double oracle = 2 * cfg.SemiMajorAxis() * std::sin(kPi / 24);
  EXPECT_NEAR(at_equator.length_m, oracle, 1e-3);
  EXPECT_NEAR(at_equator.equator_distance_rad, 0, 1e-12);
  const LinkGeometry near_pole =
      eq.link(LinkFrom(cfg, {0, 16}, Direction::kEast));
  EXPECT_LT(near_pole.length_m, at_equator.length_m);
  EXPECT_GT(near_pole.equator_distance_rad, 0.5);
}

TEST(Geometry, SnapshotAgreesWithDirectQueries) {
  ConstellationConfig cfg;
  const double t = 1234.5;
  const Snapshot snap(cfg, t);
  for (int f = 0; f < cfg.NumSatellites(); f += 37) {
    const SatelliteId s = FromFlat(cfg, f);
    for (Direction dir : kAllDirections) {
      const LinkId l = LinkFrom(cfg, s, dir);
      EXPECT_DOUBLE_EQ(snap.link(s, dir).delay_s, link_delay(cfg, l, t));
      EXPECT_DOUBLE_EQ(snap.delay(s, neighbor(cfg, s, dir)),
                       link_delay(cfg, l, t));
    }
  }
}

TEST(Assumptions, HoldOnTheDefaultShell) {
  ConstellationConfig cfg;
  std::vector<double> times;
  for (int k = 0; k < 5; ++k) times.push_back(k * cfg.Period() / 5);
  const AssumptionReport r = verify_model_assumptions(cfg, times, 40, 9);
  EXPECT_TRUE(r.AllHold());
  EXPECT_EQ(r.property2.violations, 0);
  EXPECT_EQ(r.assumption1.violations, 0);
  EXPECT_LE(r.intra_spread, 0.02);
  EXPECT_GT(r.property2.samples, 0);
  EXPECT_THROW(verify_model_assumptions(cfg, {}, 10), std::invalid_argument);
}

}  // namespace
}  // namespace starglider
