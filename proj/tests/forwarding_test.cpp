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

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "starglider/forwarding.hpp"
#include "starglider/grid.hpp"

namespace starglider {
namespace {

using Kind = ForwardDecision::Kind;

PacketHeader Header(std::vector<PathTag> tags, int curr = 0, int loop = 0) {
  PacketHeader h;
  h.src_gs = 1;
  h.dst_gs = 2;
  h.tags = std::move(tags);
  h.curr_index = curr;
  h.loop_flag = loop;
  return h;
}

LinkStateMap Down(const ConstellationConfig& cfg, SatelliteId s,
                  std::initializer_list<Direction> dirs) {
  LinkStateMap m;
  for (Direction d : dirs) m.failed_links.insert(LinkFrom(cfg, s, d));
  return m;
}

constexpr Direction E = Direction::kEast;
constexpr Direction W = Direction::kWest;
constexpr Direction P = Direction::kPrograde;
constexpr Direction R = Direction::kRetrograde;

TEST(ProcessTags, FollowsAndDecrementsTheCurrentTag) {
  ConstellationConfig cfg;
  const ForwardDecision f =
      process_tags(cfg, {0, 0}, Header({{E, 2}, {P, 1}}), {});
  EXPECT_EQ(f.kind, Kind::kForward);
  EXPECT_EQ(f.direction, E);
  EXPECT_FALSE(f.rerouted);
  EXPECT_EQ(f.header.tags, (std::vector<PathTag>{{E, 1}, {P, 1}}));
  EXPECT_EQ(f.header.curr_index, 0);
}

TEST(ProcessTags, SkipsConsumedTagsAndDelivers) {
  ConstellationConfig cfg;
  const ForwardDecision f =
      process_tags(cfg, {0, 0}, Header({{E, 0}, {P, 0}}), {});
  EXPECT_EQ(f.kind, Kind::kDeliver);
  EXPECT_EQ(f.header.curr_index, 2);
  EXPECT_EQ(process_tags(cfg, {0, 0}, Header({}), {}).kind, Kind::kDeliver);
}

TEST(ProcessTags, FailedCurrentLinkTakesOneStepOfTheNextTag) {
  ConstellationConfig cfg;
  const SatelliteId sat{4, 4};
  const ForwardDecision f = process_tags(
      cfg, sat, Header({{E, 0}, {R, 7}, {E, 9}}, 1), Down(cfg, sat, {R}));
  EXPECT_EQ(f.kind, Kind::kForward);
  EXPECT_EQ(f.direction, E);
  EXPECT_TRUE(f.rerouted);
  EXPECT_EQ(f.header.tags, (std::vector<PathTag>{{E, 0}, {R, 7}, {E, 8}}));
  EXPECT_EQ(f.header.curr_index, 1);
  EXPECT_EQ(f.header.loop_flag, 1);
}

TEST(ProcessTags, NextTagSkipsConsumedEntries) {
  ConstellationConfig cfg;
  const SatelliteId sat{4, 4};
  const ForwardDecision f = process_tags(
      cfg, sat, Header({{R, 2}, {E, 0}, {P, 3}}), Down(cfg, sat, {R}));
  EXPECT_EQ(f.kind, Kind::kForward);
  EXPECT_EQ(f.direction, P);
  EXPECT_EQ(f.header.tags, (std::vector<PathTag>{{R, 2}, {E, 0}, {P, 2}}));
}

TEST(ProcessTags, LastTagFailureSidestepsAndAppendsTheReturn) {
  ConstellationConfig cfg;
  const SatelliteId sat{4, 4};
  // No consumed tag: a cross-orbit tag sidesteps Prograde.
  ForwardDecision f = process_tags(cfg, sat, Header({{E, 3}}), Down(cfg, sat, {E}));
  EXPECT_EQ(f.kind, Kind::kForward);
  EXPECT_EQ(f.direction, P);
  EXPECT_EQ(f.header.tags, (std::vector<PathTag>{{E, 3}, {R, 1}}));
  EXPECT_EQ(f.header.loop_flag, 1);
  // An intra-orbit tag sidesteps East.
  f = process_tags(cfg, sat, Header({{R, 3}}), Down(cfg, sat, {R}));
  EXPECT_EQ(f.direction, E);
  EXPECT_EQ(f.header.tags, (std::vector<PathTag>{{R, 3}, {W, 1}}));
  // Otherwise the direction of the last consumed tag.
  f = process_tags(cfg, sat, Header({{W, 0}, {P, 2}}, 1), Down(cfg, sat, {P}));
  EXPECT_EQ(f.direction, W);
  EXPECT_EQ(f.header.tags, (std::vector<PathTag>{{W, 0}, {P, 2}, {E, 1}}));
}

TEST(ProcessTags, Drops) {
  ConstellationConfig cfg;
  const SatelliteId sat{4, 4};
  ForwardDecision f =
      process_tags(cfg, sat, Header({{E, 3}}, 0, 2), Down(cfg, sat, {E}));
  EXPECT_EQ(f.kind, Kind::kDrop);
  EXPECT_EQ(f.reason, DropReason::kLoopFlagExhausted);
  // A loop_flag of 2 still forwards over healthy links.
  EXPECT_EQ(process_tags(cfg, sat, Header({{E, 3}}, 0, 2), {}).kind,
            Kind::kForward);

  f = process_tags(cfg, sat, Header({{E, 3}, {P, 1}}), Down(cfg, sat, {E, P}));
  EXPECT_EQ(f.kind, Kind::kDrop);
  EXPECT_EQ(f.reason, DropReason::kRerouteLinkFailed);
  f = process_tags(cfg, sat, Header({{E, 3}}), Down(cfg, sat, {E, P}));
  EXPECT_EQ(f.reason, DropReason::kRerouteLinkFailed);

  std::vector<PathTag> full(kMaxTags, {P, 0});
  full.back() = {E, 1};
  f = process_tags(cfg, sat, Header(full, kMaxTags - 1), Down(cfg, sat, {E}));
  EXPECT_EQ(f.kind, Kind::kDrop);
  EXPECT_EQ(f.reason, DropReason::kTagOverflow);
  EXPECT_STREQ(ToString(DropReason::kTagOverflow), "tag_overflow");
}

// The decision depends on the satellite's own four links only.
TEST(ProcessTags, IgnoresFailuresElsewhere) {
  ConstellationConfig cfg;
  std::mt19937_64 rng(6);
  const SatelliteId sat{10, 10};
  for (int k = 0; k < 500; ++k) {
    std::vector<PathTag> tags;
    const int n = 1 + static_cast<int>(rng() % 5);
    for (int j = 0; j < n; ++j) {
      tags.push_back({kAllDirections[rng() % 4], static_cast<int>(rng() % 4)});
    }
    const PacketHeader h = Header(tags, static_cast<int>(rng() % n),
                                  static_cast<int>(rng() % 3));
    LinkStateMap local;
    for (Direction d : kAllDirections) {
      if (rng() % 3 == 0) local.failed_links.insert(LinkFrom(cfg, sat, d));
    }
    LinkStateMap more = local;
    for (int j = 0; j < 30; ++j) {
      const SatelliteId other = FromFlat(cfg, rng() % cfg.NumSatellites());
      if (std::abs(other.plane - sat.plane) <= 1 ||
          std::abs(other.index - sat.index) <= 1) {
        continue;
      }
      more.failed_links.insert(LinkFrom(cfg, other, kAllDirections[rng() % 4]));
      more.failed_sats.insert(other);
    }
    const ForwardDecision a = process_tags(cfg, sat, h, local);
    const ForwardDecision b = process_tags(cfg, sat, h, more);
    EXPECT_EQ(a.kind, b.kind);
    EXPECT_EQ(a.header, b.header);
    EXPECT_EQ(a.direction, b.direction);
  }
}

TEST(RoutePacket, FollowsTheEncodedPathWithoutFailures) {
  ConstellationConfig cfg;
  const Snapshot snap(cfg, 321);
  const Path p = theory_shortest_path(snap, {3, 60}, {9, 7});
  const Trajectory tr =
      route_packet(snap, p.sats.front(), Header(encode_path(cfg, p)), {});
  EXPECT_TRUE(tr.delivered());
  EXPECT_EQ(tr.Walk(), p);
  EXPECT_NEAR(tr.total_delay_s, p.Delay(snap), 1e-15);
  EXPECT_EQ(tr.reroute_count, 0);
}

// A header may revisit satellites without repeating a forwarding state.
TEST(RoutePacket, RevisitingSatellitesIsNotALoop) {
  ConstellationConfig cfg;
  const Trajectory tr = route_packet(
      cfg, {5, 5}, Header({{E, 2}, {P, 1}, {W, 2}, {R, 1}, {E, 1}}), {}, 0);
  EXPECT_TRUE(tr.delivered());
  EXPECT_EQ(tr.HopCount(), 7);
  EXPECT_TRUE(tr.Walk().HasRepeatedSatellite());
  EXPECT_EQ(tr.final_sat, (SatelliteId{6, 5}));
}

TEST(RoutePacket, RerouteAroundASingleFailure) {
  ConstellationConfig cfg;
  const SatelliteId s{5, 5};
  // [E0,R7,E9] scenario: the Retrograde link of the satellite after the
  // first East hop fails.
  const SatelliteId mid = neighbor(cfg, s, E);
  const Trajectory tr = route_packet(
      cfg, s, Header({{E, 1}, {R, 7}, {E, 9}}), Down(cfg, mid, {R}), 0);
  ASSERT_TRUE(tr.delivered());
  EXPECT_EQ(tr.final_sat, (SatelliteId{15, 64}));
  EXPECT_EQ(tr.HopCount(), 17);
  EXPECT_EQ(tr.reroute_count, 1);
  EXPECT_TRUE(tr.hops[1].rerouted);
  EXPECT_EQ(tr.hops[1].direction, E);
}

// Theory path, one random link or intermediate satellite failed: the packet
// arrives, with at most two extra hops, and the delay grows by no more than
// max(2 x longest off-path link used, cross-orbit delay difference).
TEST(RoutePacket, SingleFailureBounds) {
  ConstellationConfig cfg;
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> t(0, cfg.Period());
  int trials = 0;
  for (int k = 0; k < 300; ++k) {
    const SatelliteId s = FromFlat(cfg, rng() % cfg.NumSatellites());
    const SatelliteId d = FromFlat(cfg, rng() % cfg.NumSatellites());
    if (s == d) continue;
    const Snapshot snap(cfg, t(rng));
    const Path p = theory_shortest_path(snap, s, d);
    const std::vector<LinkId> links = p.Links(cfg);
    for (int mode = 0; mode < 2; ++mode) {
      LinkStateMap f;
      if (mode == 0) {
        f.failed_links.insert(links[rng() % links.size()]);
      } else {
        if (p.sats.size() < 3) continue;
        f.failed_sats.insert(p.sats[1 + rng() % (p.sats.size() - 2)]);
      }
      ++trials;
      const Trajectory tr = route_packet(snap, s, Header(encode_path(cfg, p)), f);
      ASSERT_TRUE(tr.delivered());
      EXPECT_EQ(tr.final_sat, d);
      EXPECT_LE(tr.HopCount() - p.HopCount(), 2);
      EXPECT_EQ(tr.reroute_count, 1);
      const std::set<LinkId> orig(links.begin(), links.end());
      double off = 0, cross_t = 0, cross_o = 0;
      for (const TrajectoryHop& h : tr.hops) {
        const LinkId l = MakeLink(cfg, h.from, h.to);
        EXPECT_TRUE(f.LinkUp(l));
        if (!orig.contains(l)) off = std::max(off, h.delay_s);
        if (l.kind == LinkKind::kCrossOrbit) cross_t += h.delay_s;
      }
      for (const LinkId& l : links) {
        if (l.kind == LinkKind::kCrossOrbit) cross_o += snap.link(l).delay_s;
      }
      const double bound = std::max(2 * off, std::abs(cross_t - cross_o));
      EXPECT_LE(tr.total_delay_s - p.Delay(snap), bound * (1 + 1e-9) + 1e-15);
    }
  }
  EXPECT_GT(trials, 400);
}

// Failing node y gives the same trajectory as failing only the link (x, y)
// the packet would take into it, whenever that detour avoids y.
TEST(RoutePacket, NodeFailureMatchesLinkFailureWhenTheDetourAvoidsIt) {
  ConstellationConfig cfg;
  std::mt19937_64 rng(19);
  int compared = 0;
  for (int k = 0; k < 400; ++k) {
    const SatelliteId s = FromFlat(cfg, rng() % cfg.NumSatellites());
    const SatelliteId d = FromFlat(cfg, rng() % cfg.NumSatellites());
    if (s == d) continue;
    const Snapshot snap(cfg, 45.0 * k);
    const Path p = theory_shortest_path(snap, s, d);
    if (p.sats.size() < 3) continue;
    const std::size_t j = 1 + rng() % (p.sats.size() - 2);
    LinkStateMap node, link;
    node.failed_sats.insert(p.sats[j]);
    link.failed_links.insert(MakeLink(cfg, p.sats[j - 1], p.sats[j]));
    const PacketHeader h = Header(encode_path(cfg, p));
    const Trajectory by_link = route_packet(snap, s, h, link);
    const Path walk = by_link.Walk();
    if (std::find(walk.sats.begin(), walk.sats.end(), p.sats[j]) !=
        walk.sats.end()) {
      continue;
    }
    const Trajectory by_node = route_packet(snap, s, h, node);
    EXPECT_EQ(by_node.Walk(), walk);
    EXPECT_EQ(by_node.final_header, by_link.final_header);
    ++compared;
  }
  EXPECT_GT(compared, 200);
}

TEST(RoutePacket, NeverLoopsAndCapsReroutes) {
  ConstellationConfig cfg;
  std::mt19937_64 rng(17);
  for (int k = 0; k < 300; ++k) {
    const SatelliteId s = FromFlat(cfg, rng() % cfg.NumSatellites());
    const SatelliteId d = FromFlat(cfg, rng() % cfg.NumSatellites());
    if (s == d) continue;
    const Snapshot snap(cfg, 60.0 * k);
    const Path p = theory_shortest_path(snap, s, d);
    LinkStateMap f;
    for (int j = 0; j < 4; ++j) {
      const SatelliteId x = p.sats[rng() % p.sats.size()];
      f.failed_links.insert(LinkFrom(cfg, x, kAllDirections[rng() % 4]));
    }
    const Trajectory tr = route_packet(snap, s, Header(encode_path(cfg, p)), f);
    EXPECT_NE(tr.outcome, Trajectory::Outcome::kLooped);
    EXPECT_LE(tr.reroute_count, kMaxLoopFlag);
    EXPECT_EQ(tr.reroute_count, tr.final_header.loop_flag);
    for (const TrajectoryHop& h : tr.hops) {
      EXPECT_TRUE(f.LinkUp(MakeLink(cfg, h.from, h.to)));
    }
    if (tr.delivered()) {
      EXPECT_EQ(tr.final_sat, d);
    }
  }
}

}  // namespace
}  // namespace starglider
