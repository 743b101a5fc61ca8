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

#include "starglider/baselines.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <unordered_map>

namespace starglider {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<int> ChainTo(const ShortestPathTree& tree, int node) {
  std::vector<int> chain;
  for (int v = node; v != -1; v = tree.pred[v]) chain.push_back(v);
  std::reverse(chain.begin(), chain.end());
  return chain;
}

}  // namespace

WeightedSnapshot::WeightedSnapshot(const Snapshot& geometry,
                                   LinkStateMap failures)
    : geometry_(geometry), failures_(std::move(failures)) {}

WeightedSnapshot::WeightedSnapshot(const ConstellationConfig& cfg, double t,
                                   LinkStateMap failures)
    : geometry_(cfg, t), failures_(std::move(failures)) {}

bool WeightedSnapshot::Usable(SatelliteId sat, Direction dir) const {
  return failures_.LinkUp(config(), sat, dir);
}

double WeightedSnapshot::Weight(SatelliteId sat, Direction dir) const {
  if (!Usable(sat, dir)) return kInf;
  return geometry_.link(sat, dir).delay_s;
}

WeightedSnapshot WeightedSnapshot::WithExtraFailures(
    const LinkStateMap& extra) const {
  LinkStateMap merged = failures_;
  merged.failed_links.insert(extra.failed_links.begin(),
                             extra.failed_links.end());
  merged.failed_sats.insert(extra.failed_sats.begin(), extra.failed_sats.end());
  return WeightedSnapshot(geometry_, std::move(merged));
}

std::optional<Path> ShortestPathTree::PathTo(const ConstellationConfig& cfg,
                                             SatelliteId d) const {
  const int dn = FlatIndex(cfg, d);
  if (d == source) return Path{};
  if (dist[dn] == kInf) return std::nullopt;
  Path p;
  for (int v : ChainTo(*this, dn)) p.sats.push_back(FromFlat(cfg, v));
  return p;
}

ShortestPathTree dijkstra_tree(const WeightedSnapshot& snap, SatelliteId s) {
  const ConstellationConfig& cfg = snap.config();
  const int n = cfg.NumSatellites();
  ShortestPathTree tree;
  tree.source = s;
  tree.dist.assign(n, kInf);
  tree.hops.assign(n, std::numeric_limits<int>::max());
  tree.pred.assign(n, -1);
  std::vector<char> done(n, 0);
  const int sn = FlatIndex(cfg, s);
  if (!snap.failures().SatUp(s)) return tree;
  tree.dist[sn] = 0;
  tree.hops[sn] = 0;

  struct Item {
    double dist;
    int hops;
    int node;
    bool operator>(const Item& o) const {
      if (dist != o.dist) return dist > o.dist;
      if (hops != o.hops) return hops > o.hops;
      return node > o.node;
    }
  };
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  pq.push({0, 0, sn});
  while (!pq.empty()) {
    const Item it = pq.top();
    pq.pop();
    if (done[it.node]) continue;
    done[it.node] = 1;
    const SatelliteId u = FromFlat(cfg, it.node);
    for (Direction dir : kAllDirections) {
      const double w = snap.Weight(u, dir);
      if (w == kInf) continue;
      const int vn = FlatIndex(cfg, neighbor(cfg, u, dir));
      if (done[vn]) continue;
      const double nd = tree.dist[it.node] + w;
      const int nh = tree.hops[it.node] + 1;
      bool better = nd < tree.dist[vn] ||
                    (nd == tree.dist[vn] && nh < tree.hops[vn]);
      if (!better && nd == tree.dist[vn] && nh == tree.hops[vn]) {
        // Exact tie: equal-length chains compare lexicographically.
        const std::vector<int> cur = ChainTo(tree, tree.pred[vn]);
        const std::vector<int> alt = ChainTo(tree, it.node);
        better = std::lexicographical_compare(
            alt.begin(), alt.end(), cur.begin(), cur.end(),
            [&](int x, int y) { return FromFlat(cfg, x) < FromFlat(cfg, y); });
      }
      if (better) {
        tree.dist[vn] = nd;
        tree.hops[vn] = nh;
        tree.pred[vn] = it.node;
        pq.push({nd, nh, vn});
      }
    }
  }
  return tree;
}

std::optional<Path> dijkstra(const WeightedSnapshot& snap, SatelliteId s,
                             SatelliteId d) {
  if (s == d) return Path{};
  return dijkstra_tree(snap, s).PathTo(snap.config(), d);
}

std::optional<SatelliteId> lfa_backup(const WeightedSnapshot& snap,
                                      SatelliteId u, SatelliteId v,
                                      SatelliteId d) {
  const ConstellationConfig& cfg = snap.config();
  const ShortestPathTree from_u = dijkstra_tree(snap, u);
  const double du_d = from_u.dist[FlatIndex(cfg, d)];
  std::optional<SatelliteId> best;
  double best_cost = kInf;
  for (Direction dir : kAllDirections) {
    const SatelliteId n = neighbor(cfg, u, dir);
    if (n == v || !snap.Usable(u, dir)) continue;
    const ShortestPathTree from_n = dijkstra_tree(snap, n);
    const double dn_d = from_n.dist[FlatIndex(cfg, d)];
    const double dn_u = from_n.dist[FlatIndex(cfg, u)];
    if (!(dn_d < dn_u + du_d)) continue;
    const double cost = snap.Weight(u, dir) + dn_d;
    if (cost < best_cost || (cost == best_cost && best && n < *best)) {
      best_cost = cost;
      best = n;
    }
  }
  return best;
}

Path RemoveLoops(const Path& path) {
  Path out;
  std::unordered_map<SatelliteId, std::size_t> pos;
  for (const SatelliteId& s : path.sats) {
    if (auto it = pos.find(s); it != pos.end()) {
      for (std::size_t k = it->second + 1; k < out.sats.size(); ++k) {
        pos.erase(out.sats[k]);
      }
      out.sats.resize(it->second + 1);
      continue;
    }
    pos[s] = out.sats.size();
    out.sats.push_back(s);
  }
  return out;
}

std::optional<Path> mpls_frr_backup(const WeightedSnapshot& snap,
                                    const Path& primary, SatelliteId u,
                                    SatelliteId v) {
  const ConstellationConfig& cfg = snap.config();
  std::size_t at = primary.sats.size();
  for (std::size_t k = 0; k + 1 < primary.sats.size(); ++k) {
    if (primary.sats[k] == u && primary.sats[k + 1] == v) {
      at = k;
      break;
    }
  }
  if (at == primary.sats.size()) return std::nullopt;
  LinkStateMap cut;
  cut.failed_links.insert(MakeLink(cfg, u, v));
  const std::optional<Path> bypass = dijkstra(snap.WithExtraFailures(cut), u, v);
  if (!bypass) return std::nullopt;
  Path spliced;
  spliced.sats.assign(primary.sats.begin(), primary.sats.begin() + at);
  spliced.sats.insert(spliced.sats.end(), bypass->sats.begin(),
                      bypass->sats.end());
  spliced.sats.insert(spliced.sats.end(), primary.sats.begin() + at + 2,
                      primary.sats.end());
  return RemoveLoops(spliced);
}

bool delay_threshold_validate(const WeightedSnapshot& snap,
                              const std::vector<PathTag>& tags,
                              SatelliteId ingress, double stretch_pct) {
  const Path p = expand_tags(snap.config(), tags, ingress);
  const SatelliteId terminal = p.sats.back();
  double delay = 0;
  for (std::size_t k = 1; k < p.sats.size(); ++k) {
    delay += snap.geometry().delay(p.sats[k - 1], p.sats[k]);
  }
  const std::optional<Path> best = dijkstra(snap, ingress, terminal);
  if (!best) return false;
  const double shortest = best->Delay(snap.geometry());
  return delay <= (1.0 + stretch_pct / 100.0) * shortest;
}

}  // namespace starglider
