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

#include "starglider/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <stdexcept>
#include <tuple>

namespace starglider {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int Mod(int a, int m) {
  int r = a % m;
  return r < 0 ? r + m : r;
}

// Offset of `sat` from `origin` along `step` modulo `m`.
int Offset(int from, int to, int step, int m) { return Mod((to - from) * step, m); }

Path StraightPath(const ConstellationConfig& cfg, const Grid& g) {
  Path p;
  if (g.span_planes == 1) {
    for (int r = 0; r < g.span_indices; ++r) p.sats.push_back(g.At(cfg, r, 0));
  } else {
    for (int k = 0; k < g.span_planes; ++k) p.sats.push_back(g.At(cfg, 0, k));
  }
  return p;
}

// Path through the cross-orbit link of row rows[k] in every column k, joined
// by the minimal intra-orbit moves.
Path Staircase(const ConstellationConfig& cfg, const Grid& g,
               const std::vector<int>& rows) {
  Path p;
  int cur = 0;
  p.sats.push_back(g.At(cfg, 0, 0));
  auto move_to = [&](int target, int k) {
    while (cur != target) {
      cur += target > cur ? 1 : -1;
      p.sats.push_back(g.At(cfg, cur, k));
    }
  };
  for (int k = 0; k < g.NumColumns(); ++k) {
    move_to(rows[k], k);
    p.sats.push_back(g.At(cfg, cur, k + 1));
  }
  move_to(g.NumRows() - 1, g.span_planes - 1);
  return p;
}

// Rows of the cheapest staircase whose row never decreases from column to
// column. Every such staircase has R - 1 intra-orbit hops of equal length,
// so only the cross-orbit delays differ.
std::vector<int> CheapestMonotoneRows(const Snapshot& snap, const Grid& g) {
  const ConstellationConfig& cfg = snap.config();
  const int rows = g.NumRows(), cols = g.NumColumns();
  // best[k][r]: cheapest cross-orbit delay through columns 0..k ending on r.
  std::vector<std::vector<double>> best(cols, std::vector<double>(rows, kInf));
  std::vector<std::vector<int>> from(cols, std::vector<int>(rows, -1));
  for (int k = 0; k < cols; ++k) {
    double run = kInf;
    int run_row = -1;
    for (int r = 0; r < rows; ++r) {
      const double prev = k == 0 ? 0.0 : best[k - 1][r];
      if (prev < run) {
        run = prev;
        run_row = r;
      }
      best[k][r] = run + snap.link(g.CrossLink(cfg, r, k)).delay_s;
      from[k][r] = run_row;
    }
  }
  std::vector<int> out(cols);
  int r = 0;
  for (int q = 1; q < rows; ++q) {
    if (best[cols - 1][q] < best[cols - 1][r]) r = q;
  }
  for (int k = cols - 1; k >= 0; --k) {
    out[k] = r;
    r = from[k][r];
  }
  return out;
}

// Staircase through `picks` when they never step back toward the source
// row. The seam between the last and first plane shifts the per-column
// picks by up to one row and can break that; then the cheapest monotone
// staircase replaces them.
Path MonotoneStaircase(const Snapshot& snap, const Grid& g,
                       const std::vector<int>& picks) {
  if (std::is_sorted(picks.begin(), picks.end())) {
    return Staircase(snap.config(), g, picks);
  }
  return Staircase(snap.config(), g, CheapestMonotoneRows(snap, g));
}

Path SingleRow(const ConstellationConfig& cfg, const Grid& g, int row) {
  return Staircase(cfg, g, std::vector<int>(g.NumColumns(), row));
}

// Distance of a link midpoint from the extreme parallel of `pole`.
double ExtremeDistance(const Snapshot& snap, const LinkId& l, Pole pole) {
  const double inc = snap.config().InclinationRad();
  const double lat = snap.link(l).midpoint_latitude_rad;
  return pole == Pole::kNorth ? inc - lat : lat + inc;
}

Grid SubGrid(const Grid& g, SatelliteId from, SatelliteId to, int planes,
             int indices) {
  Grid sub = g;
  sub.source = from;
  sub.destination = to;
  sub.span_planes = planes;
  sub.span_indices = indices;
  return sub;
}

int SplitRow(const Snapshot& snap, const Grid& g) {
  const ConstellationConfig& cfg = snap.config();
  int best = 0;
  double best_mean = kInf;
  for (int r = 0; r < g.NumRows(); ++r) {
    double sum = 0;
    for (int k = 0; k < g.span_planes; ++k) {
      sum += std::abs(snap.geo(g.At(cfg, r, k)).latitude_rad);
    }
    const double mean = sum / g.span_planes;
    if (mean < best_mean) {
      best_mean = mean;
      best = r;
    }
  }
  return best;
}

std::vector<Path> NonBothCandidates(const Snapshot& snap, const Grid& g,
                                    GridType type, MotionClass mc);

void CollectCandidateLinks(const Snapshot& snap, const Grid& g, int depth,
                           std::set<LinkId>& out) {
  const ConstellationConfig& cfg = snap.config();
  auto add_path = [&](const Path& p) {
    for (const LinkId& l : p.Links(cfg)) {
      if (l.kind == LinkKind::kCrossOrbit) out.insert(l);
    }
  };
  if (g.SinglePath()) {
    add_path(StraightPath(cfg, g));
    return;
  }
  const MotionClass mc = classify_motion(snap, g);
  if (mc.motion != Motion::kDiffDirBothExtremes) {
    for (const Path& p : NonBothCandidates(snap, g, classify_type(cfg, g), mc)) {
      add_path(p);
    }
    return;
  }
  if (depth >= 2) {
    // Nested split did not yield single-extreme parts: keep every link.
    for (const auto& row : g.Rows(cfg)) out.insert(row.begin(), row.end());
    return;
  }
  const int m = SplitRow(snap, g);
  for (int k = 0; k < g.span_planes; ++k) {
    const SatelliteId x = g.At(cfg, m, k);
    if (x != g.source) {
      CollectCandidateLinks(snap, SubGrid(g, g.source, x, k + 1, m + 1),
                            depth + 1, out);
    }
    if (x != g.destination) {
      CollectCandidateLinks(
          snap, SubGrid(g, x, g.destination, g.span_planes - k, g.NumRows() - m),
          depth + 1, out);
    }
  }
}

// Dijkstra inside the grid over all intra-orbit links and the allowed
// cross-orbit links.
Path RestrictedShortest(const Snapshot& snap, const Grid& g,
                        const std::set<LinkId>& allowed) {
  const ConstellationConfig& cfg = snap.config();
  const int rows = g.NumRows(), cols = g.span_planes;
  const int n = rows * cols;
  std::vector<double> dist(n, kInf);
  std::vector<int> hops(n, std::numeric_limits<int>::max());
  std::vector<int> pred(n, -1);
  using Item = std::tuple<double, int, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[0] = 0;
  hops[0] = 0;
  pq.push({0.0, 0, 0});
  while (!pq.empty()) {
    auto [du, hu, node] = pq.top();
    pq.pop();
    if (du > dist[node] || (du == dist[node] && hu > hops[node])) continue;
    const int r = node / cols, k = node % cols;
    const SatelliteId u = g.At(cfg, r, k);
    auto relax = [&](int r2, int k2, bool cross) {
      if (r2 < 0 || r2 >= rows || k2 < 0 || k2 >= cols) return;
      const SatelliteId v = g.At(cfg, r2, k2);
      const LinkId l = MakeLink(cfg, u, v);
      if (cross && !allowed.contains(l)) return;
      const int vn = r2 * cols + k2;
      const double nd = du + snap.link(l).delay_s;
      if (nd < dist[vn] || (nd == dist[vn] && hu + 1 < hops[vn])) {
        dist[vn] = nd;
        hops[vn] = hu + 1;
        pred[vn] = node;
        pq.push({nd, hu + 1, vn});
      }
    };
    relax(r + 1, k, false);
    relax(r - 1, k, false);
    relax(r, k + 1, true);
    relax(r, k - 1, true);
  }
  const int target = n - 1;
  if (dist[target] == kInf) return {};
  std::vector<int> chain;
  for (int v = target; v != -1; v = pred[v]) chain.push_back(v);
  Path p;
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    p.sats.push_back(g.At(cfg, *it / cols, *it % cols));
  }
  return p;
}

std::vector<Path> NonBothCandidates(const Snapshot& snap, const Grid& g,
                                    GridType type, MotionClass mc) {
  const ConstellationConfig& cfg = snap.config();
  const int rows = g.NumRows(), cols = g.NumColumns();
  auto delta = [&](int r, int k) {
    return snap.link(g.CrossLink(cfg, r, k)).equator_distance_rad;
  };
  std::vector<Path> out;

  if (mc.motion == Motion::kSameDirection && type == GridType::kTypeA) {
    // Farthest-from-equator link per column; ties keep the lower row, so a
    // source-row/destination-row tie picks the source row.
    std::vector<int> pick(cols, 0);
    for (int k = 0; k < cols; ++k) {
      for (int r = 1; r < rows; ++r) {
        if (delta(r, k) > delta(pick[k], k)) pick[k] = r;
      }
    }
    out.push_back(MonotoneStaircase(snap, g, pick));
  } else if (mc.motion == Motion::kSameDirection) {
    const double first = delta(0, 0);
    const double last = delta(rows - 1, cols - 1);
    for (int r = 0; r < rows; ++r) {
      if (delta(r, 0) >= first && delta(r, cols - 1) >= last) {
        out.push_back(SingleRow(cfg, g, r));
      }
    }
  } else if (type == GridType::kTypeA) {
    auto closest_row = [&](int k) {
      int best = 0;
      for (int r = 1; r < rows; ++r) {
        if (ExtremeDistance(snap, g.CrossLink(cfg, r, k), mc.pole) <
            ExtremeDistance(snap, g.CrossLink(cfg, best, k), mc.pole)) {
          best = r;
        }
      }
      return best;
    };
    const int a = closest_row(0), b = closest_row(cols - 1);
    for (int r = std::min(a, b); r <= std::max(a, b); ++r) {
      out.push_back(SingleRow(cfg, g, r));
    }
    // A nonzero phase offset can move the closest link one row between
    // columns; the staircase through those links then beats every row.
    std::vector<int> pick(cols);
    for (int k = 0; k < cols; ++k) pick[k] = closest_row(k);
    out.push_back(MonotoneStaircase(snap, g, pick));
  } else {
    std::vector<int> pick(cols, 0);
    for (int k = 0; k < cols; ++k) {
      for (int r = 1; r < rows; ++r) {
        if (ExtremeDistance(snap, g.CrossLink(cfg, r, k), mc.pole) <
            ExtremeDistance(snap, g.CrossLink(cfg, pick[k], k), mc.pole)) {
          pick[k] = r;
        }
      }
    }
    out.push_back(MonotoneStaircase(snap, g, pick));
  }
  return out;
}

}  // namespace

SatelliteId Grid::At(const ConstellationConfig& cfg, int row,
                     int offset) const {
  return Canonical(cfg, {source.plane + offset * plane_step,
                         source.index + row * index_step});
}

LinkId Grid::CrossLink(const ConstellationConfig& cfg, int row,
                       int col) const {
  return LinkFrom(cfg, At(cfg, row, col), PlaneDirection());
}

std::vector<std::vector<LinkId>> Grid::Rows(
    const ConstellationConfig& cfg) const {
  std::vector<std::vector<LinkId>> out(NumColumns() > 0 ? NumRows() : 0);
  for (std::size_t r = 0; r < out.size(); ++r) {
    for (int k = 0; k < NumColumns(); ++k) {
      out[r].push_back(CrossLink(cfg, static_cast<int>(r), k));
    }
  }
  return out;
}

std::vector<std::vector<LinkId>> Grid::Columns(
    const ConstellationConfig& cfg) const {
  std::vector<std::vector<LinkId>> out(NumColumns());
  for (int k = 0; k < NumColumns(); ++k) {
    for (int r = 0; r < NumRows(); ++r) out[k].push_back(CrossLink(cfg, r, k));
  }
  return out;
}

std::vector<SatelliteId> Grid::Satellites(const ConstellationConfig& cfg) const {
  std::vector<SatelliteId> out;
  for (int r = 0; r < span_indices; ++r) {
    for (int k = 0; k < span_planes; ++k) out.push_back(At(cfg, r, k));
  }
  return out;
}

std::vector<SatelliteId> Grid::Border(const ConstellationConfig& cfg) const {
  std::vector<SatelliteId> out;
  for (int r = 0; r < span_indices; ++r) {
    for (int k = 0; k < span_planes; ++k) {
      if (r == 0 || r == span_indices - 1 || k == 0 || k == span_planes - 1) {
        out.push_back(At(cfg, r, k));
      }
    }
  }
  return out;
}

bool Grid::Contains(const ConstellationConfig& cfg, SatelliteId sat) const {
  return Offset(source.plane, sat.plane, plane_step, cfg.num_planes) <
             span_planes &&
         Offset(source.index, sat.index, index_step, cfg.sats_per_plane) <
             span_indices;
}

const char* ToString(GridType type) {
  switch (type) {
    case GridType::kTypeA:
      return "type_a";
    case GridType::kTypeB:
      return "type_b";
    case GridType::kSinglePath:
      return "single_path";
  }
  return "?";
}

const char* ToString(Motion motion) {
  switch (motion) {
    case Motion::kSameDirection:
      return "same_direction";
    case Motion::kDiffDirSingleExtreme:
      return "diff_dir_single_extreme";
    case Motion::kDiffDirBothExtremes:
      return "diff_dir_both_extremes";
  }
  return "?";
}

std::vector<Grid> enumerate_grids(const ConstellationConfig& cfg,
                                  SatelliteId s, SatelliteId d) {
  if (s == d) throw std::invalid_argument("source equals destination");
  const int dp = Mod(d.plane - s.plane, cfg.num_planes);
  const int di = Mod(d.index - s.index, cfg.sats_per_plane);
  std::vector<Grid> out;
  auto add = [&](int ps, int cp, int is, int ci) {
    out.push_back(Grid{s, d, ps, is, cp, ci});
  };
  if (dp == 0) {
    add(1, 1, 1, di + 1);
    add(1, 1, -1, cfg.sats_per_plane - di + 1);
  } else if (di == 0) {
    add(1, dp + 1, 1, 1);
    add(-1, cfg.num_planes - dp + 1, 1, 1);
  } else {
    for (int ps : {1, -1}) {
      for (int is : {1, -1}) {
        add(ps, ps > 0 ? dp + 1 : cfg.num_planes - dp + 1, is,
            is > 0 ? di + 1 : cfg.sats_per_plane - di + 1);
      }
    }
  }
  return out;
}

GridType classify_type(const ConstellationConfig& cfg, const Grid& grid) {
  if (grid.SinglePath()) return GridType::kSinglePath;
  // Only the source row's far corner c1 decides. With s on the equator the
  // grid body lies on the side the index step points to; TypeA when c1 is
  // on that side too (or on the equator), TypeB when c1 trails behind s.
  // Intermediate planes are ignored: across the seam between the last and
  // first plane they shift by almost a full slot and would straddle.
  auto phase = [&](SatelliteId sat) {
    return 2.0 * std::numbers::pi *
           (sat.index + sat.plane * cfg.phase_offset) / cfg.sats_per_plane;
  };
  const SatelliteId c1 = grid.At(cfg, 0, grid.span_planes - 1);
  const double rel = std::sin(phase(c1) - phase(grid.source));
  if (std::abs(rel) < 1e-12) return GridType::kTypeA;
  return rel * grid.index_step > 0 ? GridType::kTypeA : GridType::kTypeB;
}

MotionClass classify_motion(const Snapshot& snap, const Grid& grid) {
  const ConstellationConfig& cfg = snap.config();
  bool north = false, south = false;
  auto visit = [&](SatelliteId a, SatelliteId b) {
    const GeoState& ga = snap.geo(a);
    const GeoState& gb = snap.geo(b);
    if (ga.heading == gb.heading) return;
    (ga.latitude_rad + gb.latitude_rad > 0 ? north : south) = true;
  };
  for (int r = 0; r < grid.NumRows(); ++r) {
    for (int k = 0; k < grid.span_planes; ++k) {
      const SatelliteId here = grid.At(cfg, r, k);
      if (r + 1 < grid.NumRows()) visit(here, grid.At(cfg, r + 1, k));
      if (k + 1 < grid.span_planes) visit(here, grid.At(cfg, r, k + 1));
    }
  }
  if (!north && !south) return {Motion::kSameDirection, Pole::kNone};
  if (north && south) return {Motion::kDiffDirBothExtremes, Pole::kNone};
  // Both end rows must be closer to the equator than to the other extreme.
  const double half = cfg.InclinationRad() / 2;
  for (int r : {0, grid.NumRows() - 1}) {
    for (int k = 0; k < grid.span_planes; ++k) {
      const double lat = snap.geo(grid.At(cfg, r, k)).latitude_rad;
      if (north ? lat <= -half : lat >= half) {
        return {Motion::kDiffDirBothExtremes, Pole::kNone};
      }
    }
  }
  return {Motion::kDiffDirSingleExtreme, north ? Pole::kNorth : Pole::kSouth};
}

MotionClass classify_motion(const ConstellationConfig& cfg, const Grid& grid,
                            double t) {
  return classify_motion(Snapshot(cfg, t), grid);
}

std::set<LinkId> both_extremes_link_set(const Snapshot& snap,
                                        const Grid& grid) {
  std::set<LinkId> out;
  const ConstellationConfig& cfg = snap.config();
  const int m = SplitRow(snap, grid);
  for (int k = 0; k < grid.span_planes; ++k) {
    const SatelliteId x = grid.At(cfg, m, k);
    if (x != grid.source) {
      CollectCandidateLinks(snap, SubGrid(grid, grid.source, x, k + 1, m + 1),
                            1, out);
    }
    if (x != grid.destination) {
      CollectCandidateLinks(snap,
                            SubGrid(grid, x, grid.destination,
                                    grid.span_planes - k, grid.NumRows() - m),
                            1, out);
    }
  }
  return out;
}

std::vector<Path> candidate_paths(const Snapshot& snap, const Grid& grid) {
  const ConstellationConfig& cfg = snap.config();
  if (grid.SinglePath()) return {StraightPath(cfg, grid)};
  const MotionClass mc = classify_motion(snap, grid);
  if (mc.motion == Motion::kDiffDirBothExtremes) {
    Path p = RestrictedShortest(snap, grid, both_extremes_link_set(snap, grid));
    if (p.empty()) return {};
    return {p};
  }
  return NonBothCandidates(snap, grid, classify_type(cfg, grid), mc);
}

std::vector<Path> candidate_paths(const ConstellationConfig& cfg,
                                  const Grid& grid, double t) {
  return candidate_paths(Snapshot(cfg, t), grid);
}

TheoryResult theory_shortest_path_detailed(const Snapshot& snap,
                                           SatelliteId s, SatelliteId d) {
  TheoryResult best;
  if (s == d) return best;
  const ConstellationConfig& cfg = snap.config();
  const std::vector<Grid> grids = enumerate_grids(cfg, s, d);
  double best_delay = kInf;
  for (std::size_t gi = 0; gi < grids.size(); ++gi) {
    for (const Path& p : candidate_paths(snap, grids[gi])) {
      const double delay = p.Delay(snap);
      if (best.grid_index < 0 || PathLess(p, delay, best.path, best_delay)) {
        best.path = p;
        best_delay = delay;
        best.grid_index = static_cast<int>(gi);
      }
    }
  }
  if (best.grid_index < 0) {
    throw std::logic_error("no candidate path in any grid");
  }
  best.delay_s = best_delay;
  best.grid = grids[best.grid_index];
  best.type = classify_type(cfg, best.grid);
  best.motion = best.grid.SinglePath() ? MotionClass{}
                                       : classify_motion(snap, best.grid);
  return best;
}

Path theory_shortest_path(const Snapshot& snap, SatelliteId s, SatelliteId d) {
  return theory_shortest_path_detailed(snap, s, d).path;
}

Path theory_shortest_path(const ConstellationConfig& cfg, SatelliteId s,
                          SatelliteId d, double t) {
  return theory_shortest_path(Snapshot(cfg, t), s, d);
}

MinimalGrid minimal_grid(const ConstellationConfig& cfg, SatelliteId s,
                         SatelliteId d) {
  const std::vector<Grid> grids = enumerate_grids(cfg, s, d);
  const Grid* best = &grids[0];
  for (const Grid& g : grids) {
    const long size = static_cast<long>(g.span_planes) * g.span_indices;
    const long best_size =
        static_cast<long>(best->span_planes) * best->span_indices;
    if (size < best_size ||
        (size == best_size && g.span_planes < best->span_planes)) {
      best = &g;
    }
  }
  return {*best, best->span_indices, best->span_planes};
}

}  // namespace starglider
