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

#ifndef STARGLIDER_GRID_HPP_
#define STARGLIDER_GRID_HPP_

#include <set>
#include <vector>

#include "starglider/constellation.hpp"
#include "starglider/path.hpp"

namespace starglider {

// Rectangular sub-torus with `source` and `destination` at opposite corners.
// Satellite (row r, plane offset k) is source + r index steps + k plane
// steps. Row r holds the cross-orbit links between consecutive planes at
// that index; column k holds the cross-orbit links between plane offsets k
// and k + 1. Row 0 is the source row, column 0 the source column.
struct Grid {
  SatelliteId source;
  SatelliteId destination;
  int plane_step = 1;   // +1 East, -1 West
  int index_step = 1;   // +1 Prograde, -1 Retrograde
  int span_planes = 1;  // satellites per row
  int span_indices = 1;  // satellites per intra-orbit chain

  bool SinglePath() const { return span_planes == 1 || span_indices == 1; }
  int NumRows() const { return span_indices; }
  int NumColumns() const { return span_planes - 1; }
  Direction PlaneDirection() const {
    return plane_step > 0 ? Direction::kEast : Direction::kWest;
  }
  Direction IndexDirection() const {
    return index_step > 0 ? Direction::kPrograde : Direction::kRetrograde;
  }

  SatelliteId At(const ConstellationConfig& cfg, int row, int offset) const;
  // Cross-orbit link of row `row` in column `col`.
  LinkId CrossLink(const ConstellationConfig& cfg, int row, int col) const;
  std::vector<std::vector<LinkId>> Rows(const ConstellationConfig& cfg) const;
  std::vector<std::vector<LinkId>> Columns(const ConstellationConfig& cfg) const;
  std::vector<SatelliteId> Satellites(const ConstellationConfig& cfg) const;
  std::vector<SatelliteId> Border(const ConstellationConfig& cfg) const;
  bool Contains(const ConstellationConfig& cfg, SatelliteId sat) const;

  friend bool operator==(const Grid&, const Grid&) = default;
};

enum class GridType { kTypeA, kTypeB, kSinglePath };

enum class Motion {
  kSameDirection,
  kDiffDirSingleExtreme,
  kDiffDirBothExtremes,
};

enum class Pole { kNone, kNorth, kSouth };

struct MotionClass {
  Motion motion = Motion::kSameDirection;
  Pole pole = Pole::kNone;  // set for kDiffDirSingleExtreme only

  friend bool operator==(const MotionClass&, const MotionClass&) = default;
};

const char* ToString(GridType type);
const char* ToString(Motion motion);

// Four grids when s and d share neither plane nor index, otherwise the two
// single-path grids. Order: (East|West) x (Prograde|Retrograde), East and
// Prograde first. Throws std::invalid_argument when s == d.
std::vector<Grid> enumerate_grids(const ConstellationConfig& cfg,
                                  SatelliteId s, SatelliteId d);

// Evaluated at the instant the source sits on the equator: TypeB when the
// far corner of the source row lies strictly on the opposite side from the
// rest of the grid, TypeA otherwise. Time-invariant.
GridType classify_type(const ConstellationConfig& cfg, const Grid& grid);

MotionClass classify_motion(const Snapshot& snap, const Grid& grid);
MotionClass classify_motion(const ConstellationConfig& cfg, const Grid& grid,
                            double t);

// Candidate shortest paths of `grid` at the snapshot instant.
std::vector<Path> candidate_paths(const Snapshot& snap, const Grid& grid);
std::vector<Path> candidate_paths(const ConstellationConfig& cfg,
                                  const Grid& grid, double t);

// Cross-orbit links the shortest path may use in a grid close to both
// extreme parallels: the union of the candidate links of the two sub-grids
// obtained by splitting at the row nearest the equator.
std::set<LinkId> both_extremes_link_set(const Snapshot& snap,
                                        const Grid& grid);

struct TheoryResult {
  Path path;
  double delay_s = 0;
  int grid_index = -1;  // into enumerate_grids(); -1 when s == d
  Grid grid;
  GridType type = GridType::kSinglePath;
  MotionClass motion;
};

TheoryResult theory_shortest_path_detailed(const Snapshot& snap,
                                           SatelliteId s, SatelliteId d);
// Empty path when s == d.
Path theory_shortest_path(const Snapshot& snap, SatelliteId s, SatelliteId d);
Path theory_shortest_path(const ConstellationConfig& cfg, SatelliteId s,
                          SatelliteId d, double t);

struct MinimalGrid {
  Grid grid;
  int r_min = 0;  // satellites per intra-orbit chain
  int c_min = 0;  // satellites per row
};

// Smallest grid by satellite count; ties go to fewer planes, then to
// enumeration order. Throws std::invalid_argument when s == d.
MinimalGrid minimal_grid(const ConstellationConfig& cfg, SatelliteId s,
                         SatelliteId d);

}  // namespace starglider

#endif  // STARGLIDER_GRID_HPP_
