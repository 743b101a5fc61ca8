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

#ifndef STARGLIDER_PATH_CODEC_HPP_
#define STARGLIDER_PATH_CODEC_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "starglider/constellation.hpp"
#include "starglider/path.hpp"

namespace starglider {

inline constexpr int kMaxTagSteps = 127;
inline constexpr int kMaxTags = 15;
inline constexpr int kMaxLoopFlag = 2;
inline constexpr int kTagBits = 9;
inline constexpr int kFixedHeaderBits = 32 + 32 + 2 + 4 + 4;

struct PathTag {
  Direction direction = Direction::kEast;
  int steps = 0;  // 0..127

  friend bool operator==(const PathTag&, const PathTag&) = default;
};

std::string ToString(const PathTag& tag);              // e.g. "E8"
std::string ToString(const std::vector<PathTag>& tags);  // e.g. "[E8,P7,E9]"

// Consumed tags (steps == 0) stay in `tags`; curr_index points past them.
struct PacketHeader {
  std::uint32_t src_gs = 0;
  std::uint32_t dst_gs = 0;
  int loop_flag = 0;
  int curr_index = 0;
  std::vector<PathTag> tags;

  int tag_count() const { return static_cast<int>(tags.size()); }
  // Throws std::invalid_argument when an invariant is violated.
  void Validate() const;

  friend bool operator==(const PacketHeader&, const PacketHeader&) = default;
};

// Maximal same-direction runs in traversal order; runs longer than 127
// steps are split. Throws std::invalid_argument on non-adjacent steps.
std::vector<PathTag> encode_path(const ConstellationConfig& cfg,
                                 const Path& path);

Path expand_tags(const ConstellationConfig& cfg,
                 const std::vector<PathTag>& tags, SatelliteId origin);

// Wire format, most significant bit first:
//   src_gs(32) dst_gs(32) loop_flag(2) curr_index(4) tag_count(4)
//   tag_count x [direction(2) steps(7)]  zero padding to a byte boundary.
std::vector<std::uint8_t> pack_header(const PacketHeader& h);
// Throws std::invalid_argument on truncated input, invariant violations,
// trailing bytes or nonzero padding.
PacketHeader unpack_header(const std::vector<std::uint8_t>& bytes);

}  // namespace starglider

#endif  // STARGLIDER_PATH_CODEC_HPP_
