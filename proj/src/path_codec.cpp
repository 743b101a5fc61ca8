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

#include "starglider/path_codec.hpp"

#include <stdexcept>

namespace starglider {

std::string ToString(const PathTag& tag) {
  return std::string(1, DirectionLetter(tag.direction)) +
         std::to_string(tag.steps);
}

std::string ToString(const std::vector<PathTag>& tags) {
  std::string out = "[";
  for (std::size_t k = 0; k < tags.size(); ++k) {
    if (k) out += ",";
    out += ToString(tags[k]);
  }
  return out + "]";
}

void PacketHeader::Validate() const {
  if (tag_count() > kMaxTags) {
    throw std::invalid_argument("tag_count exceeds 15");
  }
  if (curr_index < 0 || curr_index > tag_count()) {
    throw std::invalid_argument("curr_index out of range");
  }
  if (loop_flag < 0 || loop_flag > kMaxLoopFlag) {
    throw std::invalid_argument("loop_flag out of range");
  }
  for (const PathTag& t : tags) {
    if (t.steps < 0 || t.steps > kMaxTagSteps) {
      throw std::invalid_argument("tag steps out of range");
    }
  }
}

std::vector<PathTag> encode_path(const ConstellationConfig& cfg,
                                 const Path& path) {
  std::vector<PathTag> tags;
  for (Direction dir : path.Directions(cfg)) {
    if (!tags.empty() && tags.back().direction == dir &&
        tags.back().steps < kMaxTagSteps) {
      ++tags.back().steps;
    } else {
      tags.push_back({dir, 1});
    }
  }
  return tags;
}

Path expand_tags(const ConstellationConfig& cfg,
                 const std::vector<PathTag>& tags, SatelliteId origin) {
  Path p;
  p.sats.push_back(origin);
  for (const PathTag& t : tags) {
    for (int k = 0; k < t.steps; ++k) {
      p.sats.push_back(neighbor(cfg, p.sats.back(), t.direction));
    }
  }
  return p;
}

namespace {

class BitWriter {
 public:
  void Put(std::uint32_t value, int bits) {
    for (int b = bits - 1; b >= 0; --b) {
      if (used_ % 8 == 0) bytes_.push_back(0);
      if ((value >> b) & 1u) bytes_.back() |= static_cast<std::uint8_t>(0x80u >> (used_ % 8));
      ++used_;
    }
  }
  std::vector<std::uint8_t> Take() { return std::move(bytes_); }

 private:
  std::vector<std::uint8_t> bytes_;
  std::size_t used_ = 0;
};

class BitReader {
 public:
  explicit BitReader(const std::vector<std::uint8_t>& bytes) : bytes_(bytes) {}
  std::uint32_t Get(int bits) {
    if (pos_ + bits > bytes_.size() * 8) {
      throw std::invalid_argument("header truncated");
    }
    std::uint32_t v = 0;
    for (int b = 0; b < bits; ++b, ++pos_) {
      v = (v << 1) | ((bytes_[pos_ / 8] >> (7 - pos_ % 8)) & 1u);
    }
    return v;
  }
  std::size_t pos() const { return pos_; }

 private:
  const std::vector<std::uint8_t>& bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::uint8_t> pack_header(const PacketHeader& h) {
  h.Validate();
  BitWriter w;
  w.Put(h.src_gs, 32);
  w.Put(h.dst_gs, 32);
  w.Put(static_cast<std::uint32_t>(h.loop_flag), 2);
  w.Put(static_cast<std::uint32_t>(h.curr_index), 4);
  w.Put(static_cast<std::uint32_t>(h.tag_count()), 4);
  for (const PathTag& t : h.tags) {
    w.Put(static_cast<std::uint32_t>(t.direction), 2);
    w.Put(static_cast<std::uint32_t>(t.steps), 7);
  }
  return w.Take();
}

PacketHeader unpack_header(const std::vector<std::uint8_t>& bytes) {
  BitReader r(bytes);
  PacketHeader h;
  h.src_gs = r.Get(32);
  h.dst_gs = r.Get(32);
  h.loop_flag = static_cast<int>(r.Get(2));
  h.curr_index = static_cast<int>(r.Get(4));
  const int count = static_cast<int>(r.Get(4));
  if (h.loop_flag > kMaxLoopFlag) {
    throw std::invalid_argument("loop_flag out of range");
  }
  if (h.curr_index > count) {
    throw std::invalid_argument("curr_index exceeds tag_count");
  }
  for (int k = 0; k < count; ++k) {
    PathTag t;
    t.direction = static_cast<Direction>(r.Get(2));
    t.steps = static_cast<int>(r.Get(7));
    h.tags.push_back(t);
  }
  const std::size_t total_bits = r.pos();
  const std::size_t expected_bytes = (total_bits + 7) / 8;
  if (bytes.size() != expected_bytes) {
    throw std::invalid_argument("unexpected trailing bytes");
  }
  const int pad = static_cast<int>(expected_bytes * 8 - total_bits);
  if (pad > 0 && r.Get(pad) != 0) {
    throw std::invalid_argument("nonzero padding");
  }
  return h;
}

}  // namespace starglider
