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

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "starglider/path.hpp"
#include "starglider/path_codec.hpp"

namespace starglider {
namespace {

// Independent serializer: builds the header as a '0'/'1' string, then packs
// it into bytes most significant bit first.
std::string Bits(std::uint64_t v, int n) {
  std::string s;
  for (int b = n - 1; b >= 0; --b) s += ((v >> b) & 1u) ? '1' : '0';
  return s;
}

std::vector<std::uint8_t> OraclePack(const PacketHeader& h) {
  std::string s = Bits(h.src_gs, 32) + Bits(h.dst_gs, 32) +
                  Bits(h.loop_flag, 2) + Bits(h.curr_index, 4) +
                  Bits(h.tags.size(), 4);
  for (const PathTag& t : h.tags) {
    s += Bits(static_cast<int>(t.direction), 2) + Bits(t.steps, 7);
  }
  while (s.size() % 8) s += '0';
  std::vector<std::uint8_t> out;
  for (std::size_t k = 0; k < s.size(); k += 8) {
    out.push_back(static_cast<std::uint8_t>(std::stoi(s.substr(k, 8), nullptr, 2)));
  }
  return out;
}

PacketHeader Example() {
  PacketHeader h;
  h.src_gs = 1;
  h.dst_gs = 2;
  h.tags = {{Direction::kEast, 8}, {Direction::kRetrograde, 7},
            {Direction::kEast, 9}};
  return h;
}

TEST(Codec, HandComputedBytes) {
  // 74 fixed bits + 3 x 9 tag bits = 101 bits, 3 bits of padding.
  const std::vector<std::uint8_t> expected = {
      0x00, 0x00, 0x00, 0x01, 0x00, 0x00, 0x00, 0x02,
      0x00, 0xC1, 0x18, 0x70, 0x48};
  EXPECT_EQ(pack_header(Example()), expected);
  EXPECT_EQ(OraclePack(Example()), expected);
  EXPECT_EQ(unpack_header(expected), Example());
}

TEST(Codec, SizeIsFixedPartPlusNineBitsPerTag) {
  for (int n = 0; n <= kMaxTags; ++n) {
    PacketHeader h;
    h.tags.assign(n, {Direction::kWest, 1});
    const std::size_t bits = kFixedHeaderBits + kTagBits * n;
    EXPECT_EQ(pack_header(h).size(), (bits + 7) / 8);
  }
}

TEST(Codec, RandomHeadersRoundTripAgainstOracle) {
  std::mt19937_64 rng(42);
  for (int k = 0; k < 10000; ++k) {
    PacketHeader h;
    h.src_gs = static_cast<std::uint32_t>(rng());
    h.dst_gs = static_cast<std::uint32_t>(rng());
    const int n = static_cast<int>(rng() % (kMaxTags + 1));
    for (int j = 0; j < n; ++j) {
      h.tags.push_back({static_cast<Direction>(rng() % 4),
                        static_cast<int>(rng() % (kMaxTagSteps + 1))});
    }
    h.curr_index = static_cast<int>(rng() % (n + 1));
    h.loop_flag = static_cast<int>(rng() % (kMaxLoopFlag + 1));
    const std::vector<std::uint8_t> bytes = pack_header(h);
    ASSERT_EQ(bytes, OraclePack(h));
    ASSERT_EQ(unpack_header(bytes), h);
  }
}

TEST(Codec, RejectsMalformedInput) {
  std::vector<std::uint8_t> bytes = pack_header(Example());
  std::vector<std::uint8_t> truncated(bytes.begin(), bytes.end() - 1);
  EXPECT_THROW(unpack_header(truncated), std::invalid_argument);
  std::vector<std::uint8_t> trailing = bytes;
  trailing.push_back(0);
  EXPECT_THROW(unpack_header(trailing), std::invalid_argument);
  std::vector<std::uint8_t> padded = bytes;
  padded.back() |= 0x01;
  EXPECT_THROW(unpack_header(padded), std::invalid_argument);
  // loop_flag = 3 sits in the top two bits of byte 8.
  std::vector<std::uint8_t> loop = bytes;
  loop[8] |= 0xC0;
  EXPECT_THROW(unpack_header(loop), std::invalid_argument);
  // curr_index 4 > tag_count 3.
  std::vector<std::uint8_t> index = bytes;
  index[8] = static_cast<std::uint8_t>((index[8] & 0xC3) | (4 << 2));
  EXPECT_THROW(unpack_header(index), std::invalid_argument);
  EXPECT_THROW(unpack_header({}), std::invalid_argument);
}

TEST(Codec, PackRejectsInvariantViolations) {
  PacketHeader h = Example();
  h.tags.assign(kMaxTags + 1, {Direction::kEast, 1});
  EXPECT_THROW(pack_header(h), std::invalid_argument);
  h = Example();
  h.tags[0].steps = kMaxTagSteps + 1;
  EXPECT_THROW(pack_header(h), std::invalid_argument);
  h = Example();
  h.loop_flag = 3;
  EXPECT_THROW(pack_header(h), std::invalid_argument);
  h = Example();
  h.curr_index = 4;
  EXPECT_THROW(pack_header(h), std::invalid_argument);
}

TEST(Encoding, RunLengthOfDirections) {
  ConstellationConfig cfg;
  Path p;
  p.sats.push_back({0, 0});
  for (int k = 0; k < 8; ++k) p.sats.push_back(neighbor(cfg, p.sats.back(), Direction::kEast));
  for (int k = 0; k < 7; ++k) p.sats.push_back(neighbor(cfg, p.sats.back(), Direction::kRetrograde));
  for (int k = 0; k < 9; ++k) p.sats.push_back(neighbor(cfg, p.sats.back(), Direction::kEast));
  const std::vector<PathTag> tags = encode_path(cfg, p);
  EXPECT_EQ(ToString(tags), "[E8,R7,E9]");
  EXPECT_EQ(expand_tags(cfg, tags, {0, 0}), p);
}

TEST(Encoding, LongRunsSplitAt127) {
  ConstellationConfig cfg;
  cfg.sats_per_plane = 400;
  Path p;
  p.sats.push_back({0, 0});
  for (int k = 0; k < 300; ++k) {
    p.sats.push_back(neighbor(cfg, p.sats.back(), Direction::kPrograde));
  }
  const std::vector<PathTag> tags = encode_path(cfg, p);
  EXPECT_EQ(ToString(tags), "[P127,P127,P46]");
  EXPECT_EQ(expand_tags(cfg, tags, {0, 0}), p);
}

TEST(Encoding, RandomWalksRoundTrip) {
  ConstellationConfig cfg;
  std::mt19937_64 rng(8);
  for (int k = 0; k < 1000; ++k) {
    Path p;
    p.sats.push_back({static_cast<int>(rng() % 24), static_cast<int>(rng() % 66)});
    const int len = static_cast<int>(rng() % 40);
    for (int j = 0; j < len; ++j) {
      p.sats.push_back(neighbor(cfg, p.sats.back(), kAllDirections[rng() % 4]));
    }
    const std::vector<PathTag> tags = encode_path(cfg, p);
    ASSERT_EQ(expand_tags(cfg, tags, p.sats.front()), p);
    for (std::size_t j = 1; j < tags.size(); ++j) {
      EXPECT_FALSE(tags[j].direction == tags[j - 1].direction &&
                   tags[j - 1].steps < kMaxTagSteps);
    }
  }
  Path bad;
  bad.sats = {{0, 0}, {2, 2}};
  EXPECT_THROW(encode_path(cfg, bad), std::invalid_argument);
}

}  // namespace
}  // namespace starglider
