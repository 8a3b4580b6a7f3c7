// Copyright 2026 The Squares RNG Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SQUARES_STREAM_HPP_
#define SQUARES_STREAM_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "squares/core.hpp"
#include "squares/keys.hpp"

namespace squares {

// Wide enough to hold 2^64 exactly.
using WideCount = unsigned __int128;

inline constexpr WideCount kCounterSpace = WideCount{1} << 64;

enum class Width { k32 = 32, k64 = 64 };

constexpr std::size_t word_bytes(Width w) { return w == Width::k32 ? 4 : 8; }

class WrongWidthError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Sequential cursor over one key's output space. Output at cursor c is
// squares32(c, key) or squares64(c, key); the cursor wraps silently modulo
// 2^64. Not thread-safe; use one stream per worker (see partition()).
//
// The key is taken as a raw word so degenerate keys can be exercised; use
// the Key overload for validated keys.
class SquaresStream {
 public:
  SquaresStream(std::uint64_t key, Word64 counter, Width width)
      : key_(key), counter_(counter), width_(width) {}
  SquaresStream(const Key& key, Word64 counter, Width width)
      : SquaresStream(key.value(), counter, width) {}

  std::uint64_t key() const { return key_; }
  Word64 counter() const { return counter_; }
  Width width() const { return width_; }

  // Width 32 only.
  Output32 next_u32();
  // Width 64 only, as are the float conversions.
  Output64 next_u64();
  // (x >> 11) * 2^-53, in [0, 1).
  double next_f64();
  // One squares64 draw split into (low half, high half), each as
  // (half >> 8) * 2^-24.
  std::pair<float, float> next_f32_pair();

  // Advances the cursor by n in O(1), wrapping modulo 2^64.
  SquaresStream& skip(Word64 n) {
    counter_ += n;
    return *this;
  }

  // Writes little-endian words into out. A trailing partial word takes the
  // leading bytes of one full draw; the cursor advances by
  // ceil(out.size() / word_bytes).
  void fill_bytes(std::span<std::byte> out);
  std::vector<std::byte> fill_bytes(std::size_t len);

 private:
  void require(Width w, const char* op) const;

  std::uint64_t key_;
  Word64 counter_;
  Width width_;
};

// Conversions used by the stream; exposed for known-answer checks.
constexpr double to_unit_f64(Output64 x) {
  return static_cast<double>(x >> 11) * 0x1.0p-53;
}
constexpr float to_unit_f32(Output32 x) {
  return static_cast<float>(x >> 8) * 0x1.0p-24f;
}
constexpr std::pair<float, float> to_unit_f32_pair(Output64 x) {
  return {to_unit_f32(static_cast<Output32>(x)),
          to_unit_f32(static_cast<Output32>(x >> 32))};
}

struct Partition {
  std::uint64_t key;
  Word64 start;
  WideCount length;

  SquaresStream stream(Width width) const { return {key, start, width}; }
};

// Splits the counter space into num_parts contiguous ranges of
// floor(2^64 / num_parts) counters; the last range absorbs the remainder.
// Throws std::invalid_argument for num_parts == 0 and std::out_of_range for
// idx >= num_parts.
Partition partition(std::uint64_t key, std::uint64_t num_parts,
                    std::uint64_t idx);

// Fills out with the bytes SquaresStream(key, counter, width).fill_bytes
// would produce, splitting the work over `threads` workers on disjoint
// counter ranges. The result does not depend on the thread count.
void fill_bytes_parallel(std::uint64_t key, Word64 counter, Width width,
                         std::span<std::byte> out, unsigned threads);

}  // namespace squares

#endif  // SQUARES_STREAM_HPP_
