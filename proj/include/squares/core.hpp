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

#ifndef SQUARES_CORE_HPP_
#define SQUARES_CORE_HPP_

// Stateless counter-based middle-square kernels.
//
// Every output is a pure function of (counter, key). The Weyl sequence of
// the classic middle-square generator is replaced by counter * key, and
// several square-add-rotate rounds scramble it:
//
//   squares32: 4 rounds, returns the upper half of the last square.
//   squares64: 5 rounds, returns round 4 xor'ed with the upper half of
//              round 5.
//
// All arithmetic is unsigned and therefore wraps modulo 2^64.

#include <cstdint>
#include <stdexcept>

namespace squares {

using Word64 = std::uint64_t;
using Output32 = std::uint32_t;
using Output64 = std::uint64_t;

// Swaps the upper and lower 32-bit halves.
constexpr Word64 rot_half(Word64 x) noexcept { return (x >> 32) | (x << 32); }

// One square-add-rotate step.
constexpr Word64 round(Word64 x, Word64 w) noexcept {
  return rot_half(x * x + w);
}

constexpr Output32 squares32(Word64 ctr, Word64 key) noexcept {
  const Word64 y = ctr * key;
  const Word64 z = y + key;
  Word64 x = y;
  x = round(x, y);
  x = round(x, z);
  x = round(x, y);
  return static_cast<Output32>((x * x + z) >> 32);
}

constexpr Output64 squares64(Word64 ctr, Word64 key) noexcept {
  const Word64 y = ctr * key;
  const Word64 z = y + key;
  Word64 x = y;
  x = round(x, y);
  x = round(x, z);
  x = round(x, y);
  const Word64 t = x * x + z;
  x = rot_half(t);
  return t ^ ((x * x + y) >> 32);
}

// Width parameters for the reduced-width analog of squares32. Arithmetic is
// carried out modulo 2^word_bits and the rotation swaps word_bits/2 halves.
class ScaledParams {
 public:
  // Throws std::invalid_argument unless word_bits is even and in [8, 64].
  constexpr explicit ScaledParams(unsigned word_bits) : word_bits_(word_bits) {
    if (word_bits < 8 || word_bits > 64 || word_bits % 2 != 0) {
      throw std::invalid_argument(
          "scaled word width must be even and in [8, 64]");
    }
  }

  constexpr unsigned word_bits() const noexcept { return word_bits_; }
  constexpr unsigned half_bits() const noexcept { return word_bits_ / 2; }
  constexpr Word64 mask() const noexcept {
    return word_bits_ == 64 ? ~Word64{0} : (Word64{1} << word_bits_) - 1;
  }

 private:
  unsigned word_bits_;
};

namespace detail {

constexpr Word64 scaled_round(Word64 x, Word64 w, const ScaledParams& p) {
  const Word64 m = p.mask();
  const unsigned h = p.half_bits();
  x = (x * x + w) & m;
  return ((x >> h) | (x << h)) & m;
}

}  // namespace detail

// squares32 with 64 -> word_bits and 32 -> word_bits/2 substituted
// throughout. Inputs are reduced modulo 2^word_bits. At word_bits == 64 this
// is bit-identical to squares32.
constexpr Word64 squares32_scaled(Word64 ctr, Word64 key,
                                  const ScaledParams& p) {
  const Word64 m = p.mask();
  ctr &= m;
  key &= m;
  const Word64 y = (ctr * key) & m;
  const Word64 z = (y + key) & m;
  Word64 x = y;
  x = detail::scaled_round(x, y, p);
  x = detail::scaled_round(x, z, p);
  x = detail::scaled_round(x, y, p);
  return ((x * x + z) & m) >> p.half_bits();
}

// Executable witness that the Weyl sequence w += s visits the same values
// as w = i * s (mod 2^64) for i in [0, n).
constexpr bool weyl_equivalence_check(Word64 s, std::uint64_t n) noexcept {
  Word64 w = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    if (w != i * s) return false;
    w += s;
  }
  return true;
}

}  // namespace squares

#endif  // SQUARES_CORE_HPP_
