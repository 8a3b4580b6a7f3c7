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

#include "squares/fixtures.hpp"

#include <array>
#include <cstdio>
#include <vector>

#include "squares/core.hpp"
#include "squares/keys.hpp"
#include "squares/stream.hpp"

namespace squares {
namespace {

constexpr std::array<KernelFixture, 13> kKernel = {{
    {0x0000000000000000, 0x0000000000000000, 0x00000000, 0x0000000000000000},
    {0x0000000000000001, 0x0000000000000001, 0x00000000, 0x0000000000000002},
    {0x000000000000002a, 0x3cb89ef5b82a4d5f, 0x688310f2, 0x688310f2eb5a368a},
    {0x00000000000f4240, 0x8e4ba35fa15c293f, 0x56fcede2, 0x56fcede298103f99},
    {0x0000000000000000, 0x3cb89ef5b82a4d5f, 0x588bf9db, 0x588bf9db76ed3257},
    {0x0000000000000001, 0x3cb89ef5b82a4d5f, 0xc5d21028, 0xc5d21028c5c8f093},
    {0xffffffffffffffff, 0x123456789abcdef3, 0x1058b2bc, 0x1058b2bc4f891ede},
    {0x123456789abcdef0, 0x123456789abcdef3, 0xb75a85bd, 0xb75a85bd9f255c2d},
    {0x0000000000003039, 0x847dbcf16fc2e5a9, 0x27fe1882, 0x27fe188201a88b34},
    {0xfffffffffffffffe, 0xd29c4b5ff3a485c1, 0xf0a3689d, 0xf0a3689dd4f6e755},
    {0x0000000000000000, 0x123456789abcdef3, 0x6b50bc46, 0x6b50bc468990fcff},
    {0x0000000000000001, 0x123456789abcdef3, 0xd0721d42, 0xd0721d420e557acf},
    {0x0000000000000002, 0x123456789abcdef3, 0x685a79b5, 0x685a79b554a8a150},
}};

constexpr std::array<KeyIndexFixture, 6> kKeyIndex = {{
    {0, 0x3cb89ef5b82a4d5f},
    {1, 0x847dbcf16fc2e5a9},
    {2, 0xd29c4b5ff3a485c1},
    {7, 0x8e4ba35fa15c293f},
    {1000, 0xcebad17f485ad6cf},
    {2147483647, 0xae738912e34fc97b},
}};

std::string hex(std::uint64_t v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(v));
  return buf;
}

class Checker {
 public:
  bool check(bool ok, const std::string& what) {
    ++outcome_.checks;
    if (!ok && outcome_.ok) {
      outcome_.ok = false;
      outcome_.first_failure = what;
    }
    return ok;
  }
  SelftestOutcome outcome() const { return outcome_; }

 private:
  SelftestOutcome outcome_;
};

}  // namespace

std::span<const KernelFixture> kernel_fixtures() { return kKernel; }
std::span<const KeyIndexFixture> key_index_fixtures() { return kKeyIndex; }

SelftestOutcome run_selftest(bool corrupt_fixture) {
  Checker c;
  std::vector<KernelFixture> kernel(kKernel.begin(), kKernel.end());
  if (corrupt_fixture) kernel.front().squares64 ^= 1;

  for (const auto& f : kernel) {
    const std::string where = "ctr=" + hex(f.ctr) + " key=" + hex(f.key);
    const Output32 got32 = squares32(f.ctr, f.key);
    c.check(got32 == f.squares32, "squares32 " + where + ": got " +
                                      hex(got32) + ", expected " +
                                      hex(f.squares32));
    const Output64 got64 = squares64(f.ctr, f.key);
    c.check(got64 == f.squares64, "squares64 " + where + ": got " +
                                      hex(got64) + ", expected " +
                                      hex(f.squares64));
  }

  for (const auto& f : kKeyIndex) {
    const std::uint64_t got = key_from_index(f.index).value();
    c.check(got == f.key, "key_from_index(" + std::to_string(f.index) +
                              "): got " + hex(got) + ", expected " + hex(f.key));
  }

  c.check(to_unit_f64(0) == 0.0, "f64 conversion of 0");
  c.check(to_unit_f64(std::uint64_t{1} << 63) == 0.5, "f64 conversion of 2^63");
  c.check(to_unit_f64(~std::uint64_t{0}) == 1.0 - 0x1.0p-53,
          "f64 conversion of 2^64-1");
  c.check(to_unit_f32_pair(0x8000000000000000) == std::pair{0.0f, 0.5f},
          "f32 pair conversion of 2^63");
  c.check(to_unit_f32_pair(0x00000000ffffffff) ==
              std::pair{1.0f - 0x1.0p-24f, 0.0f},
          "f32 pair conversion of 2^32-1");

  // Little-endian serialization of the first two squares32 draws for
  // key 0x123456789abcdef3, plus a truncated squares64 tail.
  const std::array<std::uint8_t, 8> want32 = {0x46, 0xbc, 0x50, 0x6b,
                                              0x42, 0x1d, 0x72, 0xd0};
  const auto got32 = SquaresStream(0x123456789abcdef3, 0, Width::k32).fill_bytes(8);
  bool same = true;
  for (std::size_t i = 0; i < 8; ++i) {
    same = same && std::to_integer<std::uint8_t>(got32[i]) == want32[i];
  }
  c.check(same, "squares32 byte serialization");

  const std::array<std::uint8_t, 12> want64 = {0xff, 0xfc, 0x90, 0x89, 0x46, 0xbc,
                                               0x50, 0x6b, 0xcf, 0x7a, 0x55, 0x0e};
  SquaresStream s64(0x123456789abcdef3, 0, Width::k64);
  const auto got64 = s64.fill_bytes(12);
  same = s64.counter() == 2;
  for (std::size_t i = 0; i < 12; ++i) {
    same = same && std::to_integer<std::uint8_t>(got64[i]) == want64[i];
  }
  c.check(same, "squares64 byte serialization with partial tail");

  return c.outcome();
}

}  // namespace squares
