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

#ifndef SQUARES_FIXTURES_HPP_
#define SQUARES_FIXTURES_HPP_

// Known-answer values. Kernel values come from the standalone C reference
// in tests/reference; key_from_index values from
// tests/oracles/key_index_oracle.py.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>

namespace squares {

struct KernelFixture {
  std::uint64_t ctr;
  std::uint64_t key;
  std::uint32_t squares32;
  std::uint64_t squares64;
};

struct KeyIndexFixture {
  std::uint64_t index;
  std::uint64_t key;
};

std::span<const KernelFixture> kernel_fixtures();
std::span<const KeyIndexFixture> key_index_fixtures();

struct SelftestOutcome {
  bool ok = true;
  std::size_t checks = 0;
  std::string first_failure;  // empty when ok
};

// Checks kernels, key_from_index, float conversion and serialization against
// the fixtures. corrupt_fixture flips one expected bit so the failure path
// can be exercised.
SelftestOutcome run_selftest(bool corrupt_fixture = false);

}  // namespace squares

#endif  // SQUARES_FIXTURES_HPP_
