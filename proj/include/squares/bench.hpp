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

#ifndef SQUARES_BENCH_HPP_
#define SQUARES_BENCH_HPP_

#include <cstdint>
#include <optional>
#include <string_view>

namespace squares {

enum class BenchVariant { kSquares32, kSquares64, kTwoSquares32 };

std::string_view to_string(BenchVariant v);
std::optional<BenchVariant> parse_bench_variant(std::string_view name);

inline constexpr std::uint64_t kMinBenchBytes = std::uint64_t{1} << 24;

struct BenchReport {
  BenchVariant variant;
  std::uint64_t bytes_generated = 0;
  double elapsed = 0.0;        // seconds, median of the timed repeats
  double throughput = 0.0;     // bytes / second
  double ns_per_call = 0.0;    // per output word of the variant
  std::uint64_t checksum = 0;  // xor of all outputs of the last repeat
};

// Smallest observable steady_clock step, in seconds.
double timer_resolution();

// Times `repeats` runs after one discarded warm-up run and reports the
// median. Outputs are folded into the checksum so the work cannot be
// elided. Throws std::invalid_argument for bytes < kMinBenchBytes or
// repeats == 0, and std::runtime_error if the median elapsed time is not
// above 10x the timer resolution.
BenchReport run_bench(BenchVariant variant, std::uint64_t bytes,
                      unsigned repeats, std::uint64_t key);

}  // namespace squares

#endif  // SQUARES_BENCH_HPP_
