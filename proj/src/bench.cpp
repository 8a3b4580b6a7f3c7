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

#include "squares/bench.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>
#include <string>
#include <vector>

#include "squares/core.hpp"

namespace squares {
namespace {

using Clock = std::chrono::steady_clock;

// noinline keeps the kernel loop in one place so each variant is timed on
// the same footing.
template <BenchVariant V>
[[gnu::noinline]] std::uint64_t generate(std::uint64_t words, std::uint64_t key) {
  std::uint64_t acc = 0;
  for (std::uint64_t i = 0; i < words; ++i) {
    if constexpr (V == BenchVariant::kSquares32) {
      acc ^= squares32(i, key);
    } else if constexpr (V == BenchVariant::kSquares64) {
      acc ^= squares64(i, key);
    } else {
      acc ^= (std::uint64_t{squares32(2 * i, key)} << 32) |
             squares32(2 * i + 1, key);
    }
  }
  return acc;
}

std::uint64_t dispatch(BenchVariant v, std::uint64_t words, std::uint64_t key) {
  // generate() is const to the optimizer; hide the inputs so repeated calls
  // are not folded into one.
  asm volatile("" : "+r"(words), "+r"(key));
  switch (v) {
    case BenchVariant::kSquares32:
      return generate<BenchVariant::kSquares32>(words, key);
    case BenchVariant::kSquares64:
      return generate<BenchVariant::kSquares64>(words, key);
    case BenchVariant::kTwoSquares32:
      return generate<BenchVariant::kTwoSquares32>(words, key);
  }
  return 0;
}

}  // namespace

std::string_view to_string(BenchVariant v) {
  switch (v) {
    case BenchVariant::kSquares32:
      return "squares32";
    case BenchVariant::kSquares64:
      return "squares64";
    case BenchVariant::kTwoSquares32:
      return "two-calls-32";
  }
  return "?";
}

std::optional<BenchVariant> parse_bench_variant(std::string_view name) {
  if (name == "32" || name == "squares32") return BenchVariant::kSquares32;
  if (name == "64" || name == "squares64") return BenchVariant::kSquares64;
  if (name == "two32" || name == "two-calls-32") return BenchVariant::kTwoSquares32;
  return std::nullopt;
}

double timer_resolution() {
  auto best = Clock::duration::max();
  for (int i = 0; i < 32; ++i) {
    const auto t0 = Clock::now();
    auto t1 = Clock::now();
    while (t1 == t0) t1 = Clock::now();
    best = std::min(best, t1 - t0);
  }
  return std::chrono::duration<double>(best).count();
}

BenchReport run_bench(BenchVariant variant, std::uint64_t bytes,
                      unsigned repeats, std::uint64_t key) {
  if (bytes < kMinBenchBytes) {
    throw std::invalid_argument("bench needs at least 2^24 bytes");
  }
  if (repeats == 0) throw std::invalid_argument("bench needs repeats >= 1");

  const std::uint64_t word = variant == BenchVariant::kSquares32 ? 4 : 8;
  const std::uint64_t words = bytes / word;

  BenchReport report{variant};
  report.bytes_generated = words * word;
  report.checksum = dispatch(variant, words, key);  // warm-up

  std::vector<double> times;
  times.reserve(repeats);
  for (unsigned r = 0; r < repeats; ++r) {
    const auto t0 = Clock::now();
    report.checksum = dispatch(variant, words, key);
    const auto t1 = Clock::now();
    times.push_back(std::chrono::duration<double>(t1 - t0).count());
  }
  std::sort(times.begin(), times.end());
  const std::size_t mid = times.size() / 2;
  report.elapsed = times.size() % 2 ? times[mid] : 0.5 * (times[mid - 1] + times[mid]);

  if (!(report.elapsed > 10.0 * timer_resolution())) {
    throw std::runtime_error("bench elapsed time is within 10x of the timer resolution");
  }
  report.throughput = static_cast<double>(report.bytes_generated) / report.elapsed;
  report.ns_per_call = report.elapsed * 1e9 / static_cast<double>(words);
  return report;
}

}  // namespace squares
