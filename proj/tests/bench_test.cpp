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

#include <gtest/gtest.h>

#include <algorithm>
#include <vector>

#include "squares/core.hpp"

namespace squares {
namespace {

constexpr std::uint64_t kKey = 0x3cb89ef5b82a4d5f;

TEST(Bench, ReportFieldsAreConsistent) {
  for (const auto v : {BenchVariant::kSquares32, BenchVariant::kSquares64,
                       BenchVariant::kTwoSquares32}) {
    const BenchReport r = run_bench(v, kMinBenchBytes, 3, kKey);
    EXPECT_EQ(r.variant, v);
    EXPECT_EQ(r.bytes_generated, kMinBenchBytes);
    EXPECT_GT(r.elapsed, 0.0);
    EXPECT_DOUBLE_EQ(r.throughput, r.bytes_generated / r.elapsed);
    EXPECT_GT(r.ns_per_call, 0.0);
  }
}

TEST(Bench, ChecksumCoversEveryOutput) {
  const std::uint64_t words = kMinBenchBytes / 8;
  std::uint64_t want64 = 0, want2x32 = 0;
  for (std::uint64_t i = 0; i < words; ++i) {
    want64 ^= squares64(i, kKey);
    want2x32 ^= (std::uint64_t{squares32(2 * i, kKey)} << 32) | squares32(2 * i + 1, kKey);
  }
  EXPECT_EQ(run_bench(BenchVariant::kSquares64, kMinBenchBytes, 1, kKey).checksum, want64);
  EXPECT_EQ(run_bench(BenchVariant::kTwoSquares32, kMinBenchBytes, 1, kKey).checksum, want2x32);
}

TEST(Bench, RejectsBadArguments) {
  EXPECT_THROW(run_bench(BenchVariant::kSquares32, kMinBenchBytes - 1, 1, kKey),
               std::invalid_argument);
  EXPECT_THROW(run_bench(BenchVariant::kSquares32, kMinBenchBytes, 0, kKey),
               std::invalid_argument);
}

TEST(Bench, VariantNames) {
  EXPECT_EQ(parse_bench_variant("32"), BenchVariant::kSquares32);
  EXPECT_EQ(parse_bench_variant("64"), BenchVariant::kSquares64);
  EXPECT_EQ(parse_bench_variant("two32"), BenchVariant::kTwoSquares32);
  EXPECT_FALSE(parse_bench_variant("philox").has_value());
  EXPECT_EQ(to_string(BenchVariant::kTwoSquares32), "two-calls-32");
}

TEST(Bench, ElapsedScalesLinearlyWithBytes) {
  // Host speed drifts on shared machines; adjacent pairs see the same phase.
  std::vector<double> factors;
  for (int i = 0; i < 7; ++i) {
    const double small =
        run_bench(BenchVariant::kSquares64, std::uint64_t{1} << 25, 1, kKey).elapsed;
    const double large =
        run_bench(BenchVariant::kSquares64, std::uint64_t{1} << 27, 1, kKey).elapsed;
    factors.push_back(large / small);
  }
  std::sort(factors.begin(), factors.end());
  const double factor = factors[factors.size() / 2];
  EXPECT_GE(factor, 3.2);
  EXPECT_LE(factor, 4.8);
}

TEST(Bench, TimerResolutionIsPositive) { EXPECT_GT(timer_resolution(), 0.0); }

}  // namespace
}  // namespace squares
