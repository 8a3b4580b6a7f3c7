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

#ifndef SQUARES_STATS_HPP_
#define SQUARES_STATS_HPP_

// Desk-scale statistical battery.
//
// Four built-in tests run on a byte buffer: monobit, byte chi-square,
// non-overlapping byte-pair chi-square and runs. Source builders produce
// the buffers for the regimes of interest (plain stream, counter stride,
// key-counter mode, interleaved streams) and an optional bit-reversal
// transform is applied per output word before testing.
//
// Bits are consumed least-significant first within each byte, which matches
// the bit order of the little-endian serialized output words.
//
// Verdicts:
//   chi-square tests     pass iff alpha <= p <= 1 - alpha
//   monobit, runs        pass iff p >= alpha (the p-value is already
//                        two-sided in the normal statistic)

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "squares/core.hpp"
#include "squares/keys.hpp"
#include "squares/stream.hpp"

namespace squares {

inline constexpr double kDefaultAlpha = 1e-6;
inline constexpr double kScaledAlpha = 1e-4;

enum class Verdict { kPass, kFail, kDependentFail };

std::string_view to_string(Verdict v);

struct TestResult {
  std::string test_name;
  double statistic = 0.0;
  double p_value = 0.0;
  std::uint64_t sample_bits = 0;
  Verdict verdict = Verdict::kFail;
  std::string note;

  bool passed() const { return verdict == Verdict::kPass; }
  friend bool operator==(const TestResult&, const TestResult&) = default;
};

class InsufficientDataError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// --- numerics -------------------------------------------------------------

// Regularized upper incomplete gamma Q(a, x). Series for x < a + 1,
// continued fraction otherwise.
double regularized_gamma_q(double a, double x);

// P[X >= statistic] for X ~ chi-square(dof).
double chi_square_sf(double statistic, double dof);

// erfc(|z| / sqrt(2)).
double normal_two_sided_p(double z);

Verdict two_sided_verdict(double p, double alpha);
Verdict lower_tail_verdict(double p, double alpha);

// --- tests ----------------------------------------------------------------

inline constexpr std::size_t kMonobitMinBytes = (std::size_t{1} << 16) / 8;
inline constexpr std::size_t kRunsMinBytes = kMonobitMinBytes;
inline constexpr std::size_t kByteChiSquareMinBytes = 256 * 50;
inline constexpr std::size_t kSerialPairMinBytes = 2 * 65536 * 50;

TestResult monobit_test(std::span<const std::byte> bits,
                        double alpha = kDefaultAlpha);
TestResult byte_chi_square(std::span<const std::byte> bytes,
                           double alpha = kDefaultAlpha);
TestResult serial_pair_test(std::span<const std::byte> bytes,
                            double alpha = kDefaultAlpha);
// Returns Verdict::kDependentFail (p = 0) when the proportion of ones is
// 2/sqrt(n) or more away from one half.
TestResult runs_test(std::span<const std::byte> bits,
                     double alpha = kDefaultAlpha);

// Enumerates all 2^word_bits counters through squares32_scaled and
// chi-square tests the histogram of the 2^(word_bits/2) outputs.
// Throws std::invalid_argument for word_bits > 24.
TestResult scaled_uniformity_test(const ScaledParams& params, Word64 key,
                                  double alpha = kScaledAlpha);

// Raw histogram behind scaled_uniformity_test.
std::vector<std::uint64_t> scaled_histogram(const ScaledParams& params,
                                            Word64 key);

// --- sources and transforms -------------------------------------------------

// Reverses the bit order of every full little-endian word in place; trailing
// bytes that do not fill a word are left alone. An involution.
void reverse_word_bits(std::span<std::byte> bytes, Width width);
std::vector<std::byte> transform_bits_reversed(std::span<const std::byte> bytes,
                                               Width width);

// Little-endian bytes of kernel(start + i * stride, key) for i in [0, n).
std::vector<std::byte> stride_source(std::uint64_t key, Word64 start,
                                     Word64 stride, std::size_t n, Width width);

// Little-endian bytes of kernel(fixed_ctr, keys[j]) in key order. Throws
// std::invalid_argument for fewer than two keys.
std::vector<std::byte> key_counter_source(const KeyFile& keys, Word64 fixed_ctr,
                                          Width width);

// Round-robin interleaving: for each counter c in [start, start + n), the
// outputs kernel(c, keys[0]), kernel(c, keys[1]), ... in order.
std::vector<std::byte> interleaved_source(std::span<const std::uint64_t> keys,
                                          Word64 start, std::size_t n,
                                          Width width);

double pearson_correlation(std::span<const double> a,
                           std::span<const double> b);

// --- battery --------------------------------------------------------------

enum class TestId { kMonobit, kByteChiSquare, kSerialPair, kRuns };
enum class Transform { kIdentity, kBitsReversed, kStride, kKeyCounter };

std::string_view to_string(TestId id);
std::string_view to_string(Transform t);
std::size_t minimum_bytes(TestId id);

inline const std::vector<TestId> kAllTests = {
    TestId::kMonobit, TestId::kByteChiSquare, TestId::kSerialPair,
    TestId::kRuns};

struct BatteryConfig {
  std::size_t sample_bytes = std::size_t{1} << 26;
  double alpha = kDefaultAlpha;
  std::vector<TestId> tests = kAllTests;
  Transform transform = Transform::kIdentity;
  Word64 stride = 1;
  Width width = Width::k32;

  // Throws std::invalid_argument when sample_bytes < 2^16 or alpha is
  // outside (0, 0.5).
  void validate() const;
};

struct BatteryReport {
  std::vector<TestResult> results;  // sorted by test name

  bool passed() const;
};

// Runs the selected tests on the first cfg.sample_bytes bytes of source.
// Only the bit-reversal transform is applied here; stride and key-counter
// transforms describe how the source was built (see make_source). Throws
// InsufficientDataError when source is shorter than cfg.sample_bytes or a
// selected test needs more data than cfg.sample_bytes.
BatteryReport run_battery(std::span<const std::byte> source,
                          const BatteryConfig& cfg);

// Builds cfg.sample_bytes of source for a single key starting at counter
// start: sequential counters for identity/bits-reversed, cfg.stride apart
// for kStride. Throws std::invalid_argument for kKeyCounter (use
// key_counter_source).
std::vector<std::byte> make_source(std::uint64_t key, Word64 start,
                                   const BatteryConfig& cfg);

// --- inter-stream correlation ---------------------------------------------

struct PairCorrelation {
  std::size_t first;
  std::size_t second;
  double r;
};

struct InterstreamReport {
  std::vector<PairCorrelation> pairs;
  double max_abs_r = 0.0;
  double threshold = 0.0;      // 4 / sqrt(n_per_stream)
  TestResult correlation;      // pass iff max_abs_r < threshold
  BatteryReport battery;       // on the interleaved outputs

  bool passed() const { return correlation.passed() && battery.passed(); }
};

// Pearson correlation of the first n_per_stream outputs of every key pair
// (same counters, counter 0 upward), plus the battery on the round-robin
// interleaving of those outputs. cfg.sample_bytes and cfg.transform are
// ignored; the whole interleaved buffer is tested. Throws
// std::invalid_argument for fewer than two keys.
InterstreamReport interstream_test(std::span<const std::uint64_t> keys,
                                   std::size_t n_per_stream,
                                   const BatteryConfig& cfg);

}  // namespace squares

#endif  // SQUARES_STATS_HPP_
