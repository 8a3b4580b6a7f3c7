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

#include "squares/stats.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>

namespace squares {
namespace {

constexpr int kMaxIterations = 1'000'000;
constexpr double kEpsilon = 1e-16;
constexpr double kTiny = 1e-300;

// Log of the common prefactor x^a e^-x / Gamma(a).
double log_gamma_prefactor(double a, double x) {
  return a * std::log(x) - x - std::lgamma(a);
}

double gamma_p_series(double a, double x) {
  double ap = a;
  double term = 1.0 / a;
  double sum = term;
  for (int n = 0; n < kMaxIterations; ++n) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * kEpsilon) break;
  }
  return sum * std::exp(log_gamma_prefactor(a, x));
}

// Modified Lentz evaluation of the continued fraction for Q(a, x).
double gamma_q_continued_fraction(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIterations; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEpsilon) break;
  }
  return std::exp(log_gamma_prefactor(a, x)) * h;
}

std::uint64_t load_le64(const std::byte* p) {
  std::uint64_t w = 0;
  for (int i = 7; i >= 0; --i) w = (w << 8) | std::to_integer<std::uint64_t>(p[i]);
  return w;
}

std::uint64_t count_ones(std::span<const std::byte> bytes) {
  std::uint64_t ones = 0;
  std::size_t i = 0;
  for (; i + 8 <= bytes.size(); i += 8) ones += std::popcount(load_le64(&bytes[i]));
  for (; i < bytes.size(); ++i) {
    ones += std::popcount(std::to_integer<unsigned>(bytes[i]));
  }
  return ones;
}

TestResult chi_square_result(std::string name,
                             std::span<const std::uint64_t> counts,
                             double expected, std::uint64_t sample_bits,
                             double alpha) {
  double stat = 0.0;
  for (const std::uint64_t c : counts) {
    const double d = static_cast<double>(c) - expected;
    stat += d * d;
  }
  stat /= expected;
  const double p = chi_square_sf(stat, static_cast<double>(counts.size() - 1));
  return {std::move(name), stat, p, sample_bits, two_sided_verdict(p, alpha),
          {}};
}

void require_bytes(std::span<const std::byte> data, std::size_t min,
                   std::string_view test) {
  if (data.size() < min) {
    throw InsufficientDataError(std::string(test) + " needs at least " +
                                std::to_string(min) + " bytes, got " +
                                std::to_string(data.size()));
  }
}

constexpr std::array<std::uint8_t, 256> kReversedByte = [] {
  std::array<std::uint8_t, 256> t{};
  for (unsigned b = 0; b < 256; ++b) {
    unsigned r = 0;
    for (unsigned i = 0; i < 8; ++i) r |= ((b >> i) & 1u) << (7 - i);
    t[b] = static_cast<std::uint8_t>(r);
  }
  return t;
}();

std::uint64_t kernel(Width w, Word64 ctr, std::uint64_t key) {
  return w == Width::k32 ? squares32(ctr, key) : squares64(ctr, key);
}

void store_word(std::byte* dst, std::uint64_t v, std::size_t wb) {
  for (std::size_t i = 0; i < wb; ++i) dst[i] = static_cast<std::byte>(v >> (8 * i));
}

}  // namespace

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::kPass:
      return "pass";
    case Verdict::kFail:
      return "fail";
    case Verdict::kDependentFail:
      return "dependent-fail";
  }
  return "?";
}

double regularized_gamma_q(double a, double x) {
  if (!(a > 0.0) || !(x >= 0.0) || std::isinf(a)) {
    throw std::domain_error("regularized_gamma_q needs a > 0 and x >= 0");
  }
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  if (x < a + 1.0) return std::clamp(1.0 - gamma_p_series(a, x), 0.0, 1.0);
  return std::clamp(gamma_q_continued_fraction(a, x), 0.0, 1.0);
}

double chi_square_sf(double statistic, double dof) {
  return regularized_gamma_q(dof / 2.0, std::max(0.0, statistic) / 2.0);
}

double normal_two_sided_p(double z) {
  return std::erfc(std::fabs(z) / std::sqrt(2.0));
}

Verdict two_sided_verdict(double p, double alpha) {
  return (p >= alpha && p <= 1.0 - alpha) ? Verdict::kPass : Verdict::kFail;
}

Verdict lower_tail_verdict(double p, double alpha) {
  return p >= alpha ? Verdict::kPass : Verdict::kFail;
}

TestResult monobit_test(std::span<const std::byte> bits, double alpha) {
  require_bytes(bits, kMonobitMinBytes, "monobit");
  const std::uint64_t n = bits.size() * 8;
  const std::uint64_t ones = count_ones(bits);
  const double s = static_cast<double>(ones) - static_cast<double>(n - ones);
  const double stat = std::fabs(s) / std::sqrt(static_cast<double>(n));
  const double p = normal_two_sided_p(stat);
  return {"monobit", stat, p, n, lower_tail_verdict(p, alpha), {}};
}

TestResult byte_chi_square(std::span<const std::byte> bytes, double alpha) {
  require_bytes(bytes, kByteChiSquareMinBytes, "byte_chi_square");
  std::array<std::uint64_t, 256> counts{};
  for (const std::byte b : bytes) ++counts[std::to_integer<unsigned>(b)];
  return chi_square_result("byte_chi_square", counts,
                           static_cast<double>(bytes.size()) / 256.0,
                           bytes.size() * 8, alpha);
}

TestResult serial_pair_test(std::span<const std::byte> bytes, double alpha) {
  require_bytes(bytes, kSerialPairMinBytes, "serial_pair");
  std::vector<std::uint64_t> counts(65536, 0);
  const std::size_t pairs = bytes.size() / 2;
  for (std::size_t i = 0; i < pairs; ++i) {
    const unsigned a = std::to_integer<unsigned>(bytes[2 * i]);
    const unsigned b = std::to_integer<unsigned>(bytes[2 * i + 1]);
    ++counts[(a << 8) | b];
  }
  return chi_square_result("serial_pair", counts,
                           static_cast<double>(pairs) / 65536.0, pairs * 16,
                           alpha);
}

TestResult runs_test(std::span<const std::byte> bits, double alpha) {
  require_bytes(bits, kRunsMinBytes, "runs");
  const std::uint64_t n = bits.size() * 8;
  const double nd = static_cast<double>(n);
  const double pi = static_cast<double>(count_ones(bits)) / nd;
  if (std::fabs(pi - 0.5) >= 2.0 / std::sqrt(nd)) {
    return {"runs", pi, 0.0, n, Verdict::kDependentFail,
            "proportion of ones fails the monobit precondition"};
  }

  // Runs = 1 + number of adjacent unequal bits, in LSB-first order.
  std::uint64_t transitions = 0;
  int prev = -1;
  std::size_t i = 0;
  for (; i + 8 <= bits.size(); i += 8) {
    const std::uint64_t w = load_le64(&bits[i]);
    transitions += std::popcount((w ^ (w >> 1)) & 0x7fffffffffffffffull);
    if (prev >= 0 && static_cast<int>(w & 1) != prev) ++transitions;
    prev = static_cast<int>(w >> 63);
  }
  for (; i < bits.size(); ++i) {
    const unsigned b = std::to_integer<unsigned>(bits[i]);
    for (unsigned k = 0; k < 8; ++k) {
      const int bit = static_cast<int>((b >> k) & 1u);
      if (prev >= 0 && bit != prev) ++transitions;
      prev = bit;
    }
  }
  const double runs = static_cast<double>(transitions) + 1.0;
  const double q = pi * (1.0 - pi);
  const double expected = 2.0 * nd * q + 1.0;
  const double z = (runs - expected) / (2.0 * std::sqrt(nd) * q);
  const double p = normal_two_sided_p(z);
  return {"runs", z, p, n, lower_tail_verdict(p, alpha), {}};
}

std::vector<std::uint64_t> scaled_histogram(const ScaledParams& params,
                                            Word64 key) {
  if (params.word_bits() > 24) {
    throw std::invalid_argument("exhaustive scaled enumeration needs width <= 24");
  }
  std::vector<std::uint64_t> counts(std::size_t{1} << params.half_bits(), 0);
  const std::uint64_t n = std::uint64_t{1} << params.word_bits();
  for (std::uint64_t c = 0; c < n; ++c) ++counts[squares32_scaled(c, key, params)];
  return counts;
}

TestResult scaled_uniformity_test(const ScaledParams& params, Word64 key,
                                  double alpha) {
  const auto counts = scaled_histogram(params, key);
  const double expected =
      static_cast<double>(std::uint64_t{1} << params.word_bits()) /
      static_cast<double>(counts.size());
  return chi_square_result(
      "scaled_uniformity_w" + std::to_string(params.word_bits()), counts,
      expected, (std::uint64_t{1} << params.word_bits()) * params.half_bits(),
      alpha);
}

void reverse_word_bits(std::span<std::byte> bytes, Width width) {
  const std::size_t wb = word_bytes(width);
  const std::size_t full = bytes.size() / wb * wb;
  // Reversing a little-endian word's bits reverses its byte order and the
  // bits inside each byte.
  for (std::size_t i = 0; i < full; i += wb) {
    std::reverse(bytes.begin() + i, bytes.begin() + i + wb);
    for (std::size_t k = i; k < i + wb; ++k) {
      bytes[k] = static_cast<std::byte>(kReversedByte[std::to_integer<unsigned>(bytes[k])]);
    }
  }
}

std::vector<std::byte> transform_bits_reversed(std::span<const std::byte> bytes,
                                               Width width) {
  std::vector<std::byte> out(bytes.begin(), bytes.end());
  reverse_word_bits(out, width);
  return out;
}

std::vector<std::byte> stride_source(std::uint64_t key, Word64 start,
                                     Word64 stride, std::size_t n,
                                     Width width) {
  if (stride == 0 || n == 0) {
    throw std::invalid_argument("stride_source needs stride >= 1 and n >= 1");
  }
  const std::size_t wb = word_bytes(width);
  std::vector<std::byte> out(n * wb);
  Word64 ctr = start;
  for (std::size_t i = 0; i < n; ++i, ctr += stride) {
    store_word(&out[i * wb], kernel(width, ctr, key), wb);
  }
  return out;
}

std::vector<std::byte> key_counter_source(const KeyFile& keys, Word64 fixed_ctr,
                                          Width width) {
  if (keys.entries.size() < 2) {
    throw std::invalid_argument("key-counter mode needs at least two keys");
  }
  const std::size_t wb = word_bytes(width);
  std::vector<std::byte> out(keys.entries.size() * wb);
  for (std::size_t j = 0; j < keys.entries.size(); ++j) {
    store_word(&out[j * wb], kernel(width, fixed_ctr, keys.entries[j].value()), wb);
  }
  return out;
}

std::vector<std::byte> interleaved_source(std::span<const std::uint64_t> keys,
                                          Word64 start, std::size_t n,
                                          Width width) {
  const std::size_t wb = word_bytes(width);
  std::vector<std::byte> out(n * keys.size() * wb);
  std::byte* p = out.data();
  for (std::size_t i = 0; i < n; ++i) {
    const Word64 ctr = start + i;
    for (const std::uint64_t key : keys) {
      store_word(p, kernel(width, ctr, key), wb);
      p += wb;
    }
  }
  return out;
}

double pearson_correlation(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.size() < 2) {
    throw std::invalid_argument("pearson_correlation needs equal sizes >= 2");
  }
  const double n = static_cast<double>(a.size());
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - ma;
    const double db = b[i] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa == 0.0 || sbb == 0.0) return 0.0;
  return sab / std::sqrt(saa * sbb);
}

std::string_view to_string(TestId id) {
  switch (id) {
    case TestId::kMonobit:
      return "monobit";
    case TestId::kByteChiSquare:
      return "byte_chi_square";
    case TestId::kSerialPair:
      return "serial_pair";
    case TestId::kRuns:
      return "runs";
  }
  return "?";
}

std::string_view to_string(Transform t) {
  switch (t) {
    case Transform::kIdentity:
      return "identity";
    case Transform::kBitsReversed:
      return "reversed";
    case Transform::kStride:
      return "stride";
    case Transform::kKeyCounter:
      return "key-counter";
  }
  return "?";
}

std::size_t minimum_bytes(TestId id) {
  switch (id) {
    case TestId::kMonobit:
      return kMonobitMinBytes;
    case TestId::kByteChiSquare:
      return kByteChiSquareMinBytes;
    case TestId::kSerialPair:
      return kSerialPairMinBytes;
    case TestId::kRuns:
      return kRunsMinBytes;
  }
  return 0;
}

void BatteryConfig::validate() const {
  if (sample_bytes < (std::size_t{1} << 16)) {
    throw std::invalid_argument("sample_bytes must be at least 65536");
  }
  if (!(alpha > 0.0 && alpha < 0.5)) {
    throw std::invalid_argument("alpha must lie in (0, 0.5)");
  }
  if (transform == Transform::kStride && stride == 0) {
    throw std::invalid_argument("stride must be >= 1");
  }
}

bool BatteryReport::passed() const {
  return !results.empty() &&
         std::all_of(results.begin(), results.end(),
                     [](const TestResult& r) { return r.passed(); });
}

BatteryReport run_battery(std::span<const std::byte> source,
                          const BatteryConfig& cfg) {
  cfg.validate();
  if (source.size() < cfg.sample_bytes) {
    throw InsufficientDataError("source has " + std::to_string(source.size()) +
                                " bytes, configuration needs " +
                                std::to_string(cfg.sample_bytes));
  }
  for (const TestId id : cfg.tests) {
    if (cfg.sample_bytes < minimum_bytes(id)) {
      throw InsufficientDataError(std::string(to_string(id)) + " needs " +
                                  std::to_string(minimum_bytes(id)) +
                                  " bytes, sample_bytes is " +
                                  std::to_string(cfg.sample_bytes));
    }
  }

  std::span<const std::byte> sample = source.first(cfg.sample_bytes);
  std::vector<std::byte> reversed;
  if (cfg.transform == Transform::kBitsReversed) {
    reversed = transform_bits_reversed(sample, cfg.width);
    sample = reversed;
  }

  BatteryReport report;
  for (const TestId id : cfg.tests) {
    switch (id) {
      case TestId::kMonobit:
        report.results.push_back(monobit_test(sample, cfg.alpha));
        break;
      case TestId::kByteChiSquare:
        report.results.push_back(byte_chi_square(sample, cfg.alpha));
        break;
      case TestId::kSerialPair:
        report.results.push_back(serial_pair_test(sample, cfg.alpha));
        break;
      case TestId::kRuns:
        report.results.push_back(runs_test(sample, cfg.alpha));
        break;
    }
  }
  std::sort(report.results.begin(), report.results.end(),
            [](const TestResult& a, const TestResult& b) {
              return a.test_name < b.test_name;
            });
  return report;
}

std::vector<std::byte> make_source(std::uint64_t key, Word64 start,
                                   const BatteryConfig& cfg) {
  cfg.validate();
  switch (cfg.transform) {
    case Transform::kIdentity:
    case Transform::kBitsReversed:
      return SquaresStream(key, start, cfg.width).fill_bytes(cfg.sample_bytes);
    case Transform::kStride: {
      const std::size_t wb = word_bytes(cfg.width);
      auto out = stride_source(key, start, cfg.stride,
                               (cfg.sample_bytes + wb - 1) / wb, cfg.width);
      out.resize(cfg.sample_bytes);
      return out;
    }
    case Transform::kKeyCounter:
      break;
  }
  throw std::invalid_argument("key-counter sources are built from a key file");
}

InterstreamReport interstream_test(std::span<const std::uint64_t> keys,
                                   std::size_t n_per_stream,
                                   const BatteryConfig& cfg) {
  if (keys.size() < 2) {
    throw std::invalid_argument("interstream test needs at least two keys");
  }
  if (n_per_stream < 2) {
    throw std::invalid_argument("interstream test needs n_per_stream >= 2");
  }
  std::vector<std::vector<double>> outputs(keys.size());
  for (std::size_t k = 0; k < keys.size(); ++k) {
    outputs[k].resize(n_per_stream);
    for (std::size_t i = 0; i < n_per_stream; ++i) {
      outputs[k][i] = static_cast<double>(kernel(cfg.width, i, keys[k]));
    }
  }

  InterstreamReport report;
  report.threshold = 4.0 / std::sqrt(static_cast<double>(n_per_stream));
  for (std::size_t a = 0; a < keys.size(); ++a) {
    for (std::size_t b = a + 1; b < keys.size(); ++b) {
      const double r = pearson_correlation(outputs[a], outputs[b]);
      report.pairs.push_back({a, b, r});
      report.max_abs_r = std::max(report.max_abs_r, std::fabs(r));
    }
  }
  const double z =
      report.max_abs_r * std::sqrt(static_cast<double>(n_per_stream));
  report.correlation = {
      "interstream_correlation",
      report.max_abs_r,
      normal_two_sided_p(z),
      static_cast<std::uint64_t>(n_per_stream) * keys.size() *
          word_bytes(cfg.width) * 8,
      report.max_abs_r < report.threshold ? Verdict::kPass : Verdict::kFail,
      "max |r| over " + std::to_string(report.pairs.size()) + " pairs"};

  const auto interleaved = interleaved_source(keys, 0, n_per_stream, cfg.width);
  BatteryConfig battery_cfg = cfg;
  battery_cfg.sample_bytes = interleaved.size();
  battery_cfg.transform = Transform::kIdentity;
  report.battery = run_battery(interleaved, battery_cfg);
  return report;
}

}  // namespace squares
