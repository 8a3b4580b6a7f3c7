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

#include "squares/keys.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <numeric>
#include <set>
#include <utility>

namespace squares {
namespace {

constexpr std::uint64_t splitmix64(std::uint64_t i) {
  std::uint64_t z = i + 0x9e3779b97f4a7c15;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9;
  z = (z ^ (z >> 27)) * 0x94d049bb133111eb;
  return z ^ (z >> 31);
}

// Bijection on [0, 2^31): xorshifts and odd multipliers are each invertible
// modulo 2^31.
constexpr std::uint32_t permute31(std::uint32_t x) {
  constexpr std::uint32_t kMask = 0x7fffffff;
  x ^= x >> 16;
  x = (x * 0x045d9f3bu) & kMask;
  x ^= x >> 16;
  x = (x * 0x045d9f3bu) & kMask;
  x ^= x >> 16;
  return x;
}

constexpr std::uint64_t falling(std::uint64_t n, std::uint64_t k) {
  std::uint64_t r = 1;
  for (std::uint64_t j = 0; j < k; ++j) r *= n - j;
  return r;
}

// Number of distinct valid keys: 15P8 upper halves times 8 * 14P7 lower.
constexpr std::uint64_t kKeySpace = falling(15, 8) * 8 * falling(14, 7);
constexpr std::uint64_t kRankBlocks = kKeySpace >> 31;
static_assert(kKeySpace == 35903507447808000ull);
static_assert(kRankBlocks * kKeyIndexCount <= kKeySpace);

constexpr unsigned digit(std::uint64_t v, int pos) {
  return static_cast<unsigned>((v >> (4 * pos)) & 0xf);
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Strict canonical form: 0x followed by exactly 16 hex digits.
std::optional<std::uint64_t> parse_canonical(std::string_view s) {
  if (s.size() != 18 || s[0] != '0' || (s[1] != 'x' && s[1] != 'X')) {
    return std::nullopt;
  }
  std::uint64_t v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data() + 2, end, v, 16);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return v;
}

}  // namespace

std::string_view describe(KeyRule rule) {
  switch (rule) {
    case KeyRule::kUpperDigitZero:
      return "zero digit in upper half";
    case KeyRule::kUpperDigitRepeated:
      return "repeated digit in upper half";
    case KeyRule::kLowerDigitZero:
      return "zero digit in lower half";
    case KeyRule::kLowerDigitRepeated:
      return "repeated digit in lower half";
    case KeyRule::kEven:
      return "even least-significant digit";
  }
  return "unknown rule";
}

std::string KeyVerdict::to_string() const {
  std::string out;
  for (const KeyRule r : violations) {
    if (!out.empty()) out += ", ";
    out += describe(r);
  }
  return out;
}

KeyVerdict validate_key(std::uint64_t value) {
  KeyVerdict verdict;
  const auto check_half = [&](int lo, KeyRule zero, KeyRule repeated) {
    unsigned seen = 0;
    bool has_zero = false;
    bool has_repeat = false;
    for (int pos = lo; pos < lo + 8; ++pos) {
      const unsigned d = digit(value, pos);
      if (d == 0) has_zero = true;
      if (seen & (1u << d)) has_repeat = true;
      seen |= 1u << d;
    }
    if (has_zero) verdict.violations.push_back(zero);
    if (has_repeat) verdict.violations.push_back(repeated);
  };
  check_half(8, KeyRule::kUpperDigitZero, KeyRule::kUpperDigitRepeated);
  check_half(0, KeyRule::kLowerDigitZero, KeyRule::kLowerDigitRepeated);
  if ((value & 1) == 0) verdict.violations.push_back(KeyRule::kEven);
  return verdict;
}

InvalidKeyError::InvalidKeyError(std::uint64_t value, KeyVerdict verdict)
    : std::invalid_argument("invalid key " + format_key(value) + ": " +
                            verdict.to_string()),
      value_(value),
      verdict_(std::move(verdict)) {}

Key::Key(std::uint64_t value) : value_(value) {
  KeyVerdict v = validate_key(value);
  if (!v.ok()) throw InvalidKeyError(value, std::move(v));
}

// The index is mapped to a rank in [0, kKeySpace) whose low 31 bits (in the
// base-2^31 sense) are a permutation of the index, so distinct indices get
// distinct ranks. The rank's mixed-radix digits then drive Fisher-Yates
// selections: 8 of the 15 non-zero digits for d15..d8, one of the 8 odd
// digits for d0, and 7 of the remaining 14 non-zero digits for d7..d1.
Key key_from_index(std::uint64_t index) {
  if (index >= kKeyIndexCount) {
    throw std::out_of_range("key index " + std::to_string(index) +
                            " outside [0, 2^31)");
  }
  std::uint64_t rank = (splitmix64(index) % kRankBlocks) * kKeyIndexCount +
                       permute31(static_cast<std::uint32_t>(index));

  const auto draw = [&rank](std::uint64_t radix) {
    const std::uint64_t pick = rank % radix;
    rank /= radix;
    return static_cast<std::size_t>(pick);
  };

  std::uint64_t value = 0;
  std::array<unsigned, 15> pool{};
  std::iota(pool.begin(), pool.end(), 1u);
  for (std::size_t j = 0; j < 8; ++j) {
    std::swap(pool[j], pool[j + draw(15 - j)]);
    value |= std::uint64_t{pool[j]} << (4 * (15 - j));
  }

  const unsigned low = 2 * static_cast<unsigned>(draw(8)) + 1;
  value |= low;
  std::array<unsigned, 14> rest{};
  std::size_t n = 0;
  for (unsigned d = 1; d < 16; ++d) {
    if (d != low) rest[n++] = d;
  }
  for (std::size_t j = 0; j < 7; ++j) {
    std::swap(rest[j], rest[j + draw(14 - j)]);
    value |= std::uint64_t{rest[j]} << (4 * (7 - j));
  }
  return Key(value);
}

std::uint64_t scaled_key_from_index(std::uint64_t index, unsigned word_bits) {
  if (word_bits < 8 || word_bits > 64 || word_bits % 8 != 0) {
    throw std::invalid_argument("scaled key width must be a multiple of 8");
  }
  const std::uint64_t full = key_from_index(index).value();
  if (word_bits == 64) return full;
  const unsigned half = word_bits / 2;
  const std::uint64_t half_mask = (std::uint64_t{1} << half) - 1;
  const std::uint64_t upper = full >> (64 - half);
  const std::uint64_t lower = full & half_mask;
  return (upper << half) | lower;
}

KeyFile generate_keys(std::uint64_t start, std::uint64_t count) {
  if (start > kKeyIndexCount || count > kKeyIndexCount - start) {
    throw std::out_of_range("key index range overflows 2^31");
  }
  KeyFile file;
  file.entries.reserve(count);
  std::vector<std::uint32_t> indices;
  indices.reserve(count);
  for (std::uint64_t i = start; i < start + count; ++i) {
    file.entries.push_back(key_from_index(i));
    indices.push_back(static_cast<std::uint32_t>(i));
  }
  file.source_indices = std::move(indices);
  return file;
}

std::string format_key(std::uint64_t value) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string s = "0x";
  for (int pos = 15; pos >= 0; --pos) s += kHex[digit(value, pos)];
  return s;
}

std::uint64_t parse_hex_word(std::string_view text) {
  text = trim(text);
  if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
    text.remove_prefix(2);
  }
  if (text.empty() || text.size() > 16) {
    throw std::invalid_argument("expected 1 to 16 hex digits");
  }
  std::uint64_t v = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v, 16);
  if (ec != std::errc() || ptr != end) {
    throw std::invalid_argument("malformed hex value '" + std::string(text) +
                                "'");
  }
  return v;
}

std::string write_key_file(const KeyFile& file, KeyFileFormat format) {
  std::string out;
  if (format == KeyFileFormat::kText) {
    out.reserve(file.entries.size() * 19);
    for (const Key& k : file.entries) {
      out += format_key(k.value());
      out += '\n';
    }
    return out;
  }

  const std::size_t n = file.entries.size();
  out += "#pragma once /* squares keys: count=" + std::to_string(n);
  if (file.source_indices && !file.source_indices->empty()) {
    out += " start=" + std::to_string(file.source_indices->front());
  }
  out += " */\n";
  out += "#include <stdint.h>\n";
  out += "#define SQUARES_KEY_COUNT " + std::to_string(n) + "\n";
  if (n == 0) return out;
  out += "static const uint64_t squares_keys[SQUARES_KEY_COUNT] = {\n";
  for (std::size_t j = 0; j < n; ++j) {
    out += "  " + format_key(file.entries[j].value());
    out += (j + 1 < n) ? ",\n" : "\n";
  }
  out += "};\n";
  return out;
}

KeyFileParseError::KeyFileParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what),
      line_(line) {}

KeyFile parse_key_file(std::string_view bytes) {
  std::vector<std::pair<std::size_t, std::string_view>> lines;
  {
    std::size_t number = 1;
    std::size_t pos = 0;
    while (pos < bytes.size()) {
      auto nl = bytes.find('\n', pos);
      if (nl == std::string_view::npos) nl = bytes.size();
      lines.emplace_back(number++, bytes.substr(pos, nl - pos));
      pos = nl + 1;
    }
  }

  KeyFile file;
  std::set<std::uint64_t> seen;
  const auto accept = [&](std::size_t line, std::uint64_t v) {
    KeyVerdict verdict = validate_key(v);
    if (!verdict.ok()) {
      throw KeyFileParseError(
          line, "invalid key " + format_key(v) + ": " + verdict.to_string());
    }
    if (!seen.insert(v).second) {
      throw KeyFileParseError(line, "duplicate key " + format_key(v));
    }
    file.entries.emplace_back(v);
  };

  const auto first = std::find_if(lines.begin(), lines.end(), [](auto& l) {
    return !trim(l.second).empty();
  });
  if (first == lines.end()) return file;

  if (trim(first->second).front() != '#') {
    for (const auto& [number, raw] : lines) {
      const std::string_view line = trim(raw);
      if (line.empty()) continue;
      const auto v = parse_canonical(line);
      if (!v) throw KeyFileParseError(number, "malformed key line");
      accept(number, *v);
    }
    return file;
  }

  enum class State { kPreamble, kArray, kDone } state = State::kPreamble;
  std::optional<std::uint64_t> declared;
  constexpr std::string_view kDefine = "#define SQUARES_KEY_COUNT";
  for (const auto& [number, raw] : lines) {
    std::string_view line = trim(raw);
    if (line.empty()) continue;
    switch (state) {
      case State::kPreamble:
        if (line.starts_with(kDefine)) {
          const std::string_view rest = trim(line.substr(kDefine.size()));
          std::uint64_t n = 0;
          auto [ptr, ec] =
              std::from_chars(rest.data(), rest.data() + rest.size(), n);
          if (ec != std::errc() || ptr != rest.data() + rest.size()) {
            throw KeyFileParseError(number, "malformed key count");
          }
          declared = n;
        } else if (line.front() == '#') {
          // other directives are ignored
        } else if (line.back() == '{') {
          state = State::kArray;
        } else {
          throw KeyFileParseError(number, "unexpected line before key array");
        }
        break;
      case State::kArray: {
        if (line == "};") {
          state = State::kDone;
          break;
        }
        if (line.back() == ',') line = trim(line.substr(0, line.size() - 1));
        while (!line.empty() && (line.back() == 'u' || line.back() == 'U' ||
                                 line.back() == 'l' || line.back() == 'L')) {
          line.remove_suffix(1);
        }
        const auto v = parse_canonical(line);
        if (!v) throw KeyFileParseError(number, "malformed key array entry");
        accept(number, *v);
        break;
      }
      case State::kDone:
        throw KeyFileParseError(number, "unexpected line after key array");
    }
  }
  const std::size_t last = lines.empty() ? 0 : lines.back().first;
  if (state == State::kArray) {
    throw KeyFileParseError(last, "unterminated key array");
  }
  if (!declared) throw KeyFileParseError(last, "missing SQUARES_KEY_COUNT");
  if (*declared != file.entries.size()) {
    throw KeyFileParseError(last, "SQUARES_KEY_COUNT is " +
                                      std::to_string(*declared) + " but " +
                                      std::to_string(file.entries.size()) +
                                      " keys were listed");
  }
  return file;
}

}  // namespace squares
