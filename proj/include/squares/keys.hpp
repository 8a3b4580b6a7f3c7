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

#ifndef SQUARES_KEYS_HPP_
#define SQUARES_KEYS_HPP_

// "Different digits" keys.
//
// A key is a 64-bit multiplier viewed as 16 hex digits d15..d0. It is valid
// when the upper eight digits are pairwise distinct and non-zero, the lower
// eight digits are pairwise distinct and non-zero, and d0 is odd.
//
// key_from_index maps each index in [0, 2^31) to a distinct valid key. The
// exact procedure, with test vectors, is documented in README.md.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace squares {

enum class KeyRule {
  kUpperDigitZero,
  kUpperDigitRepeated,
  kLowerDigitZero,
  kLowerDigitRepeated,
  kEven,
};

std::string_view describe(KeyRule rule);

struct KeyVerdict {
  std::vector<KeyRule> violations;

  bool ok() const { return violations.empty(); }
  explicit operator bool() const { return ok(); }
  // Comma-separated rule descriptions; empty when ok.
  std::string to_string() const;
};

KeyVerdict validate_key(std::uint64_t value);

class InvalidKeyError : public std::invalid_argument {
 public:
  InvalidKeyError(std::uint64_t value, KeyVerdict verdict);

  std::uint64_t value() const { return value_; }
  const KeyVerdict& verdict() const { return verdict_; }

 private:
  std::uint64_t value_;
  KeyVerdict verdict_;
};

// A validated key. Construction throws InvalidKeyError for values that break
// any digit rule.
class Key {
 public:
  explicit Key(std::uint64_t value);

  std::uint64_t value() const { return value_; }

  friend bool operator==(const Key&, const Key&) = default;
  friend auto operator<=>(const Key&, const Key&) = default;

 private:
  std::uint64_t value_;
};

// Number of indices served by key_from_index.
inline constexpr std::uint64_t kKeyIndexCount = std::uint64_t{1} << 31;

// Throws std::out_of_range for index >= kKeyIndexCount.
Key key_from_index(std::uint64_t index);

// Reduced-width key for the scaled kernel analog: the top word_bits/8 digits
// of key_from_index(index)'s upper half over the bottom word_bits/8 digits of
// its lower half. Digit rules carry over to the narrower word. word_bits must
// be a multiple of 8 in [8, 64].
std::uint64_t scaled_key_from_index(std::uint64_t index, unsigned word_bits);

struct KeyFile {
  std::vector<Key> entries;
  std::optional<std::vector<std::uint32_t>> source_indices;
};

// entries[j] == key_from_index(start + j). Throws std::out_of_range when the
// range runs past kKeyIndexCount.
KeyFile generate_keys(std::uint64_t start, std::uint64_t count);

enum class KeyFileFormat { kText, kCHeader };

// Text: one "0x" + 16 lowercase hex digits per line, LF-terminated.
// C header: see README.md for the grammar.
std::string write_key_file(const KeyFile& file, KeyFileFormat format);

class KeyFileParseError : public std::runtime_error {
 public:
  KeyFileParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Accepts either format produced by write_key_file (detected from the first
// non-blank line). Throws KeyFileParseError for malformed syntax, invalid
// keys or duplicates.
KeyFile parse_key_file(std::string_view bytes);

std::string format_key(std::uint64_t value);

// Parses "0x" followed by 1..16 hex digits (or bare hex). Throws
// std::invalid_argument on malformed input.
std::uint64_t parse_hex_word(std::string_view text);

}  // namespace squares

#endif  // SQUARES_KEYS_HPP_
