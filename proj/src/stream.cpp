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

#include "squares/stream.hpp"

#include <algorithm>
#include <string>
#include <thread>

namespace squares {
namespace {

template <typename Word>
void store_le(std::byte* dst, Word w, std::size_t n = sizeof(Word)) {
  for (std::size_t i = 0; i < n; ++i) {
    dst[i] = static_cast<std::byte>(w >> (8 * i));
  }
}

template <typename Kernel>
Word64 fill_words(std::span<std::byte> out, std::uint64_t key, Word64 ctr,
                  std::size_t wb, Kernel kernel) {
  const std::size_t full = out.size() / wb;
  std::byte* p = out.data();
  for (std::size_t i = 0; i < full; ++i, p += wb) store_le(p, kernel(ctr++, key));
  if (const std::size_t tail = out.size() % wb; tail != 0) {
    store_le(p, kernel(ctr++, key), tail);
  }
  return ctr;
}

}  // namespace

void SquaresStream::require(Width w, const char* op) const {
  if (width_ != w) {
    throw WrongWidthError(std::string(op) + " requires a " +
                          std::to_string(static_cast<int>(w)) +
                          "-bit stream");
  }
}

Output32 SquaresStream::next_u32() {
  require(Width::k32, "next_u32");
  return squares32(counter_++, key_);
}

Output64 SquaresStream::next_u64() {
  require(Width::k64, "next_u64");
  return squares64(counter_++, key_);
}

double SquaresStream::next_f64() {
  require(Width::k64, "next_f64");
  return to_unit_f64(squares64(counter_++, key_));
}

std::pair<float, float> SquaresStream::next_f32_pair() {
  require(Width::k64, "next_f32_pair");
  return to_unit_f32_pair(squares64(counter_++, key_));
}

void SquaresStream::fill_bytes(std::span<std::byte> out) {
  if (width_ == Width::k32) {
    counter_ = fill_words(out, key_, counter_, 4, squares32);
  } else {
    counter_ = fill_words(out, key_, counter_, 8, squares64);
  }
}

std::vector<std::byte> SquaresStream::fill_bytes(std::size_t len) {
  std::vector<std::byte> out(len);
  fill_bytes(out);
  return out;
}

Partition partition(std::uint64_t key, std::uint64_t num_parts,
                    std::uint64_t idx) {
  if (num_parts == 0) throw std::invalid_argument("num_parts must be >= 1");
  if (idx >= num_parts) {
    throw std::out_of_range("partition index " + std::to_string(idx) +
                            " >= num_parts " + std::to_string(num_parts));
  }
  const WideCount size = kCounterSpace / num_parts;
  const WideCount start = size * idx;
  const WideCount length =
      idx + 1 == num_parts ? kCounterSpace - start : size;
  return {key, static_cast<Word64>(start), length};
}

void fill_bytes_parallel(std::uint64_t key, Word64 counter, Width width,
                         std::span<std::byte> out, unsigned threads) {
  const std::size_t wb = word_bytes(width);
  const std::size_t words = out.size() / wb;
  threads = std::max(1u, threads);
  if (threads == 1 || words < 2 * threads) {
    SquaresStream(key, counter, width).fill_bytes(out);
    return;
  }
  // Chunks are whole words; the last chunk also takes any partial tail.
  const std::size_t per = words / threads;
  std::vector<std::jthread> workers;
  workers.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t begin = t * per * wb;
    const std::size_t end = t + 1 == threads ? out.size() : begin + per * wb;
    const Word64 start = counter + static_cast<Word64>(t) * per;
    workers.emplace_back([=] {
      SquaresStream(key, start, width).fill_bytes(out.subspan(begin, end - begin));
    });
  }
}

}  // namespace squares
