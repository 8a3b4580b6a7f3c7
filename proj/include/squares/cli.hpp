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

#ifndef SQUARES_CLI_HPP_
#define SQUARES_CLI_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace squares::cli {

enum ExitStatus : int {
  kOk = 0,
  kFailed = 1,      // statistical or selftest failure
  kUsage = 2,       // bad arguments or invalid key
  kIoError = 3,
};

// Parses "123", "0x7b", "16M", "2G", "2^30". K/M/G are powers of 1024.
// Throws std::invalid_argument on malformed input or overflow.
std::uint64_t parse_size(std::string_view text);

// Entry point shared by the executable and the tests. args excludes the
// program name. Raw generator output goes to `out` only; diagnostics go to
// `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace squares::cli

#endif  // SQUARES_CLI_HPP_
