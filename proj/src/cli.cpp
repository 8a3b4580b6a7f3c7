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

#include "squares/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <sstream>

#include "squares/bench.hpp"
#include "squares/fixtures.hpp"
#include "squares/keys.hpp"
#include "squares/stats.hpp"
#include "squares/stream.hpp"

namespace squares::cli {
namespace {

constexpr std::size_t kChunkBytes = std::size_t{1} << 20;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

Width parse_width(int bits) {
  if (bits == 32) return Width::k32;
  if (bits == 64) return Width::k64;
  throw UsageError("--width must be 32 or 64");
}

std::uint64_t parse_key_arg(const std::string& text, bool validate) {
  std::uint64_t key = 0;
  try {
    key = parse_hex_word(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--key: ") + e.what());
  }
  if (validate) {
    const KeyVerdict v = validate_key(key);
    if (!v.ok()) {
      throw UsageError("invalid key " + format_key(key) + ": " + v.to_string() +
                       " (pass --no-validate-key to override)");
    }
  }
  return key;
}

// Writes to `out` when path is "-", otherwise to a file.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& out, bool binary) {
    if (path == "-") {
      stream_ = &out;
    } else {
      file_ = std::make_unique<std::ofstream>(
          path, binary ? std::ios::binary | std::ios::out : std::ios::out);
      if (!*file_) throw IoError("cannot open '" + path + "' for writing");
      stream_ = file_.get();
    }
    path_ = path;
  }

  void write(const void* data, std::size_t n) {
    stream_->write(static_cast<const char*>(data), static_cast<std::streamsize>(n));
    check();
  }
  std::ostream& stream() { return *stream_; }
  void finish() {
    stream_->flush();
    check();
  }

 private:
  void check() {
    if (!*stream_) throw IoError("write to '" + path_ + "' failed");
  }

  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_ = nullptr;
  std::string path_;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read of '" + path + "' failed");
  return ss.str();
}

// --- genkeys --------------------------------------------------------------

struct GenkeysOptions {
  std::string start = "0";
  std::string count;
  std::string format = "text";
  std::string out = "-";
};

int cmd_genkeys(const GenkeysOptions& o, std::ostream& out, std::ostream& err) {
  const std::uint64_t start = parse_size(o.start);
  const std::uint64_t count = parse_size(o.count);
  KeyFileFormat format;
  if (o.format == "text") {
    format = KeyFileFormat::kText;
  } else if (o.format == "c-header") {
    format = KeyFileFormat::kCHeader;
  } else {
    throw UsageError("--format must be text or c-header");
  }
  KeyFile file;
  try {
    file = generate_keys(start, count);
  } catch (const std::out_of_range& e) {
    throw UsageError(e.what());
  }
  const std::string text = write_key_file(file, format);
  Sink sink(o.out, out, false);
  sink.write(text.data(), text.size());
  sink.finish();
  if (o.out != "-") err << "wrote " << count << " keys to " << o.out << "\n";
  return kOk;
}

// --- gen ------------------------------------------------------------------

struct GenOptions {
  std::string key;
  std::string ctr = "0";
  int width = 32;
  std::string bytes;
  std::string floats;
  std::string out = "-";
  bool no_validate = false;
  unsigned threads = 1;
};

int cmd_gen(const GenOptions& o, std::ostream& out, std::ostream& /*err*/) {
  const std::uint64_t key = parse_key_arg(o.key, !o.no_validate);
  const std::uint64_t ctr = parse_size(o.ctr);
  const Width width = parse_width(o.width);
  if (o.bytes.empty() == o.floats.empty()) {
    throw UsageError("exactly one of --bytes or --floats is required");
  }

  if (!o.floats.empty()) {
    const std::uint64_t n = parse_size(o.floats);
    Sink sink(o.out, out, false);
    SquaresStream s(key, ctr, width);
    char line[40];
    for (std::uint64_t i = 0; i < n; ++i) {
      int len;
      if (width == Width::k64) {
        len = std::snprintf(line, sizeof line, "%.17g\n", s.next_f64());
      } else {
        len = std::snprintf(line, sizeof line, "%.9g\n",
                            static_cast<double>(to_unit_f32(s.next_u32())));
      }
      sink.write(line, static_cast<std::size_t>(len));
    }
    sink.finish();
    return kOk;
  }

  const bool unbounded = o.bytes == "inf";
  std::uint64_t remaining = unbounded ? 0 : parse_size(o.bytes);
  Sink sink(o.out, out, true);
  std::vector<std::byte> buf(kChunkBytes);
  const std::size_t wb = word_bytes(width);
  Word64 cursor = ctr;
  while (unbounded || remaining > 0) {
    const std::size_t n =
        unbounded ? buf.size() : static_cast<std::size_t>(std::min<std::uint64_t>(remaining, buf.size()));
    std::span<std::byte> chunk(buf.data(), n);
    fill_bytes_parallel(key, cursor, width, chunk, o.threads);
    cursor += (n + wb - 1) / wb;  // chunk size is a multiple of wb except at the end
    sink.write(chunk.data(), chunk.size());
    if (!unbounded) remaining -= n;
  }
  sink.finish();
  return kOk;
}

// --- test -----------------------------------------------------------------

struct TestOptions {
  std::string key;
  std::string keys_path;
  std::string bytes = "64M";
  int width = 32;
  std::string transform = "identity";
  double alpha = kDefaultAlpha;
  std::string ctr = "0";
  std::string report_path;
  std::string source = "generator";
  bool no_validate = false;
};

nlohmann::json to_json(const TestResult& r) {
  return {{"test", r.test_name},       {"statistic", r.statistic},
          {"p_value", r.p_value},      {"sample_bits", r.sample_bits},
          {"verdict", to_string(r.verdict)}, {"note", r.note}};
}

void print_result(std::ostream& os, const TestResult& r) {
  os << r.test_name << std::string(24 - std::min<std::size_t>(23, r.test_name.size()), ' ')
     << "statistic=" << fmt("%-14.8g", r.statistic)
     << " p=" << fmt("%-12.6g", r.p_value) << " " << to_string(r.verdict);
  if (!r.note.empty()) os << " (" << r.note << ")";
  os << "\n";
}

std::vector<TestId> applicable_tests(std::size_t bytes, std::ostream& err) {
  std::vector<TestId> tests;
  for (const TestId id : kAllTests) {
    if (bytes >= minimum_bytes(id)) {
      tests.push_back(id);
    } else {
      err << "skipping " << to_string(id) << ": needs " << minimum_bytes(id)
          << " bytes, sample has " << bytes << "\n";
    }
  }
  return tests;
}

int cmd_test(const TestOptions& o, std::ostream& out, std::ostream& err) {
  BatteryConfig cfg;
  cfg.width = parse_width(o.width);
  cfg.alpha = o.alpha;
  if (!(cfg.alpha > 0.0 && cfg.alpha < 0.5)) throw UsageError("--alpha must lie in (0, 0.5)");
  const std::uint64_t start = parse_size(o.ctr);

  bool interleaved = false;
  if (o.transform == "identity") {
    cfg.transform = Transform::kIdentity;
  } else if (o.transform == "reversed") {
    cfg.transform = Transform::kBitsReversed;
  } else if (o.transform.starts_with("stride:")) {
    cfg.transform = Transform::kStride;
    cfg.stride = parse_size(o.transform.substr(7));
    if (cfg.stride == 0) throw UsageError("stride must be >= 1");
  } else if (o.transform == "key-counter") {
    cfg.transform = Transform::kKeyCounter;
  } else if (o.transform == "interleaved") {
    interleaved = true;
  } else {
    throw UsageError("unknown --transform '" + o.transform + "'");
  }

  const bool needs_file = interleaved || cfg.transform == Transform::kKeyCounter;
  const bool zero = o.source == "zero";
  if (o.source != "generator" && !zero) throw UsageError("--source must be generator or zero");

  KeyFile keys;
  std::uint64_t key = 0;
  if (!zero) {
    if (needs_file) {
      if (o.keys_path.empty()) throw UsageError("--transform " + o.transform + " needs --keys");
      try {
        keys = parse_key_file(read_file(o.keys_path));
      } catch (const KeyFileParseError& e) {
        throw UsageError(o.keys_path + ": " + e.what());
      }
      if (keys.entries.size() < 2) throw UsageError("--keys file needs at least two keys");
    } else {
      if (o.key.empty()) throw UsageError("--key is required for this transform");
      key = parse_key_arg(o.key, !o.no_validate);
    }
  }

  nlohmann::json report = {{"schema", "squares-battery-report/1"},
                           {"alpha", cfg.alpha}};
  nlohmann::json source = {{"kind", o.source},
                           {"width", o.width},
                           {"transform", o.transform.substr(0, o.transform.find(':'))},
                           {"start_counter", start}};
  std::vector<TestResult> results;
  bool overall = true;

  if (interleaved && !zero) {
    const std::size_t wb = word_bytes(cfg.width);
    const std::size_t n = parse_size(o.bytes) / (wb * keys.entries.size());
    if (n < 2) throw UsageError("--bytes too small for interleaving");
    std::vector<std::uint64_t> raw;
    for (const Key& k : keys.entries) raw.push_back(k.value());
    cfg.tests = applicable_tests(n * wb * raw.size(), err);
    if (cfg.tests.empty()) throw UsageError("sample too small for any test");
    InterstreamReport r = interstream_test(raw, n, cfg);
    results = r.battery.results;
    results.push_back(r.correlation);
    std::sort(results.begin(), results.end(),
              [](const TestResult& a, const TestResult& b) { return a.test_name < b.test_name; });
    overall = r.passed();
    source["keys"] = raw.size();
    report["correlation"] = {{"threshold", r.threshold}, {"max_abs_r", r.max_abs_r}};
    cfg.sample_bytes = n * wb * raw.size();
  } else {
    std::vector<std::byte> data;
    if (zero) {
      data.assign(parse_size(o.bytes), std::byte{0});
    } else if (cfg.transform == Transform::kKeyCounter) {
      data = key_counter_source(keys, start, cfg.width);
      source["keys"] = keys.entries.size();
    } else {
      cfg.sample_bytes = parse_size(o.bytes);
      cfg.tests = {};
      try {
        cfg.validate();
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      data = make_source(key, start, cfg);
      source["key"] = format_key(key);
    }
    cfg.sample_bytes = data.size();
    cfg.tests = applicable_tests(data.size(), err);
    if (cfg.tests.empty() || data.size() < (std::size_t{1} << 16)) {
      throw UsageError("sample of " + std::to_string(data.size()) +
                       " bytes is too small (minimum 65536)");
    }
    if (cfg.transform == Transform::kStride) source["stride"] = cfg.stride;
    const BatteryReport r = run_battery(data, cfg);
    results = r.results;
    overall = r.passed();
  }

  report["source"] = source;
  report["sample_bytes"] = cfg.sample_bytes;
  for (const auto& r : results) {
    print_result(out, r);
    report["results"].push_back(to_json(r));
  }
  report["overall"] = overall ? "pass" : "fail";
  out << "overall: " << (overall ? "pass" : "fail") << "\n";

  if (!o.report_path.empty()) {
    Sink sink(o.report_path, out, false);
    const std::string text = report.dump(2) + "\n";
    sink.write(text.data(), text.size());
    sink.finish();
  }
  return overall ? kOk : kFailed;
}

// --- bench ----------------------------------------------------------------

struct BenchOptions {
  std::string variant = "all";
  std::string bytes = "256M";
  unsigned repeats = 5;
  std::string key;
};

int cmd_bench(const BenchOptions& o, std::ostream& out, std::ostream& /*err*/) {
  std::vector<BenchVariant> variants;
  if (o.variant == "all") {
    variants = {BenchVariant::kSquares32, BenchVariant::kSquares64,
                BenchVariant::kTwoSquares32};
  } else if (const auto v = parse_bench_variant(o.variant)) {
    variants = {*v};
  } else {
    throw UsageError("--variant must be all, 32, 64 or two32");
  }
  const std::uint64_t bytes = parse_size(o.bytes);
  if (bytes < kMinBenchBytes) throw UsageError("--bytes must be at least 16M");
  if (o.repeats == 0) throw UsageError("--repeats must be >= 1");
  const std::uint64_t key =
      o.key.empty() ? key_from_index(0).value() : parse_key_arg(o.key, true);

  double t64 = 0.0, t2x32 = 0.0;
  for (const BenchVariant v : variants) {
    const BenchReport r = run_bench(v, bytes, o.repeats, key);
    out << to_string(v) << std::string(14 - to_string(v).size(), ' ')
        << "bytes=" << r.bytes_generated << " elapsed=" << fmt("%.4f", r.elapsed)
        << "s throughput=" << fmt("%.1f", r.throughput / (1 << 20)) << "MiB/s"
        << " per-call=" << fmt("%.3f", r.ns_per_call) << "ns"
        << " checksum=" << format_key(r.checksum) << "\n";
    if (v == BenchVariant::kSquares64) t64 = r.throughput;
    if (v == BenchVariant::kTwoSquares32) t2x32 = r.throughput;
  }
  if (t64 > 0 && t2x32 > 0) {
    out << "squares64 / two-calls-32 throughput ratio: " << fmt("%.3f", t64 / t2x32) << "\n";
  }
  return kOk;
}

// --- selftest ---------------------------------------------------------------

int cmd_selftest(bool corrupt, std::ostream& out, std::ostream& err) {
  const SelftestOutcome r = run_selftest(corrupt);
  if (!r.ok) {
    err << "selftest FAILED: " << r.first_failure << "\n";
    return kFailed;
  }
  out << "selftest: " << r.checks << " checks passed\n";
  return kOk;
}

}  // namespace

std::uint64_t parse_size(std::string_view text) {
  const auto bad = [&] {
    return std::invalid_argument("malformed size '" + std::string(text) + "'");
  };
  if (text.empty()) throw bad();
  if (text.size() > 2 && text[0] == '2' && text[1] == '^') {
    unsigned e = 0;
    auto [p, ec] = std::from_chars(text.data() + 2, text.data() + text.size(), e);
    if (ec != std::errc() || p != text.data() + text.size() || e > 63) throw bad();
    return std::uint64_t{1} << e;
  }
  if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
    return parse_hex_word(text);
  }
  unsigned shift = 0;
  switch (std::toupper(static_cast<unsigned char>(text.back()))) {
    case 'K': shift = 10; break;
    case 'M': shift = 20; break;
    case 'G': shift = 30; break;
    default: break;
  }
  if (shift) text.remove_suffix(1);
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || p != text.data() + text.size() || text.empty()) throw bad();
  if (shift && v > (std::numeric_limits<std::uint64_t>::max() >> shift)) throw bad();
  return v << shift;
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Squares generator tools"};
  app.require_subcommand(1);

  GenkeysOptions gk;
  auto* genkeys = app.add_subcommand("genkeys", "Write different-digits keys");
  genkeys->add_option("--start", gk.start, "First key index");
  genkeys->add_option("--count", gk.count, "Number of keys")->required();
  genkeys->add_option("--format", gk.format, "text or c-header");
  genkeys->add_option("--out", gk.out, "Output path, - for stdout");

  GenOptions g;
  auto* gen = app.add_subcommand("gen", "Emit raw generator bytes or floats");
  gen->add_option("--key", g.key, "Key, hex")->required();
  gen->add_option("--ctr", g.ctr, "Starting counter");
  gen->add_option("--width", g.width, "32 or 64");
  auto* bytes_opt = gen->add_option("--bytes", g.bytes, "Byte count, or inf");
  auto* floats_opt = gen->add_option("--floats", g.floats, "Float count, one per line");
  bytes_opt->excludes(floats_opt);
  gen->add_option("--out", g.out, "Output path, - for stdout");
  gen->add_flag("--no-validate-key", g.no_validate, "Accept keys breaking the digit rules");
  gen->add_option("--threads", g.threads, "Worker threads");

  TestOptions t;
  auto* test = app.add_subcommand("test", "Run the statistical battery");
  test->add_option("--key", t.key, "Key, hex");
  test->add_option("--keys", t.keys_path, "Key file");
  test->add_option("--bytes", t.bytes, "Sample size");
  test->add_option("--width", t.width, "32 or 64");
  test->add_option("--transform", t.transform,
                   "identity, reversed, stride:K, key-counter or interleaved");
  test->add_option("--alpha", t.alpha, "Rejection threshold");
  test->add_option("--ctr", t.ctr, "Starting (or fixed) counter");
  test->add_option("--report", t.report_path, "Write a JSON report here");
  test->add_option("--source", t.source, "generator or zero")->group("");
  test->add_flag("--no-validate-key", t.no_validate, "Accept keys breaking the digit rules");

  BenchOptions b;
  auto* bench = app.add_subcommand("bench", "Time the kernels");
  bench->add_option("--variant", b.variant, "all, 32, 64 or two32");
  bench->add_option("--bytes", b.bytes, "Bytes per timed run");
  bench->add_option("--repeats", b.repeats, "Timed repeats (median reported)");
  bench->add_option("--key", b.key, "Key, hex");

  bool corrupt = false;
  auto* selftest = app.add_subcommand("selftest", "Check known-answer fixtures");
  selftest->add_flag("--corrupt-fixture", corrupt, "")->group("");

  std::vector<const char*> argv{"squares"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*genkeys) return cmd_genkeys(gk, out, err);
    if (*gen) return cmd_gen(g, out, err);
    if (*test) return cmd_test(t, out, err);
    if (*bench) return cmd_bench(b, out, err);
    if (*selftest) return cmd_selftest(corrupt, out, err);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailed;
  }
  return kUsage;
}

}  // namespace squares::cli
