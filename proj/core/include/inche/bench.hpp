/*
 * Copyright 2026 The INCHE Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Benchmark workloads.
//
//   encrypt    batch encryption vs. composition from the caches, one row per
//              pivot count.
//   aggregate  he_add fold vs. frequency-weighted sum, with per-step
//              cumulative timings.
//   limited    composition under a nuance budget, one row per budget.
//
// Timing uses the steady clock. Each series runs one discarded warm-up pass
// followed by `repetitions` measured passes. Context construction is timed as
// its own series and never included in per-value encryption time. Results are
// only returned after the decryption checks pass; a failed check throws
// CorrectnessError.

#ifndef INCHE_BENCH_HPP_
#define INCHE_BENCH_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "inche/dataio.hpp"
#include "inche/he_backend.hpp"
#include "inche/inche.hpp"

namespace inche::bench {

enum class Workload { kEncrypt, kAggregate, kLimited };
enum class Mode { kBatch, kIncremental, kBoth };
enum class ReportFormat { kJson, kCsv };

std::string_view to_string(Workload w);
std::string_view to_string(Mode m);
std::string_view to_string(ReportFormat f);
Workload workload_from_string(std::string_view s);
Mode mode_from_string(std::string_view s);
ReportFormat format_from_string(std::string_view s);

inline constexpr int kReportSchemaVersion = 1;
inline constexpr unsigned kDefaultRepetitions = 3;
inline constexpr std::size_t kDefaultStep = 10000;
inline constexpr std::size_t kDefaultVerifySamples = 64;

struct BenchConfig {
  Workload workload = Workload::kEncrypt;
  data::ColumnSource source;
  unsigned n_bits = 32;
  // One report row per entry (encrypt, aggregate). limited uses the first.
  std::vector<std::uint64_t> pivots = {32};
  // limited: one row per entry, nullopt meaning "every radix cached".
  // encrypt: the first entry, if any, caps the nuance table.
  std::vector<std::optional<unsigned>> budgets;
  Mode mode = Mode::kBoth;
  unsigned repetitions = kDefaultRepetitions;
  he::Scheme backend = he::Scheme::kPaillier;
  unsigned modulus_bits = he::kDefaultModulusBits;
  // Seeds the data source and the key. Unset keeps the key unseeded and uses
  // seed 1 for data.
  std::optional<std::uint64_t> seed;
  std::size_t step = kDefaultStep;
  // aggregate: > 1 accumulates frequencies on this many worker threads.
  unsigned threads = 1;
  // Decrypted outputs checked per series on the Paillier backend. The debug
  // backend checks every output.
  std::size_t verify_samples = kDefaultVerifySamples;
};

// Throws InvalidArgument for inconsistent settings.
void validate(const BenchConfig& cfg);

struct TimingSeries {
  std::vector<double> samples_us;
  double mean_us = 0;
  // Sample standard deviation (n - 1).
  double stdev_us = 0;

  friend bool operator==(const TimingSeries&, const TimingSeries&) = default;
};

TimingSeries summarize(std::vector<double> samples_us);

struct ReportRow {
  std::uint64_t requested_pivots = 0;
  std::uint64_t pivots = 0;
  std::string delta_p;
  unsigned nuance_full = 0;
  unsigned nuance_cached = 0;
  std::optional<unsigned> budget;

  TimingSeries build;
  // Batch encryption (encrypt, limited) or he_add fold (aggregate).
  std::optional<TimingSeries> baseline;
  // Composition (encrypt), budgeted composition (limited) or
  // frequency-weighted sum (aggregate).
  std::optional<TimingSeries> inche;
  // baseline mean / inche mean.
  std::optional<double> speedup;

  // Homomorphic work of one measured pass of the inche path.
  std::uint64_t he_add_count = 0;
  std::uint64_t scalar_mul_count = 0;
  std::uint64_t fresh_encrypt_count = 0;
  // he_add count of one pass of the baseline (aggregate only).
  std::uint64_t baseline_he_add_count = 0;

  bool verified = false;
  std::uint64_t verified_outputs = 0;

  // aggregate only. Cumulative microseconds at each step boundary, averaged
  // over the measured passes.
  std::vector<double> baseline_steps_us;
  std::vector<double> inche_steps_us;
  double inche_finalize_us = 0;
  std::vector<double> worker_us;
  std::string plaintext_sum;
  std::string baseline_sum;
  std::string inche_sum;
  std::string average_numerator;
  std::string average_denominator;

  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

struct ConfigEcho {
  std::string workload;
  std::string source;
  unsigned n_bits = 0;
  std::uint64_t rows = 0;
  std::vector<std::uint64_t> pivots;
  std::vector<std::string> budgets;
  std::string mode;
  unsigned repetitions = 0;
  std::string backend;
  unsigned modulus_bits = 0;
  std::optional<std::uint64_t> seed;
  std::uint64_t step = 0;
  unsigned threads = 1;

  friend bool operator==(const ConfigEcho&, const ConfigEcho&) = default;
};

struct BenchReport {
  int schema_version = kReportSchemaVersion;
  std::string workload;
  ConfigEcho config;
  std::uint64_t row_count = 0;
  std::vector<ReportRow> rows;

  friend bool operator==(const BenchReport&, const BenchReport&) = default;
};

BenchReport run_encrypt_workload(const BenchConfig& cfg);
BenchReport run_aggregate_workload(const BenchConfig& cfg);
BenchReport run_limited_workload(const BenchConfig& cfg);
// Dispatches on cfg.workload.
BenchReport run_workload(const BenchConfig& cfg);

// Variants over already materialized values and an existing key.
BenchReport run_encrypt_workload(const BenchConfig& cfg,
                                 const std::vector<Plaintext>& values,
                                 const he::SecretKey& key);
BenchReport run_aggregate_workload(const BenchConfig& cfg,
                                   const std::vector<Plaintext>& values,
                                   const he::SecretKey& key);
BenchReport run_limited_workload(const BenchConfig& cfg,
                                 const std::vector<Plaintext>& values,
                                 const he::SecretKey& key);

std::string to_json(const BenchReport& report);
BenchReport report_from_json(std::string_view text);
// Header row plus one line per ReportRow, fixed column order.
std::string to_csv(const BenchReport& report);

// Throws DataError on I/O failure.
void write_report(const BenchReport& report, const std::filesystem::path& path,
                  ReportFormat format);
BenchReport read_report_json(const std::filesystem::path& path);

// Human-readable summary, one line per row.
std::string summary(const BenchReport& report);

}  // namespace inche::bench

#endif  // INCHE_BENCH_HPP_
