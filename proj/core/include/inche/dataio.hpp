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

// Benchmark inputs: seeded random integers, a dbgen-style delimited column
// reader, and a synthetic stand-in for TPC-H Part.P_SIZE.

#ifndef INCHE_DATAIO_HPP_
#define INCHE_DATAIO_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace inche::data {

enum class SourceKind { kRandom, kCsv, kPsize };

std::string_view to_string(SourceKind kind);
// "random", "csv" or "psize". Throws InvalidArgument otherwise.
SourceKind source_kind_from_string(std::string_view name);

// P_SIZE values are uniform over [kPsizeMin, kPsizeMax].
inline constexpr std::uint64_t kPsizeMin = 1;
inline constexpr std::uint64_t kPsizeMax = 50;

struct ColumnSource {
  SourceKind kind = SourceKind::kRandom;
  unsigned n_bits = 32;
  std::size_t row_count = 0;
  std::uint64_t seed = 1;
  // kCsv only.
  std::filesystem::path path;
  std::size_t column = 0;
  char delimiter = '|';
  bool skip_header = false;
};

// Uniform over [0, 2^n_bits). Throws InvalidArgument unless 1 <= n_bits <= 64.
std::vector<std::uint64_t> gen_random(unsigned n_bits, std::size_t row_count,
                                      std::uint64_t seed);

// Uniform over [kPsizeMin, kPsizeMax].
std::vector<std::uint64_t> gen_psize_like(std::size_t row_count,
                                          std::uint64_t seed);

struct CsvOptions {
  char delimiter = '|';
  bool skip_header = false;
  // Values must be below 2^n_bits.
  unsigned n_bits = 64;
};

// Reads one column of non-negative integers in file order. Throws DataError
// for a missing file, a short row, a non-integer cell or an out-of-range
// value; the message names the 1-based line number.
std::vector<std::uint64_t> read_csv_column(const std::filesystem::path& path,
                                           std::size_t column,
                                           const CsvOptions& options = {});

// Dispatches on source.kind. kRandom and kPsize yield exactly row_count
// values; kCsv reads the whole column and keeps the first row_count values
// when row_count is non-zero.
std::vector<std::uint64_t> materialize(const ColumnSource& source);

}  // namespace inche::data

#endif  // INCHE_DATAIO_HPP_
