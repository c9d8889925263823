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

#include "inche/dataio.hpp"

#include <charconv>
#include <fstream>
#include <random>

#include "inche/errors.hpp"

namespace inche::data {

std::string_view to_string(SourceKind kind) {
  switch (kind) {
    case SourceKind::kRandom:
      return "random";
    case SourceKind::kCsv:
      return "csv";
    case SourceKind::kPsize:
      return "psize";
  }
  return "unknown";
}

SourceKind source_kind_from_string(std::string_view name) {
  if (name == "random") return SourceKind::kRandom;
  if (name == "csv") return SourceKind::kCsv;
  if (name == "psize") return SourceKind::kPsize;
  throw InvalidArgument("unknown source '" + std::string(name) + "'");
}

std::vector<std::uint64_t> gen_random(unsigned n_bits, std::size_t row_count,
                                      std::uint64_t seed) {
  if (n_bits == 0 || n_bits > 64) {
    throw InvalidArgument("n_bits must be in [1, 64], got " +
                          std::to_string(n_bits));
  }
  std::mt19937_64 rng(seed);
  std::vector<std::uint64_t> out(row_count);
  // The top bits of a 64-bit draw are uniform over [0, 2^n_bits).
  const unsigned shift = 64 - n_bits;
  for (auto& v : out) v = rng() >> shift;
  return out;
}

std::vector<std::uint64_t> gen_psize_like(std::size_t row_count,
                                          std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  constexpr std::uint64_t span = kPsizeMax - kPsizeMin + 1;
  // Rejection keeps the draw exactly uniform and independent of the
  // standard library's distribution implementation.
  constexpr std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % span);
  std::vector<std::uint64_t> out(row_count);
  for (auto& v : out) {
    std::uint64_t r;
    do {
      r = rng();
    } while (r >= limit);
    v = kPsizeMin + r % span;
  }
  return out;
}

std::vector<std::uint64_t> read_csv_column(const std::filesystem::path& path,
                                           std::size_t column,
                                           const CsvOptions& options) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path.string() + "'");

  std::vector<std::uint64_t> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (options.skip_header && line_no == 1) continue;
    if (line.empty()) continue;

    std::size_t start = 0;
    for (std::size_t field = 0; field < column; ++field) {
      const auto next = line.find(options.delimiter, start);
      if (next == std::string::npos) {
        throw DataError(path.string() + ":" + std::to_string(line_no) +
                        ": row has no column " + std::to_string(column));
      }
      start = next + 1;
    }
    auto end = line.find(options.delimiter, start);
    if (end == std::string::npos) end = line.size();
    const std::string_view cell(line.data() + start, end - start);

    std::uint64_t value = 0;
    const auto [ptr, ec] =
        std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size()) {
      throw DataError(path.string() + ":" + std::to_string(line_no) +
                      ": cell '" + std::string(cell) +
                      "' is not a non-negative integer");
    }
    if (options.n_bits < 64 && (value >> options.n_bits) != 0) {
      throw DataError(path.string() + ":" + std::to_string(line_no) +
                      ": value " + std::to_string(value) + " exceeds 2^" +
                      std::to_string(options.n_bits));
    }
    out.push_back(value);
  }
  return out;
}

std::vector<std::uint64_t> materialize(const ColumnSource& source) {
  switch (source.kind) {
    case SourceKind::kRandom:
      return gen_random(source.n_bits, source.row_count, source.seed);
    case SourceKind::kPsize: {
      if (source.n_bits < 6) {
        throw InvalidArgument("psize values need n_bits >= 6");
      }
      return gen_psize_like(source.row_count, source.seed);
    }
    case SourceKind::kCsv: {
      auto values = read_csv_column(
          source.path, source.column,
          CsvOptions{source.delimiter, source.skip_header, source.n_bits});
      if (source.row_count != 0 && values.size() > source.row_count) {
        values.resize(source.row_count);
      }
      return values;
    }
  }
  throw InvalidArgument("unknown source kind");
}

}  // namespace inche::data
