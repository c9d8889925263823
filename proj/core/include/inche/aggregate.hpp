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

// Frequency-weighted encrypted SUM.
//
// Folding he_add over one ciphertext per row costs rows - 1 homomorphic
// additions. Because every composed ciphertext is a sum of cached pivot and
// nuance ciphertexts, the column sum can instead be written as
//
//   enc(sum s) = (+)_i  freq_i * enc(P_i)  (+)  (+)_j  freq_j * enc(2^j)
//
// where freq_i counts rows falling in gap i and freq_j counts rows whose
// offset has bit j set. The counts are gathered in plaintext, so the
// homomorphic cost depends only on (p, dP), never on the row count.

#ifndef INCHE_AGGREGATE_HPP_
#define INCHE_AGGREGATE_HPP_

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <vector>

#include "inche/inche.hpp"

namespace inche {

class FrequencyAccumulator {
 public:
  FrequencyAccumulator() = default;
  explicit FrequencyAccumulator(const IncheContext& ctx);

  // No homomorphic work. Throws OutOfDomain for values outside the domain.
  void accumulate(const IncheContext& ctx, Plaintext val);
  void accumulate(const IncheContext& ctx, std::span<const Plaintext> vals);

  // Component-wise addition. Both sides must come from the same context shape.
  void merge(const FrequencyAccumulator& other);

  std::span<const std::uint64_t> pivot_freq() const { return pivot_freq_; }
  std::span<const std::uint64_t> nuance_freq() const { return nuance_freq_; }
  std::uint64_t row_count() const { return row_count_; }

  // sum_i freq_i * P_i + sum_j freq_j * 2^j, the plaintext the homomorphic
  // sum must decrypt to.
  mpz_class weighted_plaintext_sum(const IncheContext& ctx) const;

 private:
  std::vector<std::uint64_t> pivot_freq_;
  std::vector<std::uint64_t> nuance_freq_;
  std::uint64_t row_count_ = 0;
};

// Requires a complete nuance table (no budget cap). An empty accumulator
// yields a fresh encryption of 0.
Ciphertext finalize_sum(const FrequencyAccumulator& acc,
                        const IncheContext& ctx);

// Left fold of he_add. Empty input yields a fresh encryption of 0.
Ciphertext naive_sum(const IncheContext& ctx,
                     std::span<const Ciphertext> ciphertexts);

struct Rational {
  mpz_class numerator;
  mpz_class denominator;

  double to_double() const;
};

// Exact sum / row_count in lowest terms. Throws InvalidArgument when
// row_count == 0.
Rational avg_from_sum(const mpz_class& sum, std::uint64_t row_count);

}  // namespace inche

#endif  // INCHE_AGGREGATE_HPP_
