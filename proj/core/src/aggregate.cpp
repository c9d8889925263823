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

#include "inche/aggregate.hpp"

#include <bit>
#include <string>

#include "inche/errors.hpp"

namespace inche {

FrequencyAccumulator::FrequencyAccumulator(const IncheContext& ctx)
    : pivot_freq_(ctx.pivots().size(), 0),
      nuance_freq_(ctx.nuances().full_size(), 0) {}

void FrequencyAccumulator::accumulate(const IncheContext& ctx, Plaintext val) {
  if (pivot_freq_.size() != ctx.pivots().size() ||
      nuance_freq_.size() != ctx.nuances().full_size()) {
    if (row_count_ != 0) {
      throw InvalidArgument("accumulator was started under another context");
    }
    *this = FrequencyAccumulator(ctx);
  }
  const Decomposition d = decompose(ctx, val);
  ++pivot_freq_[d.pivot_index];
  for (std::uint64_t m = d.offset_mask; m != 0; m &= m - 1) {
    ++nuance_freq_[static_cast<std::size_t>(std::countr_zero(m))];
  }
  ++row_count_;
}

void FrequencyAccumulator::accumulate(const IncheContext& ctx,
                                      std::span<const Plaintext> vals) {
  for (Plaintext v : vals) accumulate(ctx, v);
}

void FrequencyAccumulator::merge(const FrequencyAccumulator& other) {
  if (other.row_count_ == 0 && other.pivot_freq_.empty()) return;
  if (row_count_ == 0 && pivot_freq_.empty()) {
    *this = other;
    return;
  }
  if (pivot_freq_.size() != other.pivot_freq_.size() ||
      nuance_freq_.size() != other.nuance_freq_.size()) {
    throw InvalidArgument("cannot merge accumulators of different shapes");
  }
  for (std::size_t i = 0; i < pivot_freq_.size(); ++i) {
    pivot_freq_[i] += other.pivot_freq_[i];
  }
  for (std::size_t j = 0; j < nuance_freq_.size(); ++j) {
    nuance_freq_[j] += other.nuance_freq_[j];
  }
  row_count_ += other.row_count_;
}

mpz_class FrequencyAccumulator::weighted_plaintext_sum(
    const IncheContext& ctx) const {
  mpz_class total = 0;
  for (std::size_t i = 0; i < pivot_freq_.size(); ++i) {
    if (pivot_freq_[i] == 0) continue;
    mpz_class term(static_cast<unsigned long>(ctx.pivots().pivot(i)));
    term *= static_cast<unsigned long>(pivot_freq_[i]);
    total += term;
  }
  for (std::size_t j = 0; j < nuance_freq_.size(); ++j) {
    if (nuance_freq_[j] == 0) continue;
    mpz_class term(static_cast<unsigned long>(nuance_freq_[j]));
    mpz_mul_2exp(term.get_mpz_t(), term.get_mpz_t(), j);
    total += term;
  }
  return total;
}

Ciphertext finalize_sum(const FrequencyAccumulator& acc,
                        const IncheContext& ctx) {
  if (!ctx.nuances().complete()) {
    throw InvalidArgument(
        "finalize_sum needs every nuance cached; context has a budget of " +
        std::to_string(ctx.nuances().size()) + " of " +
        std::to_string(ctx.nuances().full_size()));
  }
  const auto& key = ctx.key();
  if (acc.row_count() == 0) {
    ctx.counters().add_fresh_encrypt();
    return he::encrypt(key, std::uint64_t{0});
  }
  if (acc.pivot_freq().size() != ctx.pivots().size() ||
      acc.nuance_freq().size() != ctx.nuances().full_size()) {
    throw InvalidArgument("accumulator does not match context shape");
  }

  Ciphertext total;
  bool started = false;
  auto fold = [&](const Ciphertext& cached, std::uint64_t freq) {
    if (freq == 0) return;
    Ciphertext term = he::he_scalar_mul(key, cached, freq);
    ctx.counters().add_scalar_mul();
    if (!started) {
      total = std::move(term);
      started = true;
      return;
    }
    he::he_add_inplace(key, total, term);
    ctx.counters().add_he_add();
  };
  for (std::size_t i = 0; i < acc.pivot_freq().size(); ++i) {
    fold(ctx.pivots().cached(i), acc.pivot_freq()[i]);
  }
  for (std::size_t j = 0; j < acc.nuance_freq().size(); ++j) {
    fold(ctx.nuances().radix(static_cast<unsigned>(j)), acc.nuance_freq()[j]);
  }
  return total;
}

Ciphertext naive_sum(const IncheContext& ctx,
                     std::span<const Ciphertext> ciphertexts) {
  const auto& key = ctx.key();
  if (ciphertexts.empty()) {
    ctx.counters().add_fresh_encrypt();
    return he::encrypt(key, std::uint64_t{0});
  }
  he::check_same_key(key, ciphertexts.front());
  Ciphertext total = ciphertexts.front();
  for (std::size_t i = 1; i < ciphertexts.size(); ++i) {
    he::he_add_inplace(key, total, ciphertexts[i]);
  }
  ctx.counters().add_he_add(ciphertexts.size() - 1);
  return total;
}

double Rational::to_double() const {
  mpq_class q(numerator, denominator);
  return q.get_d();
}

Rational avg_from_sum(const mpz_class& sum, std::uint64_t row_count) {
  if (row_count == 0) throw InvalidArgument("average over zero rows");
  mpq_class q(sum, mpz_class(static_cast<unsigned long>(row_count)));
  q.canonicalize();
  return Rational{q.get_num(), q.get_den()};
}

}  // namespace inche
