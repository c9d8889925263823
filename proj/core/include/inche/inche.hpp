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

// Incremental homomorphic encryption.
//
// The domain [0, 2^n) is cut into equal-width gaps [P_i, P_i + dP) whose left
// ends ("pivots") are encrypted once up front. A second cache holds
// encryptions of the radixes 2^j for j < ceil(log2 dP) ("nuances"). Any value
// then decomposes as
//
//   val = P_i + sum_{j in bits(val - P_i)} 2^j,
//
// and its ciphertext is composed with he_add from cached ciphertexts only:
//
//   enc(val) = enc(P_i) (+) sum_{j in bits(val - P_i)} enc(2^j).
//
// One nuance table serves every gap because all gaps have the same width.
//
// A context may be built with a nuance budget d, in which case only the radixes
// 2^0 .. 2^(d-1) are cached. The remaining offset bits are summed in plaintext
// and encrypted afresh as a single residual ciphertext.
//
// Caveat: composition is deterministic. Two encryptions of the same value
// under one context produce identical ciphertexts, so equal field values are
// visible as equal ciphertexts. randomization_smoke_test() reports this.

#ifndef INCHE_INCHE_HPP_
#define INCHE_INCHE_HPP_

#include <atomic>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "inche/he_backend.hpp"

namespace inche {

using he::BigInt;
using he::Ciphertext;
using Plaintext = std::uint64_t;

// Wide enough for 2^64, the domain size at n_bits = 64.
__extension__ typedef unsigned __int128 Wide;

// 2^n_bits.
Wide domain_size(unsigned n_bits);
std::string to_string(Wide v);

// ceil(log2 v) for v >= 1.
unsigned ceil_log2(Wide v);

// Upper bound on the number of pivots a context will materialize.
inline constexpr std::uint64_t kMaxPivots = std::uint64_t{1} << 22;

class PivotIndex {
 public:
  // Pivots P_i = i * dP for every i with P_i < 2^n_bits, where
  // dP = ceil(2^n_bits / requested). When requested does not divide 2^n_bits
  // the last pivots may fall outside the domain and are dropped, so size() can
  // be smaller than requested.
  static PivotIndex build(const he::SecretKey& key, unsigned n_bits,
                          std::uint64_t requested);

  std::size_t size() const { return pivots_.size(); }
  unsigned n_bits() const { return n_bits_; }
  Wide delta_p() const { return delta_p_; }
  std::span<const Plaintext> pivots() const { return pivots_; }
  Plaintext pivot(std::size_t i) const { return pivots_[i]; }
  const Ciphertext& cached(std::size_t i) const { return cached_[i]; }

  // i with P_i <= val < P_{i+1}, by one division. val must be in the domain.
  std::size_t locate(Plaintext val) const;
  // Same contract via binary search over the sorted pivots. Does not rely on
  // equal widths.
  std::size_t locate_by_search(Plaintext val) const;

 private:
  unsigned n_bits_ = 0;
  Wide delta_p_ = 1;
  std::vector<Plaintext> pivots_;
  std::vector<Ciphertext> cached_;
};

class NuanceTable {
 public:
  // Caches enc(2^j) for j < min(ceil(log2 delta_p), budget).
  static NuanceTable build(const he::SecretKey& key, Wide delta_p,
                           std::optional<unsigned> budget);

  // ceil(log2 dP): the number of radixes needed to cover every offset.
  unsigned full_size() const { return full_size_; }
  unsigned size() const { return static_cast<unsigned>(entries_.size()); }
  std::optional<unsigned> budget() const { return budget_; }
  bool complete() const { return size() == full_size_; }

  bool has(unsigned exponent) const { return exponent < entries_.size(); }
  const Ciphertext& radix(unsigned exponent) const {
    return entries_[exponent];
  }
  std::vector<unsigned> exponents() const;
  // Offsets with every set bit below this mask's width are fully cached.
  std::uint64_t cached_mask() const;

 private:
  unsigned full_size_ = 0;
  std::optional<unsigned> budget_;
  std::vector<Ciphertext> entries_;
};

struct OpCounts {
  std::uint64_t he_add = 0;
  std::uint64_t scalar_mul = 0;
  std::uint64_t fresh_encrypt = 0;

  friend OpCounts operator-(const OpCounts& a, const OpCounts& b) {
    return {a.he_add - b.he_add, a.scalar_mul - b.scalar_mul,
            a.fresh_encrypt - b.fresh_encrypt};
  }
  friend bool operator==(const OpCounts&, const OpCounts&) = default;
};

// Contention-safe tallies of homomorphic work done through a context.
class OpCounters {
 public:
  void add_he_add(std::uint64_t n = 1) {
    he_add_.fetch_add(n, std::memory_order_relaxed);
  }
  void add_scalar_mul(std::uint64_t n = 1) {
    scalar_mul_.fetch_add(n, std::memory_order_relaxed);
  }
  void add_fresh_encrypt(std::uint64_t n = 1) {
    fresh_encrypt_.fetch_add(n, std::memory_order_relaxed);
  }
  OpCounts snapshot() const {
    return {he_add_.load(std::memory_order_relaxed),
            scalar_mul_.load(std::memory_order_relaxed),
            fresh_encrypt_.load(std::memory_order_relaxed)};
  }
  void reset() {
    he_add_ = 0;
    scalar_mul_ = 0;
    fresh_encrypt_ = 0;
  }

 private:
  std::atomic<std::uint64_t> he_add_{0};
  std::atomic<std::uint64_t> scalar_mul_{0};
  std::atomic<std::uint64_t> fresh_encrypt_{0};
};

// Key plus the two caches. Immutable after build() apart from the counters,
// so concurrent encryption through one context is allowed.
class IncheContext {
 public:
  // Throws InvalidArgument unless 1 <= pivot_count <= 2^n_bits and n_bits
  // does not exceed the key's n_bits.
  static IncheContext build(he::SecretKey key, unsigned n_bits,
                            std::uint64_t pivot_count,
                            std::optional<unsigned> nuance_budget = {});

  const he::SecretKey& key() const { return key_; }
  unsigned n_bits() const { return pivots_.n_bits(); }
  const PivotIndex& pivots() const { return pivots_; }
  const NuanceTable& nuances() const { return nuances_; }
  std::uint64_t requested_pivots() const { return requested_pivots_; }
  std::chrono::nanoseconds build_time() const { return build_time_; }

  OpCounters& counters() const { return *counters_; }
  OpCounts counts() const { return counters_->snapshot(); }

  // Throws OutOfDomain unless val < 2^n_bits.
  void check_domain(Plaintext val) const;

  // p, dP, nuance exponents and build time, one "key: value" per line.
  std::string dump() const;

 private:
  IncheContext(he::SecretKey key, PivotIndex pivots, NuanceTable nuances);

  he::SecretKey key_;
  PivotIndex pivots_;
  NuanceTable nuances_;
  std::uint64_t requested_pivots_ = 0;
  std::chrono::nanoseconds build_time_{0};
  std::unique_ptr<OpCounters> counters_;
};

struct PivotHit {
  std::size_t index;
  Plaintext pivot;
  const Ciphertext& cached;
};

PivotHit pivot_lookup(const IncheContext& ctx, Plaintext val);

struct Decomposition {
  std::size_t pivot_index = 0;
  Plaintext pivot = 0;
  // Bit j set <=> radix 2^j is part of val - pivot.
  std::uint64_t offset_mask = 0;

  Plaintext offset() const { return offset_mask; }
  std::vector<unsigned> exponents() const;
};

Decomposition decompose(const IncheContext& ctx, Plaintext val);

// Composes enc(val) from the caches. With a complete nuance table the result
// uses only he_add on cached ciphertexts; otherwise the residual policy of
// inche_encrypt_budgeted applies.
Ciphertext inche_encrypt(const IncheContext& ctx, Plaintext val);

// enc(P_i) (+) cached radixes (+) enc(residual), where residual is the sum of
// offset bits whose radix is not cached. The residual costs one fresh
// encryption and is skipped when zero.
Ciphertext inche_encrypt_budgeted(const IncheContext& ctx, Plaintext val);

struct RandomizationReport {
  std::size_t fresh_trials = 0;
  std::size_t fresh_distinct = 0;
  bool fresh_all_distinct = false;
  // Every cached pivot and nuance ciphertext differs from every other.
  bool cache_pairwise_distinct = false;
  // Composing the same plaintext twice gave bit-identical ciphertexts.
  bool composed_deterministic = false;
  bool caching_enabled = false;
};

// Encrypts `probe` afresh `trials` times and composes it twice. Intended for
// the Paillier backend; the debug scheme is deterministic by construction.
RandomizationReport randomization_smoke_test(const IncheContext& ctx,
                                             std::size_t trials = 1000,
                                             Plaintext probe = 7);

}  // namespace inche

#endif  // INCHE_INCHE_HPP_
