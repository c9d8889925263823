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

#include "inche/inche.hpp"

#include <algorithm>
#include <bit>
#include <iomanip>
#include <set>
#include <sstream>
#include <utility>

#include "inche/errors.hpp"

namespace inche {

Wide domain_size(unsigned n_bits) { return Wide{1} << n_bits; }

std::string to_string(Wide v) {
  if (v == 0) return "0";
  std::string out;
  while (v > 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

unsigned ceil_log2(Wide v) {
  if (v <= 1) return 0;
  Wide x = v - 1;
  unsigned bits = 0;
  while (x > 0) {
    ++bits;
    x >>= 1;
  }
  return bits;
}

namespace {

constexpr Wide kMaxU64 = ~std::uint64_t{0};

}  // namespace

// ---------------------------------------------------------------------------
// PivotIndex

PivotIndex PivotIndex::build(const he::SecretKey& key, unsigned n_bits,
                             std::uint64_t requested) {
  if (n_bits == 0 || n_bits > 64) {
    throw InvalidArgument("n_bits must be in [1, 64]");
  }
  const Wide domain = domain_size(n_bits);
  if (requested == 0) throw InvalidArgument("pivot count must be >= 1");
  if (Wide{requested} > domain) {
    throw InvalidArgument("pivot count " + std::to_string(requested) +
                          " exceeds domain size 2^" + std::to_string(n_bits));
  }
  if (requested > kMaxPivots) {
    throw InvalidArgument("pivot count above in-memory limit " +
                          std::to_string(kMaxPivots));
  }

  PivotIndex index;
  index.n_bits_ = n_bits;
  index.delta_p_ = (domain + requested - 1) / requested;
  const Wide count = (domain + index.delta_p_ - 1) / index.delta_p_;
  index.pivots_.reserve(static_cast<std::size_t>(count));
  index.cached_.reserve(static_cast<std::size_t>(count));
  for (Wide i = 0; i < count; ++i) {
    const auto pivot = static_cast<Plaintext>(i * index.delta_p_);
    index.pivots_.push_back(pivot);
    index.cached_.push_back(he::encrypt(key, pivot));
  }
  return index;
}

std::size_t PivotIndex::locate(Plaintext val) const {
  if (delta_p_ > kMaxU64) return 0;
  return static_cast<std::size_t>(val / static_cast<std::uint64_t>(delta_p_));
}

std::size_t PivotIndex::locate_by_search(Plaintext val) const {
  auto it = std::upper_bound(pivots_.begin(), pivots_.end(), val);
  return static_cast<std::size_t>(std::distance(pivots_.begin(), it)) - 1;
}

// ---------------------------------------------------------------------------
// NuanceTable

NuanceTable NuanceTable::build(const he::SecretKey& key, Wide delta_p,
                               std::optional<unsigned> budget) {
  NuanceTable table;
  table.full_size_ = ceil_log2(delta_p);
  table.budget_ = budget;
  const unsigned cached =
      budget ? std::min(*budget, table.full_size_) : table.full_size_;
  table.entries_.reserve(cached);
  for (unsigned j = 0; j < cached; ++j) {
    table.entries_.push_back(he::encrypt(key, std::uint64_t{1} << j));
  }
  return table;
}

std::vector<unsigned> NuanceTable::exponents() const {
  std::vector<unsigned> out(entries_.size());
  for (unsigned j = 0; j < out.size(); ++j) out[j] = j;
  return out;
}

std::uint64_t NuanceTable::cached_mask() const {
  if (entries_.size() >= 64) return ~std::uint64_t{0};
  return (std::uint64_t{1} << entries_.size()) - 1;
}

// ---------------------------------------------------------------------------
// IncheContext

IncheContext::IncheContext(he::SecretKey key, PivotIndex pivots,
                           NuanceTable nuances)
    : key_(std::move(key)),
      pivots_(std::move(pivots)),
      nuances_(std::move(nuances)),
      counters_(std::make_unique<OpCounters>()) {}

IncheContext IncheContext::build(he::SecretKey key, unsigned n_bits,
                                 std::uint64_t pivot_count,
                                 std::optional<unsigned> nuance_budget) {
  if (n_bits > key.params().n_bits) {
    throw InvalidArgument("context n_bits=" + std::to_string(n_bits) +
                          " exceeds the key's n_bits=" +
                          std::to_string(key.params().n_bits));
  }
  const auto start = std::chrono::steady_clock::now();
  PivotIndex pivots = PivotIndex::build(key, n_bits, pivot_count);
  NuanceTable nuances = NuanceTable::build(key, pivots.delta_p(), nuance_budget);
  const auto elapsed = std::chrono::steady_clock::now() - start;

  IncheContext ctx(std::move(key), std::move(pivots), std::move(nuances));
  ctx.requested_pivots_ = pivot_count;
  ctx.build_time_ = std::chrono::duration_cast<std::chrono::nanoseconds>(elapsed);
  return ctx;
}

void IncheContext::check_domain(Plaintext val) const {
  if (Wide{val} >= domain_size(n_bits())) {
    throw OutOfDomain("value " + std::to_string(val) + " outside [0, 2^" +
                      std::to_string(n_bits()) + ")");
  }
}

std::string IncheContext::dump() const {
  std::ostringstream os;
  os << "scheme: " << he::to_string(key_.scheme()) << '\n';
  os << "n_bits: " << n_bits() << '\n';
  os << "pivots: " << pivots_.size() << '\n';
  os << "requested_pivots: " << requested_pivots_ << '\n';
  os << "delta_p: " << to_string(pivots_.delta_p()) << '\n';
  os << "nuance_exponents:";
  for (unsigned j : nuances_.exponents()) os << ' ' << j;
  os << '\n';
  os << "nuance_budget: "
     << (nuances_.budget() ? std::to_string(*nuances_.budget()) : "none")
     << '\n';
  os << "build_time_us: " << std::fixed << std::setprecision(3)
     << static_cast<double>(build_time_.count()) / 1e3 << '\n';
  return os.str();
}

// ---------------------------------------------------------------------------
// Operations

PivotHit pivot_lookup(const IncheContext& ctx, Plaintext val) {
  ctx.check_domain(val);
  const std::size_t i = ctx.pivots().locate(val);
  return PivotHit{i, ctx.pivots().pivot(i), ctx.pivots().cached(i)};
}

std::vector<unsigned> Decomposition::exponents() const {
  std::vector<unsigned> out;
  for (std::uint64_t m = offset_mask; m != 0; m &= m - 1) {
    out.push_back(static_cast<unsigned>(std::countr_zero(m)));
  }
  return out;
}

Decomposition decompose(const IncheContext& ctx, Plaintext val) {
  ctx.check_domain(val);
  const std::size_t i = ctx.pivots().locate(val);
  const Plaintext pivot = ctx.pivots().pivot(i);
  return Decomposition{i, pivot, val - pivot};
}

namespace {

Ciphertext compose(const IncheContext& ctx, Plaintext val) {
  const Decomposition d = decompose(ctx, val);
  const auto& key = ctx.key();
  const auto& nuances = ctx.nuances();

  Ciphertext out = ctx.pivots().cached(d.pivot_index);
  const std::uint64_t cached_bits = d.offset_mask & nuances.cached_mask();
  const std::uint64_t residual = d.offset_mask & ~nuances.cached_mask();

  std::uint64_t adds = 0;
  for (std::uint64_t m = cached_bits; m != 0; m &= m - 1) {
    const auto j = static_cast<unsigned>(std::countr_zero(m));
    he::he_add_inplace(key, out, nuances.radix(j));
    ++adds;
  }
  if (residual != 0) {
    he::he_add_inplace(key, out, he::encrypt(key, residual));
    ++adds;
    ctx.counters().add_fresh_encrypt();
  }
  ctx.counters().add_he_add(adds);
  return out;
}

}  // namespace

Ciphertext inche_encrypt(const IncheContext& ctx, Plaintext val) {
  return compose(ctx, val);
}

Ciphertext inche_encrypt_budgeted(const IncheContext& ctx, Plaintext val) {
  return compose(ctx, val);
}

RandomizationReport randomization_smoke_test(const IncheContext& ctx,
                                             std::size_t trials,
                                             Plaintext probe) {
  RandomizationReport report;
  const auto& key = ctx.key();
  if (Wide{probe} >= domain_size(ctx.n_bits())) {
    probe = static_cast<Plaintext>(Wide{probe} % domain_size(ctx.n_bits()));
  }

  std::set<BigInt> fresh;
  for (std::size_t t = 0; t < trials; ++t) {
    fresh.insert(he::encrypt(key, probe).value);
  }
  report.fresh_trials = trials;
  report.fresh_distinct = fresh.size();
  report.fresh_all_distinct = fresh.size() == trials;

  std::set<BigInt> cache;
  std::size_t cache_entries = 0;
  for (std::size_t i = 0; i < ctx.pivots().size(); ++i, ++cache_entries) {
    cache.insert(ctx.pivots().cached(i).value);
  }
  for (unsigned j = 0; j < ctx.nuances().size(); ++j, ++cache_entries) {
    cache.insert(ctx.nuances().radix(j).value);
  }
  report.cache_pairwise_distinct = cache.size() == cache_entries;

  report.caching_enabled = ctx.pivots().size() > 0;
  const Ciphertext first = inche_encrypt(ctx, probe);
  const Ciphertext second = inche_encrypt(ctx, probe);
  report.composed_deterministic = first == second;
  return report;
}

}  // namespace inche
