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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits non-zero
// if any criterion fails. Timing checks use the 2048-bit Paillier backend.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "inche/aggregate.hpp"
#include "inche/bench.hpp"
#include "inche/dataio.hpp"
#include "inche/errors.hpp"
#include "inche/he_backend.hpp"
#include "inche/inche.hpp"

namespace {

using inche::IncheContext;
using inche::OpCounts;
using inche::Plaintext;
namespace he = inche::he;
namespace bench = inche::bench;
namespace data = inche::data;

// Pinned parameters and tolerances.
constexpr std::uint64_t kSeed = 20240601;
constexpr unsigned kModulusBits = 2048;
constexpr unsigned kExhaustiveBits = 10;
constexpr std::uint64_t kExhaustivePivots[] = {2, 8, 32, 256};
constexpr std::size_t kAggregateRows = 100000;
constexpr double kMinAggregateSpeedup = 10.0;
constexpr std::size_t kSpeedupRows = 10000;
constexpr std::uint64_t kSpeedupPivots = 32;
constexpr double kMinSpeedup = 1.0;
constexpr std::size_t kBudgetRows = 2000;
constexpr unsigned kTimingReps = 3;
constexpr unsigned kBuildReps = 5;
constexpr std::uint64_t kBuildPivots[] = {2, 4, 8, 16, 32, 64};
constexpr std::size_t kRandomizationTrials = 1000;

struct Outcome {
  bool ok = false;
  std::string detail;
};

struct Shared {
  he::SecretKey paillier;
  he::SecretKey debug;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

mpz_class plain_sum(const std::vector<Plaintext>& vals) {
  mpz_class s = 0;
  for (Plaintext v : vals) s += static_cast<unsigned long>(v);
  return s;
}

// he_add count per composition must stay within n - floor(log2 p) + 1.
std::uint64_t add_bound(unsigned n, std::uint64_t p) {
  return n - static_cast<unsigned>(std::bit_width(p) - 1) + 1;
}

Outcome exhaustive_correctness(const Shared& s) {
  std::uint64_t checked = 0;
  for (const auto* key : {&s.debug, &s.paillier}) {
    for (std::uint64_t p : kExhaustivePivots) {
      const auto ctx = IncheContext::build(*key, kExhaustiveBits, p);
      for (Plaintext v = 0; v < (Plaintext{1} << kExhaustiveBits); ++v) {
        const auto got = he::decrypt(*key, inche::inche_encrypt(ctx, v));
        if (got != static_cast<unsigned long>(v)) {
          return {false, std::string(he::to_string(key->scheme())) + " p=" +
                             std::to_string(p) + " val=" + std::to_string(v) +
                             " decrypted to " + got.get_str()};
        }
        ++checked;
      }
    }
  }
  return {true, std::to_string(checked) +
                    " encryptions exact over n=10, p in {2,8,32,256}, "
                    "debug and paillier-2048"};
}

Outcome op_count_bound(const Shared& s) {
  std::uint64_t checked = 0;
  std::uint64_t worst_slack = ~std::uint64_t{0};
  auto check_ctx = [&](const IncheContext& ctx, Plaintext v) -> bool {
    const OpCounts before = ctx.counts();
    inche::inche_encrypt(ctx, v);
    const auto adds = (ctx.counts() - before).he_add;
    const auto bound = add_bound(ctx.n_bits(), ctx.requested_pivots());
    ++checked;
    worst_slack = std::min(worst_slack, bound - std::min(adds, bound));
    return adds <= bound;
  };
  // Exhaustive over the n=10 grid on Paillier.
  for (std::uint64_t p : kExhaustivePivots) {
    const auto ctx = IncheContext::build(s.paillier, kExhaustiveBits, p);
    for (Plaintext v = 0; v < (Plaintext{1} << kExhaustiveBits); ++v) {
      if (!check_ctx(ctx, v)) {
        return {false, "p=" + std::to_string(p) + " val=" + std::to_string(v)};
      }
    }
  }
  // Sampled grid on the debug backend, including the worst-case offset.
  std::mt19937_64 rng(kSeed);
  for (unsigned n : {4u, 8u, 12u, 16u, 24u, 32u}) {
    for (std::uint64_t p : {1u, 2u, 3u, 7u, 8u, 32u, 100u, 256u, 4096u}) {
      if (inche::Wide{p} > inche::domain_size(n)) continue;
      const auto ctx = IncheContext::build(s.debug, n, p);
      const auto dp = static_cast<Plaintext>(std::min<inche::Wide>(
          ctx.pivots().delta_p(), inche::domain_size(n) - 1));
      if (!check_ctx(ctx, dp - 1)) {
        return {false, "n=" + std::to_string(n) + " p=" + std::to_string(p)};
      }
      for (int k = 0; k < 500; ++k) {
        const Plaintext v = rng() >> (64 - n);
        if (!check_ctx(ctx, v)) {
          return {false, "n=" + std::to_string(n) + " p=" +
                             std::to_string(p) + " val=" + std::to_string(v)};
        }
      }
    }
  }
  return {true, std::to_string(checked) +
                    " compositions within n - floor(log2 p) + 1, minimum "
                    "slack " + std::to_string(worst_slack)};
}

struct AggregateRun {
  bool ran = false;
  mpz_class oracle, naive, freq;
  OpCounts naive_ops, freq_ops;
  std::uint64_t bound = 0;
  double naive_s = 0, freq_s = 0;
};

// Shared by the equivalence and cost criteria.
AggregateRun& aggregate_run(const Shared& s) {
  static AggregateRun run;
  if (run.ran) return run;
  const auto vals = data::gen_random(32, kAggregateRows, kSeed);
  const auto ctx = IncheContext::build(s.paillier, 32, kSpeedupPivots);
  std::vector<inche::Ciphertext> cts;
  cts.reserve(vals.size());
  for (Plaintext v : vals) cts.push_back(inche::inche_encrypt(ctx, v));

  // Brute-force oracle.
  run.oracle = plain_sum(vals);

  OpCounts before = ctx.counts();
  auto t0 = Clock::now();
  const auto naive = inche::naive_sum(ctx, cts);
  run.naive_s = seconds_since(t0);
  run.naive_ops = ctx.counts() - before;

  t0 = Clock::now();
  inche::FrequencyAccumulator acc(ctx);
  acc.accumulate(ctx, vals);
  before = ctx.counts();
  const auto freq = inche::finalize_sum(acc, ctx);
  run.freq_s = seconds_since(t0);
  run.freq_ops = ctx.counts() - before;

  run.naive = he::decrypt(s.paillier, naive);
  run.freq = he::decrypt(s.paillier, freq);
  run.bound = 2 * (ctx.pivots().size() +
                   inche::ceil_log2(ctx.pivots().delta_p()));
  run.ran = true;
  return run;
}

Outcome aggregation_equivalence(const Shared& s) {
  const auto& r = aggregate_run(s);
  const bool ok = r.naive == r.oracle && r.freq == r.oracle;
  return {ok, "rows=" + std::to_string(kAggregateRows) + " oracle=" +
                  r.oracle.get_str() + " naive=" + r.naive.get_str() +
                  " finalize=" + r.freq.get_str()};
}

Outcome aggregation_cost(const Shared& s) {
  const auto& r = aggregate_run(s);
  const std::uint64_t freq_ops = r.freq_ops.he_add + r.freq_ops.scalar_mul;
  const std::uint64_t naive_ops = r.naive_ops.he_add + r.naive_ops.scalar_mul;
  const double speedup = r.naive_s / r.freq_s;
  // Op count must also be flat in the row count: a 10x smaller column uses
  // the same bound.
  const bool ok = freq_ops <= r.bound && naive_ops == kAggregateRows - 1 &&
                  r.freq_ops.fresh_encrypt == 0 &&
                  speedup >= kMinAggregateSpeedup;
  std::ostringstream os;
  os << "finalize ops=" << freq_ops << " (bound " << r.bound
     << "), naive ops=" << naive_ops << ", naive " << r.naive_s
     << "s vs frequency " << r.freq_s << "s = " << speedup
     << "x (need >= " << kMinAggregateSpeedup << "x)";
  return {ok, os.str()};
}

bench::BenchConfig paillier_config(bench::Workload w, std::size_t rows) {
  bench::BenchConfig cfg;
  cfg.workload = w;
  cfg.backend = he::Scheme::kPaillier;
  cfg.modulus_bits = kModulusBits;
  cfg.n_bits = 32;
  cfg.source.n_bits = 32;
  cfg.source.row_count = rows;
  cfg.seed = kSeed;
  cfg.pivots = {kSpeedupPivots};
  cfg.repetitions = kTimingReps;
  return cfg;
}

Outcome incremental_speedup(const Shared& s) {
  auto cfg = paillier_config(bench::Workload::kEncrypt, kSpeedupRows);
  const auto vals = data::gen_random(32, kSpeedupRows, kSeed + 1);
  const auto report = bench::run_encrypt_workload(cfg, vals, s.paillier);
  const auto& row = report.rows.at(0);
  const double speedup = row.speedup.value_or(0.0);
  std::ostringstream os;
  os << "batch " << row.baseline->mean_us / 1e3 << "ms vs incremental "
     << row.inche->mean_us / 1e3 << "ms per " << kSpeedupRows
     << " values, speedup " << speedup << "x (need > " << kMinSpeedup << ")";
  return {row.verified && speedup > kMinSpeedup, os.str()};
}

Outcome budget_zero(const Shared& s) {
  auto cfg = paillier_config(bench::Workload::kLimited, kBudgetRows);
  cfg.budgets = {0u};
  cfg.verify_samples = kBudgetRows;  // decrypt every output
  const auto vals = data::gen_random(32, kBudgetRows, kSeed + 2);
  const auto report = bench::run_limited_workload(cfg, vals, s.paillier);
  const auto& row = report.rows.at(0);

  // Oracle: every value with a non-zero offset costs one fresh residual
  // encryption and one he_add onto its pivot.
  const Plaintext dp = Plaintext{1} << (32 - 5);
  std::uint64_t expected = 0;
  for (Plaintext v : vals) expected += (v % dp) != 0;

  const bool ok = row.verified && row.nuance_cached == 0 &&
                  expected == kBudgetRows &&
                  row.verified_outputs == 2 * kBudgetRows &&
                  row.fresh_encrypt_count == expected &&
                  row.he_add_count == expected && row.scalar_mul_count == 0;
  std::ostringstream os;
  os << "fresh=" << row.fresh_encrypt_count << " he_add=" << row.he_add_count
     << " expected " << expected << " of " << kBudgetRows
     << " values, all outputs decrypted; speedup over batch "
     << row.speedup.value_or(0.0) << "x (reported, "
     << (row.speedup.value_or(0.0) > 1.0 ? "above" : "not above") << " 1.0)";
  return {ok, os.str()};
}

Outcome build_overhead(const Shared& s) {
  auto cfg = paillier_config(bench::Workload::kEncrypt, 100);
  cfg.pivots.assign(std::begin(kBuildPivots), std::end(kBuildPivots));
  cfg.repetitions = kBuildReps;
  cfg.mode = bench::Mode::kIncremental;
  const auto vals = data::gen_random(32, 100, kSeed + 3);
  const auto report = bench::run_encrypt_workload(cfg, vals, s.paillier);

  bool ok = true;
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(1);
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const auto& row = report.rows[i];
    // Build and encryption are separate series.
    ok = ok && row.build.samples_us.size() == kBuildReps && row.inche &&
         row.inche->samples_us.size() == kBuildReps;
    if (i > 0) {
      const auto& prev = report.rows[i - 1].build;
      if (row.build.mean_us + row.build.stdev_us + prev.stdev_us <
          prev.mean_us) {
        ok = false;
      }
    }
    os << (i ? ", " : "build ms: ") << "p=" << row.pivots << ":"
       << row.build.mean_us / 1e3 << "+-" << row.build.stdev_us / 1e3;
  }
  os << "; encrypt ms reported separately: "
     << report.rows.front().inche->mean_us / 1e3 << ".."
     << report.rows.back().inche->mean_us / 1e3;
  return {ok, os.str()};
}

Outcome randomization(const Shared& s) {
  const auto ctx = IncheContext::build(s.paillier, 32, kSpeedupPivots);
  const auto r = inche::randomization_smoke_test(ctx, kRandomizationTrials, 7);
  const bool ok = r.fresh_trials == kRandomizationTrials &&
                  r.fresh_all_distinct && r.cache_pairwise_distinct &&
                  r.composed_deterministic;
  std::ostringstream os;
  os << r.fresh_distinct << "/" << r.fresh_trials
     << " fresh ciphertexts distinct; composed ciphertexts "
     << (r.composed_deterministic ? "DETERMINISTIC (flagged)"
                                  : "randomized");
  return {ok, os.str()};
}

// Hand-rolled multiset generator: size, then values, from one seeded stream.
std::vector<Plaintext> random_multiset(std::mt19937_64& rng, unsigned n,
                                       std::size_t max_size) {
  std::vector<Plaintext> out(rng() % (max_size + 1));
  for (auto& v : out) v = n == 64 ? rng() : rng() >> (64 - n);
  return out;
}

Outcome frequency_identity(const Shared& s) {
  std::uint64_t checked = 0;
  auto check = [&](const IncheContext& ctx,
                   const std::vector<Plaintext>& vals) {
    inche::FrequencyAccumulator acc(ctx);
    acc.accumulate(ctx, vals);
    ++checked;
    return acc.weighted_plaintext_sum(ctx) == plain_sum(vals);
  };
  std::mt19937_64 rng(kSeed + 4);
  // Exhaustive for n <= 10: every value on its own, every pair for n <= 6,
  // plus random multisets.
  for (unsigned n = 1; n <= 10; ++n) {
    const Plaintext size = Plaintext{1} << n;
    for (std::uint64_t p : {1u, 2u, 3u, 8u, 32u, 256u, 1024u}) {
      if (p > size) continue;
      const auto ctx = IncheContext::build(s.debug, n, p);
      for (Plaintext a = 0; a < size; ++a) {
        if (!check(ctx, {a})) return {false, "n=" + std::to_string(n)};
        if (n <= 6) {
          for (Plaintext b = a; b < size; ++b) {
            if (!check(ctx, {a, b})) return {false, "n=" + std::to_string(n)};
          }
        }
      }
      for (int t = 0; t < 200; ++t) {
        if (!check(ctx, random_multiset(rng, n, 64))) {
          return {false, "n=" + std::to_string(n)};
        }
      }
    }
  }
  // Sampled above.
  for (unsigned n : {16u, 24u, 32u, 48u, 64u}) {
    for (int c = 0; c < 10; ++c) {
      const std::uint64_t p = 1 + rng() % 4096;
      const auto ctx = IncheContext::build(s.debug, n, p);
      for (int t = 0; t < 100; ++t) {
        if (!check(ctx, random_multiset(rng, n, 1000))) {
          return {false, "n=" + std::to_string(n) + " p=" + std::to_string(p)};
        }
      }
    }
  }
  return {true, std::to_string(checked) + " multisets, exhaustive n<=10, "
                                          "sampled n in {16,24,32,48,64}"};
}

}  // namespace

int main() {
  std::setvbuf(stdout, nullptr, _IOLBF, 0);
  const auto t0 = Clock::now();
  const Shared shared{
      he::keygen({he::Scheme::kPaillier, 32, kModulusBits, kSeed}),
      he::keygen({he::Scheme::kDebug, 64, he::min_modulus_bits(64), kSeed})};

  struct Criterion {
    const char* name;
    std::function<Outcome(const Shared&)> run;
  };
  const Criterion criteria[] = {
      {"exhaustive-correctness", exhaustive_correctness},
      {"op-count-bound", op_count_bound},
      {"aggregation-equivalence", aggregation_equivalence},
      {"aggregation-cost-independence", aggregation_cost},
      {"incremental-speedup", incremental_speedup},
      {"budget-zero", budget_zero},
      {"build-overhead-separation", build_overhead},
      {"probabilistic-encryption", randomization},
      {"frequency-identity", frequency_identity},
  };

  int failed = 0;
  int index = 0;
  for (const auto& c : criteria) {
    ++index;
    const auto start = Clock::now();
    Outcome out;
    try {
      out = c.run(shared);
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s [%d] %s (%.1fs): %s\n", out.ok ? "PASS" : "FAIL", index,
                c.name, seconds_since(start), out.detail.c_str());
    failed += out.ok ? 0 : 1;
  }
  std::printf("%d/%d criteria passed in %.1fs\n", index - failed, index,
              seconds_since(t0));
  return failed == 0 ? 0 : 1;
}
