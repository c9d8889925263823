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

#include "inche/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <thread>

#include "inche/aggregate.hpp"
#include "inche/errors.hpp"

namespace inche::bench {

std::string_view to_string(Workload w) {
  switch (w) {
    case Workload::kEncrypt:
      return "encrypt";
    case Workload::kAggregate:
      return "aggregate";
    case Workload::kLimited:
      return "limited";
  }
  return "unknown";
}

std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::kBatch:
      return "batch";
    case Mode::kIncremental:
      return "incremental";
    case Mode::kBoth:
      return "both";
  }
  return "unknown";
}

std::string_view to_string(ReportFormat f) {
  return f == ReportFormat::kJson ? "json" : "csv";
}

Workload workload_from_string(std::string_view s) {
  if (s == "encrypt") return Workload::kEncrypt;
  if (s == "aggregate") return Workload::kAggregate;
  if (s == "limited") return Workload::kLimited;
  throw InvalidArgument("unknown workload '" + std::string(s) + "'");
}

Mode mode_from_string(std::string_view s) {
  if (s == "batch") return Mode::kBatch;
  if (s == "incremental") return Mode::kIncremental;
  if (s == "both") return Mode::kBoth;
  throw InvalidArgument("unknown mode '" + std::string(s) + "'");
}

ReportFormat format_from_string(std::string_view s) {
  if (s == "json") return ReportFormat::kJson;
  if (s == "csv") return ReportFormat::kCsv;
  throw InvalidArgument("unknown report format '" + std::string(s) + "'");
}

void validate(const BenchConfig& cfg) {
  if (cfg.n_bits == 0 || cfg.n_bits > 64) {
    throw InvalidArgument("n_bits must be in [1, 64]");
  }
  if (cfg.source.n_bits != cfg.n_bits) {
    throw InvalidArgument("source n_bits differs from benchmark n_bits");
  }
  if (cfg.repetitions == 0) throw InvalidArgument("repetitions must be >= 1");
  if (cfg.pivots.empty()) throw InvalidArgument("at least one pivot count");
  for (auto p : cfg.pivots) {
    if (p == 0 || Wide{p} > domain_size(cfg.n_bits)) {
      throw InvalidArgument("pivot count " + std::to_string(p) +
                            " outside [1, 2^n_bits]");
    }
  }
  if (cfg.step == 0) throw InvalidArgument("step must be >= 1");
  if (cfg.threads == 0) throw InvalidArgument("threads must be >= 1");
  if (cfg.workload == Workload::kLimited && cfg.budgets.empty()) {
    throw InvalidArgument("limited workload needs at least one budget");
  }
  if (cfg.workload == Workload::kAggregate &&
      std::any_of(cfg.budgets.begin(), cfg.budgets.end(),
                  [](const auto& b) { return b.has_value(); })) {
    throw InvalidArgument("aggregate workload requires a full nuance cache");
  }
  if (cfg.modulus_bits < he::min_modulus_bits(cfg.n_bits)) {
    throw InvalidArgument("modulus_bits too small for n_bits");
  }
}

TimingSeries summarize(std::vector<double> samples_us) {
  TimingSeries s;
  s.samples_us = std::move(samples_us);
  const auto n = s.samples_us.size();
  if (n == 0) return s;
  s.mean_us =
      std::accumulate(s.samples_us.begin(), s.samples_us.end(), 0.0) / n;
  if (n > 1) {
    double ss = 0;
    for (double x : s.samples_us) ss += (x - s.mean_us) * (x - s.mean_us);
    s.stdev_us = std::sqrt(ss / static_cast<double>(n - 1));
  }
  return s;
}

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_us(Clock::time_point since) {
  return std::chrono::duration<double, std::micro>(Clock::now() - since)
      .count();
}

template <typename Pass>
TimingSeries measure(unsigned reps, Pass&& pass) {
  pass();  // warm-up, discarded
  std::vector<double> samples;
  samples.reserve(reps);
  for (unsigned r = 0; r < reps; ++r) {
    const auto t0 = Clock::now();
    pass();
    samples.push_back(elapsed_us(t0));
  }
  return summarize(std::move(samples));
}

bool has_batch(Mode m) { return m != Mode::kIncremental; }
bool has_incremental(Mode m) { return m != Mode::kBatch; }

std::string budget_label(const std::optional<unsigned>& b) {
  return b ? std::to_string(*b) : "full";
}

ConfigEcho echo(const BenchConfig& cfg, std::size_t rows) {
  ConfigEcho e;
  e.workload = std::string(to_string(cfg.workload));
  e.source = std::string(data::to_string(cfg.source.kind));
  e.n_bits = cfg.n_bits;
  e.rows = rows;
  e.pivots = cfg.pivots;
  for (const auto& b : cfg.budgets) e.budgets.push_back(budget_label(b));
  e.mode = std::string(to_string(cfg.mode));
  e.repetitions = cfg.repetitions;
  e.backend = std::string(he::to_string(cfg.backend));
  e.modulus_bits = cfg.modulus_bits;
  e.seed = cfg.seed;
  e.step = cfg.step;
  e.threads = cfg.threads;
  return e;
}

BenchReport make_report(const BenchConfig& cfg, std::size_t rows) {
  BenchReport r;
  r.workload = std::string(to_string(cfg.workload));
  r.config = echo(cfg, rows);
  r.row_count = rows;
  return r;
}

he::SecretKey make_key(const BenchConfig& cfg) {
  he::SchemeParams params;
  params.scheme = cfg.backend;
  params.n_bits = cfg.n_bits;
  params.modulus_bits = cfg.modulus_bits;
  params.seed = cfg.seed;
  return he::keygen(params);
}

std::vector<Plaintext> load_values(const BenchConfig& cfg) {
  data::ColumnSource src = cfg.source;
  src.n_bits = cfg.n_bits;
  if (cfg.seed) src.seed = *cfg.seed;
  return data::materialize(src);
}

// Indices whose decryptions are checked.
std::vector<std::size_t> sample_indices(const BenchConfig& cfg,
                                        std::size_t n) {
  std::vector<std::size_t> idx;
  if (n == 0) return idx;
  if (cfg.backend == he::Scheme::kDebug || cfg.verify_samples >= n) {
    idx.resize(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    return idx;
  }
  const std::size_t k = std::max<std::size_t>(cfg.verify_samples, 1);
  for (std::size_t s = 0; s < k; ++s) idx.push_back(s * (n - 1) / std::max<std::size_t>(k - 1, 1));
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  return idx;
}

std::uint64_t verify_outputs(const BenchConfig& cfg, const he::SecretKey& key,
                             const std::vector<Plaintext>& values,
                             const std::vector<Ciphertext>& outputs,
                             std::string_view what) {
  const auto idx = sample_indices(cfg, values.size());
  for (std::size_t i : idx) {
    const BigInt got = he::decrypt(key, outputs[i]);
    if (got != BigInt(static_cast<unsigned long>(values[i]))) {
      throw CorrectnessError(std::string(what) + ": output " +
                             std::to_string(i) + " decrypts to " +
                             got.get_str() + ", expected " +
                             std::to_string(values[i]));
    }
  }
  return idx.size();
}

// Builds reps + 1 contexts, discards the first build time and returns the
// last context.
IncheContext timed_build(const BenchConfig& cfg, const he::SecretKey& key,
                         std::uint64_t p, std::optional<unsigned> budget,
                         TimingSeries& build) {
  std::vector<double> samples;
  std::optional<IncheContext> ctx;
  for (unsigned r = 0; r <= cfg.repetitions; ++r) {
    ctx.emplace(IncheContext::build(key, cfg.n_bits, p, budget));
    if (r > 0) {
      samples.push_back(static_cast<double>(ctx->build_time().count()) / 1e3);
    }
  }
  build = summarize(std::move(samples));
  return std::move(*ctx);
}

void describe_context(const IncheContext& ctx, ReportRow& row) {
  row.requested_pivots = ctx.requested_pivots();
  row.pivots = ctx.pivots().size();
  row.delta_p = inche::to_string(ctx.pivots().delta_p());
  row.nuance_full = ctx.nuances().full_size();
  row.nuance_cached = ctx.nuances().size();
  row.budget = ctx.nuances().budget();
}

void set_speedup(ReportRow& row) {
  if (row.baseline && row.inche && row.inche->mean_us > 0) {
    row.speedup = row.baseline->mean_us / row.inche->mean_us;
  }
}

struct BatchResult {
  std::optional<TimingSeries> timing;
  std::uint64_t verified = 0;
};

BatchResult run_batch(const BenchConfig& cfg, const he::SecretKey& key,
                      const std::vector<Plaintext>& values) {
  BatchResult out;
  if (!has_batch(cfg.mode)) return out;
  std::vector<Ciphertext> cts(values.size());
  out.timing = measure(cfg.repetitions, [&] {
    for (std::size_t i = 0; i < values.size(); ++i) {
      cts[i] = he::encrypt(key, values[i]);
    }
  });
  out.verified = verify_outputs(cfg, key, values, cts, "batch encryption");
  return out;
}

// Composition pass timing plus the op counts of one measured pass.
void run_composition(const BenchConfig& cfg, const IncheContext& ctx,
                     const std::vector<Plaintext>& values, bool budgeted,
                     ReportRow& row) {
  std::vector<Ciphertext> cts(values.size());
  auto pass = [&] {
    for (std::size_t i = 0; i < values.size(); ++i) {
      cts[i] = budgeted ? inche_encrypt_budgeted(ctx, values[i])
                        : inche_encrypt(ctx, values[i]);
    }
  };
  pass();  // warm-up
  std::vector<double> samples;
  for (unsigned r = 0; r < cfg.repetitions; ++r) {
    const OpCounts before = ctx.counts();
    const auto t0 = Clock::now();
    pass();
    samples.push_back(elapsed_us(t0));
    if (r == 0) {
      const OpCounts d = ctx.counts() - before;
      row.he_add_count = d.he_add;
      row.scalar_mul_count = d.scalar_mul;
      row.fresh_encrypt_count = d.fresh_encrypt;
    }
  }
  row.inche = summarize(std::move(samples));
  row.verified_outputs += verify_outputs(
      cfg, ctx.key(), values, cts,
      budgeted ? "budgeted composition" : "composition");
}

}  // namespace

BenchReport run_encrypt_workload(const BenchConfig& cfg,
                                 const std::vector<Plaintext>& values,
                                 const he::SecretKey& key) {
  validate(cfg);
  BenchReport report = make_report(cfg, values.size());
  const BatchResult batch = run_batch(cfg, key, values);
  const std::optional<unsigned> budget =
      cfg.budgets.empty() ? std::nullopt : cfg.budgets.front();

  for (std::uint64_t p : cfg.pivots) {
    ReportRow row;
    IncheContext ctx = timed_build(cfg, key, p, budget, row.build);
    describe_context(ctx, row);
    row.baseline = batch.timing;
    row.verified_outputs = batch.verified;
    if (has_incremental(cfg.mode)) {
      run_composition(cfg, ctx, values, /*budgeted=*/false, row);
    }
    set_speedup(row);
    row.verified = true;
    report.rows.push_back(std::move(row));
  }
  return report;
}

BenchReport run_limited_workload(const BenchConfig& cfg,
                                 const std::vector<Plaintext>& values,
                                 const he::SecretKey& key) {
  validate(cfg);
  BenchReport report = make_report(cfg, values.size());
  const BatchResult batch = run_batch(cfg, key, values);
  const std::uint64_t p = cfg.pivots.front();

  for (const auto& budget : cfg.budgets) {
    ReportRow row;
    IncheContext ctx = timed_build(cfg, key, p, budget, row.build);
    describe_context(ctx, row);
    row.baseline = batch.timing;
    row.verified_outputs = batch.verified;
    if (has_incremental(cfg.mode)) {
      run_composition(cfg, ctx, values, /*budgeted=*/true, row);
    }
    set_speedup(row);
    row.verified = true;
    report.rows.push_back(std::move(row));
  }
  return report;
}

namespace {

// Records cumulative time at every step boundary and at the last row.
struct StepTimer {
  StepTimer(std::size_t step, std::size_t total)
      : step(step), total(total), start(Clock::now()) {}

  void tick(std::size_t done) {
    if (done % step == 0 || done == total) marks.push_back(elapsed_us(start));
  }

  std::size_t step;
  std::size_t total;
  Clock::time_point start;
  std::vector<double> marks;
};

std::vector<double> mean_steps(const std::vector<std::vector<double>>& runs) {
  if (runs.empty()) return {};
  std::vector<double> out(runs.front().size(), 0.0);
  for (const auto& r : runs) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += r[i];
  }
  for (double& v : out) v /= static_cast<double>(runs.size());
  return out;
}

FrequencyAccumulator parallel_accumulate(const IncheContext& ctx,
                                         const std::vector<Plaintext>& values,
                                         unsigned threads,
                                         std::vector<double>& worker_us) {
  std::vector<FrequencyAccumulator> parts(threads, FrequencyAccumulator(ctx));
  worker_us.assign(threads, 0.0);
  std::vector<std::thread> pool;
  const std::size_t n = values.size();
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      const std::size_t lo = n * t / threads;
      const std::size_t hi = n * (t + 1) / threads;
      const auto t0 = Clock::now();
      parts[t].accumulate(
          ctx, std::span<const Plaintext>(values.data() + lo, hi - lo));
      worker_us[t] = elapsed_us(t0);
    });
  }
  for (auto& th : pool) th.join();
  FrequencyAccumulator merged(ctx);
  for (const auto& part : parts) merged.merge(part);
  return merged;
}

}  // namespace

BenchReport run_aggregate_workload(const BenchConfig& cfg,
                                   const std::vector<Plaintext>& values,
                                   const he::SecretKey& key) {
  validate(cfg);
  BenchReport report = make_report(cfg, values.size());
  const std::size_t n = values.size();

  BigInt plain_sum = 0;
  for (Plaintext v : values) plain_sum += static_cast<unsigned long>(v);
  const BigInt expected = plain_sum % key.plaintext_modulus();

  for (std::uint64_t p : cfg.pivots) {
    ReportRow row;
    IncheContext ctx = timed_build(cfg, key, p, std::nullopt, row.build);
    describe_context(ctx, row);
    row.plaintext_sum = plain_sum.get_str();

    std::vector<Ciphertext> cts(n);
    for (std::size_t i = 0; i < n; ++i) cts[i] = inche_encrypt(ctx, values[i]);

    // he_add fold.
    if (has_batch(cfg.mode)) {
      std::vector<std::vector<double>> step_runs;
      std::vector<double> totals;
      Ciphertext result;
      for (unsigned r = 0; r <= cfg.repetitions; ++r) {
        const OpCounts before = ctx.counts();
        StepTimer timer(cfg.step, n);
        if (n == 0) {
          result = naive_sum(ctx, {});
        } else {
          result = cts.front();
          timer.tick(1);
          for (std::size_t i = 1; i < n; ++i) {
            he::he_add_inplace(key, result, cts[i]);
            timer.tick(i + 1);
          }
          ctx.counters().add_he_add(n - 1);
        }
        const double total = elapsed_us(timer.start);
        if (r == 0) continue;
        if (r == 1) row.baseline_he_add_count = (ctx.counts() - before).he_add;
        totals.push_back(total);
        step_runs.push_back(std::move(timer.marks));
      }
      row.baseline = summarize(std::move(totals));
      row.baseline_steps_us = mean_steps(step_runs);
      const BigInt got = he::decrypt(key, result);
      row.baseline_sum = got.get_str();
      if (got != expected) {
        throw CorrectnessError("he_add fold decrypts to " + got.get_str() +
                               ", expected " + expected.get_str());
      }
    }

    // Frequency-weighted sum.
    if (has_incremental(cfg.mode)) {
      std::vector<std::vector<double>> step_runs;
      std::vector<double> totals;
      std::vector<double> finalize_times;
      Ciphertext result;
      for (unsigned r = 0; r <= cfg.repetitions; ++r) {
        StepTimer timer(cfg.step, n);
        FrequencyAccumulator acc(ctx);
        if (cfg.threads > 1) {
          acc = parallel_accumulate(ctx, values, cfg.threads, row.worker_us);
        } else {
          for (std::size_t i = 0; i < n; ++i) {
            acc.accumulate(ctx, values[i]);
            timer.tick(i + 1);
          }
        }
        const OpCounts before = ctx.counts();
        const auto f0 = Clock::now();
        result = finalize_sum(acc, ctx);
        const double finalize = elapsed_us(f0);
        const double total = elapsed_us(timer.start);
        if (r == 0) continue;
        if (r == 1) {
          const OpCounts d = ctx.counts() - before;
          row.he_add_count = d.he_add;
          row.scalar_mul_count = d.scalar_mul;
          row.fresh_encrypt_count = d.fresh_encrypt;
        }
        totals.push_back(total);
        finalize_times.push_back(finalize);
        step_runs.push_back(std::move(timer.marks));
      }
      row.inche = summarize(std::move(totals));
      row.inche_steps_us = mean_steps(step_runs);
      row.inche_finalize_us = summarize(std::move(finalize_times)).mean_us;
      const BigInt got = he::decrypt(key, result);
      row.inche_sum = got.get_str();
      if (got != expected) {
        throw CorrectnessError("frequency-weighted sum decrypts to " +
                               got.get_str() + ", expected " +
                               expected.get_str());
      }
      if (n > 0) {
        const Rational avg = avg_from_sum(got, n);
        row.average_numerator = avg.numerator.get_str();
        row.average_denominator = avg.denominator.get_str();
      }
    }

    set_speedup(row);
    row.verified = true;
    row.verified_outputs = (has_batch(cfg.mode) ? 1 : 0) +
                           (has_incremental(cfg.mode) ? 1 : 0);
    report.rows.push_back(std::move(row));
  }
  return report;
}

BenchReport run_encrypt_workload(const BenchConfig& cfg) {
  validate(cfg);
  return run_encrypt_workload(cfg, load_values(cfg), make_key(cfg));
}

BenchReport run_aggregate_workload(const BenchConfig& cfg) {
  validate(cfg);
  return run_aggregate_workload(cfg, load_values(cfg), make_key(cfg));
}

BenchReport run_limited_workload(const BenchConfig& cfg) {
  validate(cfg);
  return run_limited_workload(cfg, load_values(cfg), make_key(cfg));
}

BenchReport run_workload(const BenchConfig& cfg) {
  switch (cfg.workload) {
    case Workload::kEncrypt:
      return run_encrypt_workload(cfg);
    case Workload::kAggregate:
      return run_aggregate_workload(cfg);
    case Workload::kLimited:
      return run_limited_workload(cfg);
  }
  throw InvalidArgument("unknown workload");
}

std::string summary(const BenchReport& report) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(1);
  os << report.workload << ": " << report.row_count << " rows, backend "
     << report.config.backend << ", n_bits " << report.config.n_bits << '\n';
  for (const auto& row : report.rows) {
    os << "  p=" << row.pivots << " dP=" << row.delta_p
       << " nuances=" << row.nuance_cached << '/' << row.nuance_full;
    if (row.budget) os << " budget=" << *row.budget;
    os << " build=" << row.build.mean_us << "us";
    if (row.baseline) {
      os << " baseline=" << row.baseline->mean_us << "us(+-"
         << row.baseline->stdev_us << ")";
    }
    if (row.inche) {
      os << " inche=" << row.inche->mean_us << "us(+-" << row.inche->stdev_us
         << ")";
    }
    if (row.speedup) {
      os << std::setprecision(3) << " speedup=" << *row.speedup << "x"
         << std::setprecision(1);
    }
    os << " he_add=" << row.he_add_count << " scalar_mul="
       << row.scalar_mul_count << " fresh=" << row.fresh_encrypt_count;
    if (!row.inche_sum.empty()) os << " sum=" << row.inche_sum;
    os << '\n';
  }
  return os.str();
}

}  // namespace inche::bench
