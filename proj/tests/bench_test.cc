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

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "inche/errors.hpp"

namespace inche::bench {
namespace {

BenchConfig debug_config(Workload w, std::size_t rows, unsigned n_bits = 32) {
  BenchConfig cfg;
  cfg.workload = w;
  cfg.backend = he::Scheme::kDebug;
  cfg.n_bits = n_bits;
  cfg.modulus_bits = he::min_modulus_bits(n_bits);
  cfg.source.kind = data::SourceKind::kRandom;
  cfg.source.n_bits = n_bits;
  cfg.source.row_count = rows;
  cfg.seed = 17;
  cfg.repetitions = 2;
  return cfg;
}

// Clears everything that depends on the clock.
ReportRow strip_timings(ReportRow row) {
  row.build = {};
  for (auto* s : {&row.baseline, &row.inche}) {
    if (*s) **s = {};
  }
  row.speedup.reset();
  row.baseline_steps_us.assign(row.baseline_steps_us.size(), 0.0);
  row.inche_steps_us.assign(row.inche_steps_us.size(), 0.0);
  row.inche_finalize_us = 0;
  row.worker_us.assign(row.worker_us.size(), 0.0);
  return row;
}

TEST(ValidateTest, RejectsInconsistentConfigs) {
  auto cfg = debug_config(Workload::kEncrypt, 10);
  EXPECT_NO_THROW(validate(cfg));

  auto bad = cfg;
  bad.pivots = {0};
  EXPECT_THROW(validate(bad), InvalidArgument);
  bad = cfg;
  bad.n_bits = bad.source.n_bits = 4;
  bad.pivots = {17};
  EXPECT_THROW(validate(bad), InvalidArgument);
  bad = cfg;
  bad.pivots.clear();
  EXPECT_THROW(validate(bad), InvalidArgument);
  bad = cfg;
  bad.repetitions = 0;
  EXPECT_THROW(validate(bad), InvalidArgument);
  bad = cfg;
  bad.step = 0;
  EXPECT_THROW(validate(bad), InvalidArgument);
  bad = cfg;
  bad.modulus_bits = 40;
  EXPECT_THROW(validate(bad), InvalidArgument);
  bad = cfg;
  bad.workload = Workload::kLimited;
  EXPECT_THROW(validate(bad), InvalidArgument);
  bad = cfg;
  bad.workload = Workload::kAggregate;
  bad.budgets = {3u};
  EXPECT_THROW(validate(bad), InvalidArgument);
  bad = cfg;
  bad.n_bits = 65;
  EXPECT_THROW(validate(bad), InvalidArgument);
}

TEST(NamesTest, RoundTrip) {
  for (auto w : {Workload::kEncrypt, Workload::kAggregate, Workload::kLimited}) {
    EXPECT_EQ(workload_from_string(to_string(w)), w);
  }
  for (auto m : {Mode::kBatch, Mode::kIncremental, Mode::kBoth}) {
    EXPECT_EQ(mode_from_string(to_string(m)), m);
  }
  for (auto f : {ReportFormat::kJson, ReportFormat::kCsv}) {
    EXPECT_EQ(format_from_string(to_string(f)), f);
  }
  EXPECT_THROW(workload_from_string("sum"), InvalidArgument);
}

TEST(SummarizeTest, SampleStdev) {
  const auto s = summarize({2, 4, 4, 4, 5, 5, 7, 9});
  EXPECT_DOUBLE_EQ(s.mean_us, 5.0);
  EXPECT_NEAR(s.stdev_us, 2.138089935, 1e-9);
  EXPECT_EQ(summarize({3}).stdev_us, 0.0);
  EXPECT_EQ(summarize({}).mean_us, 0.0);
}

TEST(EncryptWorkloadTest, OneRowPerPivotCount) {
  auto cfg = debug_config(Workload::kEncrypt, 500);
  cfg.pivots = {2, 8, 32, 256};
  const auto report = run_workload(cfg);
  EXPECT_EQ(report.workload, "encrypt");
  EXPECT_EQ(report.row_count, 500u);
  ASSERT_EQ(report.rows.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) {
    const auto& row = report.rows[i];
    EXPECT_EQ(row.pivots, cfg.pivots[i]);
    EXPECT_TRUE(row.verified);
    EXPECT_EQ(row.verified_outputs, 1000u);
    ASSERT_TRUE(row.baseline.has_value());
    ASSERT_TRUE(row.inche.has_value());
    EXPECT_TRUE(row.speedup.has_value());
    EXPECT_EQ(row.build.samples_us.size(), cfg.repetitions);
    EXPECT_EQ(row.inche->samples_us.size(), cfg.repetitions);
    EXPECT_EQ(row.fresh_encrypt_count, 0u);
    EXPECT_LE(row.he_add_count, 500u * row.nuance_full);
  }
  EXPECT_EQ(report.rows[0].nuance_full, 31u);
  EXPECT_EQ(report.rows[3].nuance_full, 24u);
}

TEST(EncryptWorkloadTest, ModesSelectSeries) {
  auto cfg = debug_config(Workload::kEncrypt, 50);
  cfg.mode = Mode::kBatch;
  auto r = run_workload(cfg);
  EXPECT_TRUE(r.rows[0].baseline.has_value());
  EXPECT_FALSE(r.rows[0].inche.has_value());
  EXPECT_FALSE(r.rows[0].speedup.has_value());
  cfg.mode = Mode::kIncremental;
  r = run_workload(cfg);
  EXPECT_FALSE(r.rows[0].baseline.has_value());
  EXPECT_TRUE(r.rows[0].inche.has_value());
}

TEST(EncryptWorkloadTest, PaillierSampledVerification) {
  auto cfg = debug_config(Workload::kEncrypt, 40);
  cfg.backend = he::Scheme::kPaillier;
  cfg.modulus_bits = 256;
  cfg.verify_samples = 5;
  const auto r = run_workload(cfg);
  EXPECT_EQ(r.rows[0].verified_outputs, 10u);
  EXPECT_TRUE(r.rows[0].verified);
}

TEST(AggregateWorkloadTest, StepMarksAndEqualSums) {
  auto cfg = debug_config(Workload::kAggregate, 200000);
  cfg.source.kind = data::SourceKind::kPsize;
  cfg.step = 10000;
  cfg.repetitions = 1;
  const auto report = run_workload(cfg);
  ASSERT_EQ(report.rows.size(), 1u);
  const auto& row = report.rows[0];
  EXPECT_EQ(row.baseline_steps_us.size(), 20u);
  EXPECT_EQ(row.inche_steps_us.size(), 20u);
  for (std::size_t i = 1; i < 20; ++i) {
    EXPECT_GE(row.baseline_steps_us[i], row.baseline_steps_us[i - 1]);
    EXPECT_GE(row.inche_steps_us[i], row.inche_steps_us[i - 1]);
  }
  EXPECT_EQ(row.baseline_sum, row.plaintext_sum);
  EXPECT_EQ(row.inche_sum, row.plaintext_sum);
  EXPECT_EQ(row.baseline_he_add_count, 199999u);
  EXPECT_LE(row.he_add_count + row.scalar_mul_count,
            2 * (row.pivots + row.nuance_full));
  // Average equals sum / rows in lowest terms.
  mpz_class num(row.average_numerator), den(row.average_denominator);
  EXPECT_EQ(num * 200000, mpz_class(row.plaintext_sum) * den);
}

TEST(AggregateWorkloadTest, PartialLastStep) {
  auto cfg = debug_config(Workload::kAggregate, 25, 8);
  cfg.step = 10;
  const auto row = run_workload(cfg).rows.at(0);
  EXPECT_EQ(row.baseline_steps_us.size(), 3u);
  EXPECT_EQ(row.inche_steps_us.size(), 3u);
}

TEST(AggregateWorkloadTest, EmptyColumn) {
  auto cfg = debug_config(Workload::kAggregate, 0);
  const auto row = run_workload(cfg).rows.at(0);
  EXPECT_EQ(row.plaintext_sum, "0");
  EXPECT_EQ(row.baseline_sum, "0");
  EXPECT_EQ(row.inche_sum, "0");
  EXPECT_TRUE(row.baseline_steps_us.empty());
  EXPECT_TRUE(row.inche_steps_us.empty());
  EXPECT_TRUE(row.average_numerator.empty());
}

TEST(AggregateWorkloadTest, ParallelAccumulation) {
  auto cfg = debug_config(Workload::kAggregate, 30000, 16);
  cfg.threads = 3;
  cfg.pivots = {4, 64};
  const auto report = run_workload(cfg);
  ASSERT_EQ(report.rows.size(), 2u);
  for (const auto& row : report.rows) {
    EXPECT_EQ(row.worker_us.size(), 3u);
    EXPECT_EQ(row.inche_sum, row.plaintext_sum);
  }
}

TEST(LimitedWorkloadTest, BudgetSweep) {
  auto cfg = debug_config(Workload::kLimited, 400);
  cfg.budgets = {0u, 1u, 2u, 4u, std::nullopt};
  const auto report = run_workload(cfg);
  ASSERT_EQ(report.rows.size(), 5u);

  const auto& zero = report.rows[0];
  EXPECT_EQ(zero.nuance_cached, 0u);
  EXPECT_EQ(zero.fresh_encrypt_count, 400u);
  EXPECT_EQ(zero.he_add_count, 400u);

  for (std::size_t i = 1; i < report.rows.size(); ++i) {
    EXPECT_LE(report.rows[i].fresh_encrypt_count,
              report.rows[i - 1].fresh_encrypt_count);
  }
  const auto& full = report.rows.back();
  EXPECT_FALSE(full.budget.has_value());
  EXPECT_EQ(full.fresh_encrypt_count, 0u);

  auto enc_cfg = cfg;
  enc_cfg.workload = Workload::kEncrypt;
  enc_cfg.budgets.clear();
  const auto enc = run_workload(enc_cfg).rows.at(0);
  EXPECT_EQ(full.he_add_count, enc.he_add_count);
  EXPECT_EQ(full.fresh_encrypt_count, enc.fresh_encrypt_count);
}

TEST(ReportTest, JsonRoundTrip) {
  auto cfg = debug_config(Workload::kAggregate, 300, 12);
  cfg.pivots = {2, 16};
  const auto report = run_workload(cfg);
  EXPECT_EQ(report_from_json(to_json(report)), report);

  auto lim = debug_config(Workload::kLimited, 50);
  lim.budgets = {0u, std::nullopt};
  const auto limited = run_workload(lim);
  EXPECT_EQ(report_from_json(to_json(limited)), limited);

  const auto path = std::filesystem::temp_directory_path() /
                    "inche_bench_test_report.json";
  write_report(limited, path, ReportFormat::kJson);
  EXPECT_EQ(read_report_json(path), limited);
  std::filesystem::remove(path);
}

TEST(ReportTest, JsonRejectsGarbage) {
  EXPECT_THROW(report_from_json("{"), DataError);
  EXPECT_THROW(report_from_json("{\"schema_version\": 99}"), DataError);
}

TEST(ReportTest, CsvHasOneLinePerRow) {
  auto cfg = debug_config(Workload::kEncrypt, 20);
  cfg.pivots = {1, 2, 4};
  const std::string csv = to_csv(run_workload(cfg));
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
  EXPECT_EQ(csv.rfind("workload,requested_pivots,pivots,", 0), 0u);
  EXPECT_NE(summary(run_workload(cfg)).find("p=4"), std::string::npos);
}

TEST(ReportTest, SeededRunsAgreeOutsideTimings) {
  auto cfg = debug_config(Workload::kLimited, 200);
  cfg.budgets = {0u, 3u, std::nullopt};
  const auto a = run_workload(cfg);
  const auto b = run_workload(cfg);
  EXPECT_EQ(a.config, b.config);
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(strip_timings(a.rows[i]), strip_timings(b.rows[i]));
  }
}

}  // namespace
}  // namespace inche::bench
