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

#include <fstream>
#include <iomanip>
#include <sstream>

#include "inche/bench.hpp"
#include "inche/errors.hpp"
#include "json.hpp"

namespace inche::bench {

using nlohmann::ordered_json;

namespace {

ordered_json series_json(const TimingSeries& s) {
  return ordered_json{{"samples_us", s.samples_us},
                      {"mean_us", s.mean_us},
                      {"stdev_us", s.stdev_us}};
}

TimingSeries series_from(const ordered_json& j) {
  TimingSeries s;
  j.at("samples_us").get_to(s.samples_us);
  j.at("mean_us").get_to(s.mean_us);
  j.at("stdev_us").get_to(s.stdev_us);
  return s;
}

template <typename T>
ordered_json opt_json(const std::optional<T>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

template <typename T>
std::optional<T> opt_from(const ordered_json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<T>();
}

ordered_json row_json(const ReportRow& r) {
  ordered_json j;
  j["requested_pivots"] = r.requested_pivots;
  j["pivots"] = r.pivots;
  j["delta_p"] = r.delta_p;
  j["nuance_full"] = r.nuance_full;
  j["nuance_cached"] = r.nuance_cached;
  j["budget"] = opt_json(r.budget);
  j["build"] = series_json(r.build);
  j["baseline"] = r.baseline ? series_json(*r.baseline) : ordered_json(nullptr);
  j["inche"] = r.inche ? series_json(*r.inche) : ordered_json(nullptr);
  j["speedup"] = opt_json(r.speedup);
  j["he_add_count"] = r.he_add_count;
  j["scalar_mul_count"] = r.scalar_mul_count;
  j["fresh_encrypt_count"] = r.fresh_encrypt_count;
  j["baseline_he_add_count"] = r.baseline_he_add_count;
  j["verified"] = r.verified;
  j["verified_outputs"] = r.verified_outputs;
  j["baseline_steps_us"] = r.baseline_steps_us;
  j["inche_steps_us"] = r.inche_steps_us;
  j["inche_finalize_us"] = r.inche_finalize_us;
  j["worker_us"] = r.worker_us;
  j["plaintext_sum"] = r.plaintext_sum;
  j["baseline_sum"] = r.baseline_sum;
  j["inche_sum"] = r.inche_sum;
  j["average_numerator"] = r.average_numerator;
  j["average_denominator"] = r.average_denominator;
  return j;
}

ReportRow row_from(const ordered_json& j) {
  ReportRow r;
  j.at("requested_pivots").get_to(r.requested_pivots);
  j.at("pivots").get_to(r.pivots);
  j.at("delta_p").get_to(r.delta_p);
  j.at("nuance_full").get_to(r.nuance_full);
  j.at("nuance_cached").get_to(r.nuance_cached);
  r.budget = opt_from<unsigned>(j.at("budget"));
  r.build = series_from(j.at("build"));
  if (!j.at("baseline").is_null()) r.baseline = series_from(j.at("baseline"));
  if (!j.at("inche").is_null()) r.inche = series_from(j.at("inche"));
  r.speedup = opt_from<double>(j.at("speedup"));
  j.at("he_add_count").get_to(r.he_add_count);
  j.at("scalar_mul_count").get_to(r.scalar_mul_count);
  j.at("fresh_encrypt_count").get_to(r.fresh_encrypt_count);
  j.at("baseline_he_add_count").get_to(r.baseline_he_add_count);
  j.at("verified").get_to(r.verified);
  j.at("verified_outputs").get_to(r.verified_outputs);
  j.at("baseline_steps_us").get_to(r.baseline_steps_us);
  j.at("inche_steps_us").get_to(r.inche_steps_us);
  j.at("inche_finalize_us").get_to(r.inche_finalize_us);
  j.at("worker_us").get_to(r.worker_us);
  j.at("plaintext_sum").get_to(r.plaintext_sum);
  j.at("baseline_sum").get_to(r.baseline_sum);
  j.at("inche_sum").get_to(r.inche_sum);
  j.at("average_numerator").get_to(r.average_numerator);
  j.at("average_denominator").get_to(r.average_denominator);
  return r;
}

ordered_json config_json(const ConfigEcho& c) {
  ordered_json j;
  j["workload"] = c.workload;
  j["source"] = c.source;
  j["n_bits"] = c.n_bits;
  j["rows"] = c.rows;
  j["pivots"] = c.pivots;
  j["budgets"] = c.budgets;
  j["mode"] = c.mode;
  j["repetitions"] = c.repetitions;
  j["backend"] = c.backend;
  j["modulus_bits"] = c.modulus_bits;
  j["seed"] = opt_json(c.seed);
  j["step"] = c.step;
  j["threads"] = c.threads;
  return j;
}

ConfigEcho config_from(const ordered_json& j) {
  ConfigEcho c;
  j.at("workload").get_to(c.workload);
  j.at("source").get_to(c.source);
  j.at("n_bits").get_to(c.n_bits);
  j.at("rows").get_to(c.rows);
  j.at("pivots").get_to(c.pivots);
  j.at("budgets").get_to(c.budgets);
  j.at("mode").get_to(c.mode);
  j.at("repetitions").get_to(c.repetitions);
  j.at("backend").get_to(c.backend);
  j.at("modulus_bits").get_to(c.modulus_bits);
  c.seed = opt_from<std::uint64_t>(j.at("seed"));
  j.at("step").get_to(c.step);
  j.at("threads").get_to(c.threads);
  return c;
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace

std::string to_json(const BenchReport& report) {
  ordered_json j;
  j["schema_version"] = report.schema_version;
  j["workload"] = report.workload;
  j["config"] = config_json(report.config);
  j["row_count"] = report.row_count;
  ordered_json rows = ordered_json::array();
  for (const auto& r : report.rows) rows.push_back(row_json(r));
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

BenchReport report_from_json(std::string_view text) {
  try {
    const auto j = ordered_json::parse(text);
    BenchReport report;
    j.at("schema_version").get_to(report.schema_version);
    if (report.schema_version != kReportSchemaVersion) {
      throw DataError("unsupported report schema_version " +
                      std::to_string(report.schema_version));
    }
    j.at("workload").get_to(report.workload);
    report.config = config_from(j.at("config"));
    j.at("row_count").get_to(report.row_count);
    for (const auto& r : j.at("rows")) report.rows.push_back(row_from(r));
    return report;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed report: ") + e.what());
  }
}

std::string to_csv(const BenchReport& report) {
  std::ostringstream os;
  os << "workload,requested_pivots,pivots,delta_p,nuance_full,nuance_cached,"
        "budget,build_mean_us,build_stdev_us,baseline_mean_us,"
        "baseline_stdev_us,inche_mean_us,inche_stdev_us,speedup,"
        "he_add_count,scalar_mul_count,fresh_encrypt_count,"
        "baseline_he_add_count,verified,plaintext_sum,inche_sum\n";
  for (const auto& r : report.rows) {
    os << report.workload << ',' << r.requested_pivots << ',' << r.pivots
       << ',' << r.delta_p << ',' << r.nuance_full << ',' << r.nuance_cached
       << ',' << (r.budget ? std::to_string(*r.budget) : "") << ','
       << fmt(r.build.mean_us) << ',' << fmt(r.build.stdev_us) << ','
       << (r.baseline ? fmt(r.baseline->mean_us) : "") << ','
       << (r.baseline ? fmt(r.baseline->stdev_us) : "") << ','
       << (r.inche ? fmt(r.inche->mean_us) : "") << ','
       << (r.inche ? fmt(r.inche->stdev_us) : "") << ','
       << (r.speedup ? fmt(*r.speedup) : "") << ',' << r.he_add_count << ','
       << r.scalar_mul_count << ',' << r.fresh_encrypt_count << ','
       << r.baseline_he_add_count << ',' << (r.verified ? "true" : "false")
       << ',' << r.plaintext_sum << ',' << r.inche_sum << '\n';
  }
  return os.str();
}

void write_report(const BenchReport& report, const std::filesystem::path& path,
                  ReportFormat format) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot open '" + path.string() + "' for writing");
  out << (format == ReportFormat::kJson ? to_json(report) : to_csv(report));
  out.flush();
  if (!out) throw DataError("failed writing '" + path.string() + "'");
}

BenchReport read_report_json(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return report_from_json(buf.str());
}

}  // namespace inche::bench
