#include "fom/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <ostream>
#include <thread>

#include "fom/classifier.hpp"
#include "fom/eigen_analytic.hpp"
#include "fom/eigen_discrete.hpp"
#include "fom/error.hpp"
#include "fom/report.hpp"

namespace fom {

SweepRow evaluate_row(const ExperimentSpec& base, double value, bool discrete) {
  SweepRow row;
  row.value = value;
  try {
    ExperimentSpec spec = base;
    if (!spec.sweep_key.empty()) set_value(spec, spec.sweep_key, format_double(value));
    const ValidationReport rep = validate_assumptions(spec.params);
    if (!rep.ok()) throw ConfigError("assumptions violated: " + rep.summary());
    row.lambda1 = lambda1_interval(spec.params, spec.l1(), spec.l2()).lambda1;
    const Outcome o = classify(spec.params, spec.initial_data());
    row.nu1 = o.nu1;
    row.lambda1_s0 = o.lambda1_s0;
    row.verdict = to_string(o.verdict);
    if (discrete) {
      row.lambda1_discrete =
          lambda1_richardson(spec.params, spec.l1(), spec.l2(), spec.eigen_N, spec.eigen_dt);
    }
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

std::vector<SweepRow> run_sweep(const ExperimentSpec& spec, const SweepOptions& opts) {
  const std::size_t n = spec.sweep_values.size();
  std::vector<SweepRow> rows(n);
  if (n == 0) return rows;
  if (spec.sweep_key.empty()) throw ConfigError("sweep: sweep.key is not set");
  const auto keys = numeric_keys();
  if (std::find(keys.begin(), keys.end(), spec.sweep_key) == keys.end()) {
    throw ConfigError("sweep: '" + spec.sweep_key + "' is not a numeric key");
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      rows[i] = evaluate_row(spec, spec.sweep_values[i], opts.discrete);
    }
  };
  const std::size_t workers =
      std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, opts.parallel)));
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  return rows;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string opt(const std::optional<double>& v) { return v ? format_double(*v) : ""; }

}  // namespace

void write_sweep_csv(std::ostream& out, const std::string& key, const std::vector<SweepRow>& rows,
                     bool discrete) {
  out << csv_field(key.empty() ? "value" : key) << ",lambda1,nu1,lambda1_s0";
  if (discrete) out << ",lambda1_discrete,gap";
  out << ",verdict,error\n";
  for (const SweepRow& r : rows) {
    out << format_double(r.value) << ',' << opt(r.lambda1) << ',' << opt(r.nu1) << ','
        << opt(r.lambda1_s0);
    if (discrete) {
      std::optional<double> gap;
      if (r.lambda1 && r.lambda1_discrete) gap = std::abs(*r.lambda1 - *r.lambda1_discrete);
      out << ',' << opt(r.lambda1_discrete) << ',' << opt(gap);
    }
    out << ',' << r.verdict << ',' << csv_field(r.error) << "\n";
  }
}

}  // namespace fom
