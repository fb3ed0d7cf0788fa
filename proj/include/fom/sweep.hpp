#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fom/config.hpp"

namespace fom {

struct SweepRow {
  double value = 0.0;
  std::optional<double> lambda1;  // on the experiment's eigen interval
  std::optional<double> nu1;
  std::optional<double> lambda1_s0;
  std::optional<double> lambda1_discrete;  // Richardson value, only when requested
  std::string verdict;
  std::string error;
};

struct SweepOptions {
  int parallel = 1;
  bool discrete = false;
};

/// One row per spec.sweep_values entry, in input order. Each row is an
/// independent copy of the spec with spec.sweep_key overwritten; failures
/// land in the row's error column and the sweep continues.
std::vector<SweepRow> run_sweep(const ExperimentSpec& spec, const SweepOptions& opts = {});

/// Evaluates a single row; exposed for tests.
SweepRow evaluate_row(const ExperimentSpec& spec, double value, bool discrete);

/// Header key,lambda1,nu1,lambda1_s0[,lambda1_discrete,gap],verdict,error.
/// `key` is the column name of the swept parameter.
void write_sweep_csv(std::ostream& out, const std::string& key, const std::vector<SweepRow>& rows,
                     bool discrete = false);

}  // namespace fom
