#pragma once

#include <optional>
#include <string>
#include <vector>

namespace fom {

enum class Verdict { Spreading, Vanishing, ThresholdRegime, Undecided };

const char* to_string(Verdict v);

/// Verdict plus the numbers it was derived from.
struct Outcome {
  Verdict verdict = Verdict::Undecided;

  std::optional<double> nu1;
  std::optional<double> lambda1_s0;
  /// lambda1 on the last simulated interval (r(t), s(t)).
  std::optional<double> lambda1_front;
  std::optional<double> mu_star_lo;
  std::optional<double> mu_star_hi;

  // Simulation evidence, when a trajectory was involved.
  std::optional<double> t_end;
  std::optional<double> r_end;
  std::optional<double> s_end;
  std::optional<double> sup_u_end;
  std::optional<double> sup_v_end;

  std::vector<std::string> notes;
};

}  // namespace fom
