#pragma once

namespace hwspace {

// Numeric thresholds shared by all modules. The CLI may override any field.
struct Tolerances {
  double riesz_threshold = 1e-8;       // Riesz iff inf > threshold * sup
  double division_guard = 1e-8;        // refuse dual atoms below this inf/sup ratio
  double degenerate_condition = 1e12;  // Gram condition number treated as singular
  double refinement_condition = 1e8;   // iterative refinement above this condition number
  double submultiplicative_slack = 1e-12;
  double stability = 1e-9;             // real-line reference coefficient stability
  double tail_tolerance = 1e-6;        // max accepted truncation bound for callable periodization

  bool operator==(const Tolerances&) const = default;
};

inline const Tolerances& default_tolerances() {
  static const Tolerances kDefaults{};
  return kDefaults;
}

}  // namespace hwspace
