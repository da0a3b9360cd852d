#pragma once

// Beurling weights on the dual group and the checks the harmonic-space construction
// relies on: submultiplicativity, the Beurling-Domar partial sums, w^{-1} in L^2 and the
// two-sided bound on the annihilator periodization of w^{-2}.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hwspace/group.hpp"

namespace hwspace {

struct PolynomialWeight {
  double s = 1.0;  // (1 + |gamma|)^s
  bool operator==(const PolynomialWeight&) const = default;
};

struct SubexponentialWeight {
  double a = 1.0;      // exp(a |gamma|^delta) (1 + |gamma|)^s
  double delta = 0.5;
  double s = 0.0;
  bool operator==(const SubexponentialWeight&) const = default;
};

struct BoxWeight {
  double omega = 0.5;  // 1 on |gamma| <= omega, +inf outside
  bool operator==(const BoxWeight&) const = default;
};

// Radial table, linear in |gamma|, +inf beyond the last radius.
struct TableWeight {
  std::vector<double> radii;
  std::vector<double> values;
  std::string source;  // path the table was read from, echoed in reports
  bool operator==(const TableWeight&) const = default;
};

class Weight {
 public:
  using Family = std::variant<PolynomialWeight, SubexponentialWeight, BoxWeight, TableWeight>;

  explicit Weight(Family family);

  static Weight polynomial(double s);
  static Weight subexponential(double a, double delta, double s);
  static Weight box(double omega);
  static Weight table(std::vector<double> radii, std::vector<double> values, std::string source = {});
  static Weight table_from_csv(const std::string& path);

  // w as a function of |gamma|; +inf only for band-limited families.
  double eval_radius(double r) const;
  double eval(const Realization& r, std::size_t node) const { return eval_radius(r.radius(node)); }

  // w^{-power}, with 0 wherever w is infinite.
  double inverse_power(double r, double power) const;

  // Box and tables with an infinite extension violate the Beurling hypotheses.
  bool conforming() const;
  const Family& family() const { return family_; }
  std::string spec_string() const;

  bool operator==(const Weight&) const = default;

 private:
  Family family_;
};

// One-sided tail integral int_{gamma}^{inf} w^{-power}(r) dr (radial, real line).
double weight_tail_integral(const Weight& w, double power, double gamma);
// Bound on the Lambda^perp terms beyond the truncation radius:
// 2 (w^{-power}(gamma_max) + alpha int_{gamma_max}^inf w^{-power}); +inf if the decay is
// not monotone past gamma_max.
double periodization_tail_bound(const Weight& w, double power, double gamma_max, double alpha);

struct SubmultiplicativeReport {
  double max_ratio = 0.0;      // max of w(g1+g2) / (w(g1) w(g2))
  std::optional<bool> passes;  // empty when the family is nonconforming
  bool nonconforming = false;
  std::size_t samples = 0;
};

SubmultiplicativeReport check_submultiplicative(const Weight& w, const GroupSpec& g,
                                                std::size_t sample_count, std::uint64_t seed = 1,
                                                double slack = 1e-12);

// A dual point: integer multi-index on cyclic products, a real frequency on the line.
struct DualPoint {
  std::vector<long> index;
  double gamma = 0.0;
};

struct BdPartialSum {
  double value = 0.0;
  double last_increment = 0.0;
  bool infinite = false;
};

BdPartialSum bd_partial_sum(const Weight& w, const GroupSpec& g, const DualPoint& gamma, long terms);

struct InverseWeightNorm {
  double norm = 0.0;        // ||w^{-1}||_{L^2}, including the tail on the real line
  double tail_bound = 0.0;  // contribution of |gamma| > gamma_max to the squared norm
};

// Throws kNotInL2 when w^{-1} is not square integrable on the real line.
InverseWeightNorm inv_weight_l2(const Weight& w, const Realization& r);

struct PeriodizationBounds {
  double a = 0.0;
  double b = 0.0;
  bool bounded_below = false;
  double tail_bound = 0.0;  // added to b for a certified upper bound on the real line
  std::size_t grid_points = 0;
};

// inf/sup over the fundamental-domain grid of c * sum_{chi in Lambda^perp} w^{-2}(gamma + chi),
// with c the dual cell weight (1/N) on cyclic groups and 1 on the real line.
PeriodizationBounds periodization_bounds(const Weight& w, const Realization& r,
                                         const LatticeSpec& lat, double threshold = 1e-8);

// Weight applied to each periodization term: 1/N on cyclic groups, 1 on the real line.
double periodization_scale(const Realization& r);

}  // namespace hwspace
