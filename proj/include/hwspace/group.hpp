#pragma once

// Concrete locally compact abelian groups: finite cyclic products Z_{N_1} x ... x Z_{N_d}
// (exact) and the real line (truncated dual, Gauss-Legendre panels in frequency).

#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "hwspace/fft.hpp"

namespace hwspace {

using Point = std::vector<double>;

enum class GroupKind { kCyclicProduct, kRealLine };

struct GroupSpec {
  GroupKind kind = GroupKind::kCyclicProduct;

  // Cyclic product.
  std::vector<int> orders;
  double frequency_unit = 1.0;  // scale of |gamma| on the dual grid

  // Real line.
  double gamma_max = 32.0;  // dual truncation radius
  double dgamma = 1.0 / 64;  // dual panel width
  double x_max = 16.0;       // spatial evaluation extent
  double dx = 1.0 / 64;      // spatial evaluation step
  int nodes_per_panel = 8;

  static GroupSpec cyclic(std::vector<int> orders, double frequency_unit = 1.0);
  static GroupSpec real_line(double gamma_max, double dgamma, double x_max, double dx,
                             int nodes_per_panel = 8);

  bool is_finite() const { return kind == GroupKind::kCyclicProduct; }
  int dim() const { return is_finite() ? static_cast<int>(orders.size()) : 1; }
  // |G| for finite groups.
  std::size_t order() const;
  void validate() const;

  bool operator==(const GroupSpec&) const = default;
};

struct LatticeSpec {
  std::vector<int> divisors;  // cyclic: Lambda = d_1 Z_{N_1} x ...
  double spacing = 1.0;       // real line: Lambda = alpha Z

  static LatticeSpec cyclic(std::vector<int> divisors);
  static LatticeSpec real_line(double spacing);

  bool operator==(const LatticeSpec&) const = default;
};

// Haar weights per point/cell: counting on G and 1/N on the dual for cyclic groups,
// Lebesgue (dx, dgamma) on the real line.
struct MeasureConvention {
  double group_weight = 1.0;
  double dual_weight = 1.0;
};

GroupSpec dual_group(const GroupSpec& g);
void validate(const GroupSpec& g, const LatticeSpec& lat);
LatticeSpec annihilator(const GroupSpec& g, const LatticeSpec& lat);
MeasureConvention measure_convention(const GroupSpec& g);
// s(Lambda): measure of the canonical fundamental domain.
double lattice_size(const GroupSpec& g, const LatticeSpec& lat);
// s(Lambda^perp) in the dual measure.
double annihilator_size(const GroupSpec& g, const LatticeSpec& lat);
// Canonical coset representatives of G / Lambda: componentwise residues, or the [0, alpha) grid.
std::vector<Point> fundamental_domain(const GroupSpec& g, const LatticeSpec& lat);

// Partition of the dual nodes into Lambda^perp cosets; cosets are ordered by their
// representative in the canonical fundamental domain of G^/Lambda^perp.
struct CosetPartition {
  std::vector<std::size_t> representative;  // node index of each coset's representative
  std::vector<std::size_t> coset_of_node;
  std::size_t coset_count() const { return representative.size(); }
};

// A GroupSpec together with its sampled dual grid and spatial grid.
class Realization {
 public:
  explicit Realization(GroupSpec g);

  const GroupSpec& group() const { return group_; }
  bool is_finite() const { return group_.is_finite(); }
  int dim() const { return group_.dim(); }

  std::size_t dual_size() const { return weights_.size(); }
  double dual_weight(std::size_t j) const { return weights_[j]; }
  double radius(std::size_t j) const { return radius_[j]; }
  // Frequency coordinates nu_j such that <x, gamma_j> = exp(2 pi i sum_i x_i nu_ji).
  std::span<const double> frequency(std::size_t j) const;
  const std::vector<double>& dual_weights() const { return weights_; }

  std::size_t group_size() const { return group_points_; }
  Point group_point(std::size_t i) const;
  // Flat index of a finite-group point (reduced mod N_i); throws on non-integer input.
  std::size_t group_index(const Point& x) const;
  double group_weight() const;

  // exp(2 pi i <x, gamma_j>).
  cplx character(const Point& x, std::size_t j) const;
  bool on_grid(const Point& x) const;
  // Group metric: Euclidean norm of circular distances (finite) or |x|.
  double norm(const Point& x) const;

  // Discrete transforms under the measure convention.
  std::vector<cplx> fourier(std::span<const cplx> f) const;
  std::vector<cplx> inverse_fourier(std::span<const cplx> h) const;
  // sum_j w_j h_j <x, gamma_j>, the inversion integral at a single point.
  cplx inverse_at(std::span<const cplx> h, const Point& x) const;

  CosetPartition annihilator_cosets(const LatticeSpec& lat) const;

  // Lattice points. Finite: all |Lambda| points with flat index over m_i in [0, N_i/d_i).
  // Real line: index m in [-window, window].
  std::vector<long> lattice_indices(const LatticeSpec& lat, long window = 0) const;
  Point lattice_point(const LatticeSpec& lat, long index) const;

 private:
  GroupSpec group_;
  std::size_t group_points_ = 0;
  long half_grid_ = 0;  // real line: spatial grid is (i - half_grid_) * dx
  std::vector<double> freq_;
  std::vector<int> freq_index_;  // finite: integer k per axis
  std::vector<double> weights_;
  std::vector<double> radius_;
};

using RealizationPtr = std::shared_ptr<const Realization>;
RealizationPtr make_realization(const GroupSpec& g);

// Circular distance min(k mod n, n - k mod n).
long circular_distance(long k, long n);
// |gamma| for an integer dual multi-index on a cyclic product.
double cyclic_dual_radius(const GroupSpec& g, std::span<const long> k);

// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

struct QuotientSamples {
  std::vector<Point> points;  // fundamental-domain representatives
  std::vector<cplx> values;
};

// Sum over Lambda-translates of group-side samples.
QuotientSamples periodize(const Realization& r, std::span<const cplx> group_samples,
                          const LatticeSpec& lat);
// Raw sum over Lambda^perp cosets of dual-node values; index i matches coset i.
std::vector<cplx> periodize_dual(const Realization& r, std::span<const cplx> dual_values,
                                 const CosetPartition& cosets);

struct RealPeriodization {
  std::vector<double> values;
  double tail_bound = 0.0;
};

// sum_k f(t + k*period) for a function with nonincreasing |f| in |t| beyond `cutoff`;
// terms with |t + k period| > cutoff are dropped and bounded by
// 2 (|f(cutoff)| + int_cutoff^inf |f| / period). Throws kTailBound if the bound exceeds
// `tolerance`.
RealPeriodization periodize_decaying(const std::function<double(double)>& f, double period,
                                     std::span<const double> points, double cutoff,
                                     double tolerance);

// |LHS - RHS| of Weil's formula on G (and on the dual via Lambda^perp, taking the max).
double weil_check(const Realization& r, const LatticeSpec& lat, std::span<const cplx> f);
// Real line: f given as a callable; LHS by the spatial grid rule, RHS through the
// [0, alpha) quotient with translates up to `extent`.
double weil_check(const Realization& r, const LatticeSpec& lat,
                  const std::function<double(double)>& f, double extent);

// |int_{G^/Lambda^perp} |sum c_l <gamma, l>|^2 - sum |c_l|^2| under the normalized quotient
// measure. `indices` are lattice indices as returned by lattice_indices.
double quotient_plancherel_check(const Realization& r, const LatticeSpec& lat,
                                 std::span<const long> indices, std::span<const cplx> c);

}  // namespace hwspace
