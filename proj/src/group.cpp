#include "hwspace/group.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "hwspace/error.hpp"

namespace hwspace {
namespace {

constexpr const char* kModule = "group_core";
constexpr double kGridSlack = 1e-9;

[[noreturn]] void fail(ErrorCode code, const std::string& msg) { throw Error(code, kModule, msg); }

// Returns round(a / b) if a / b is a positive integer within kGridSlack, else -1.
long integer_ratio(double a, double b) {
  const double q = a / b;
  const double r = std::round(q);
  if (r < 1.0 || std::abs(q - r) > kGridSlack * std::max(1.0, r)) return -1;
  return static_cast<long>(r);
}

long mod(long a, long n) {
  const long r = a % n;
  return r < 0 ? r + n : r;
}

std::vector<long> unflatten(std::size_t flat, std::span<const int> extents) {
  std::vector<long> idx(extents.size());
  for (std::size_t i = extents.size(); i-- > 0;) {
    idx[i] = static_cast<long>(flat % static_cast<std::size_t>(extents[i]));
    flat /= static_cast<std::size_t>(extents[i]);
  }
  return idx;
}

std::size_t flatten(std::span<const long> idx, std::span<const int> extents) {
  std::size_t flat = 0;
  for (std::size_t i = 0; i < extents.size(); ++i) {
    flat = flat * static_cast<std::size_t>(extents[i]) + static_cast<std::size_t>(idx[i]);
  }
  return flat;
}

std::vector<int> quotient_extents(const GroupSpec& g, const LatticeSpec& lat) {
  std::vector<int> m(g.orders.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = g.orders[i] / lat.divisors[i];
  return m;
}

std::size_t product(std::span<const int> v) {
  std::size_t p = 1;
  for (int x : v) p *= static_cast<std::size_t>(x);
  return p;
}

cplx unit_phase(double turns) {
  const double frac = turns - std::floor(turns);
  const double angle = 2.0 * std::numbers::pi * frac;
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace

GroupSpec GroupSpec::cyclic(std::vector<int> orders, double frequency_unit) {
  GroupSpec g;
  g.kind = GroupKind::kCyclicProduct;
  g.orders = std::move(orders);
  g.frequency_unit = frequency_unit;
  g.validate();
  return g;
}

GroupSpec GroupSpec::real_line(double gamma_max, double dgamma, double x_max, double dx,
                               int nodes_per_panel) {
  GroupSpec g;
  g.kind = GroupKind::kRealLine;
  g.gamma_max = gamma_max;
  g.dgamma = dgamma;
  g.x_max = x_max;
  g.dx = dx;
  g.nodes_per_panel = nodes_per_panel;
  g.validate();
  return g;
}

std::size_t GroupSpec::order() const { return is_finite() ? product(orders) : 0; }

void GroupSpec::validate() const {
  if (is_finite()) {
    if (orders.empty()) fail(ErrorCode::kInvalidSpec, "cyclic product needs at least one factor");
    for (int n : orders) {
      if (n < 1) fail(ErrorCode::kInvalidSpec, "cyclic order must be >= 1, got " + std::to_string(n));
    }
    if (!(frequency_unit > 0.0)) fail(ErrorCode::kInvalidSpec, "frequency unit must be positive");
    return;
  }
  if (!(gamma_max > 0.0 && dgamma > 0.0 && x_max > 0.0 && dx > 0.0)) {
    fail(ErrorCode::kInvalidSpec, "real-line parameters must be strictly positive");
  }
  if (integer_ratio(gamma_max, dgamma) < 0) {
    fail(ErrorCode::kInvalidSpec, "dgamma must divide gamma_max evenly");
  }
  if (integer_ratio(x_max, dx) < 0) fail(ErrorCode::kInvalidSpec, "dx must divide x_max evenly");
  if (nodes_per_panel < 1 || nodes_per_panel > 64) {
    fail(ErrorCode::kInvalidSpec, "nodes_per_panel must lie in [1, 64]");
  }
}

LatticeSpec LatticeSpec::cyclic(std::vector<int> divisors) {
  LatticeSpec l;
  l.divisors = std::move(divisors);
  return l;
}

LatticeSpec LatticeSpec::real_line(double spacing) {
  LatticeSpec l;
  l.spacing = spacing;
  return l;
}

GroupSpec dual_group(const GroupSpec& g) {
  g.validate();
  return g;
}

void validate(const GroupSpec& g, const LatticeSpec& lat) {
  g.validate();
  if (g.is_finite()) {
    if (lat.divisors.size() != g.orders.size()) {
      fail(ErrorCode::kInconsistentLattice, "lattice needs one divisor per cyclic factor");
    }
    for (std::size_t i = 0; i < lat.divisors.size(); ++i) {
      const int d = lat.divisors[i];
      if (d < 1 || g.orders[i] % d != 0) {
        fail(ErrorCode::kInconsistentLattice,
             std::to_string(d) + " does not divide " + std::to_string(g.orders[i]));
      }
    }
    return;
  }
  const double a = lat.spacing;
  if (!(a > 0.0)) fail(ErrorCode::kInconsistentLattice, "lattice spacing must be positive");
  if (integer_ratio(1.0 / a, g.dgamma) < 0) {
    fail(ErrorCode::kInconsistentLattice, "annihilator spacing 1/alpha must be a multiple of dgamma");
  }
  if (integer_ratio(2.0 * g.gamma_max, 1.0 / a) < 0) {
    fail(ErrorCode::kInconsistentLattice, "2*gamma_max must be a multiple of 1/alpha");
  }
  if (integer_ratio(a, g.dx) < 0) {
    fail(ErrorCode::kInconsistentLattice, "lattice spacing must be a multiple of dx");
  }
}

LatticeSpec annihilator(const GroupSpec& g, const LatticeSpec& lat) {
  validate(g, lat);
  if (g.is_finite()) {
    LatticeSpec out;
    out.divisors = quotient_extents(g, lat);
    return out;
  }
  return LatticeSpec::real_line(1.0 / lat.spacing);
}

MeasureConvention measure_convention(const GroupSpec& g) {
  if (g.is_finite()) return {1.0, 1.0 / static_cast<double>(g.order())};
  return {g.dx, g.dgamma};
}

double lattice_size(const GroupSpec& g, const LatticeSpec& lat) {
  validate(g, lat);
  if (!g.is_finite()) return lat.spacing;
  return static_cast<double>(product(lat.divisors));
}

double annihilator_size(const GroupSpec& g, const LatticeSpec& lat) {
  validate(g, lat);
  if (!g.is_finite()) return 1.0 / lat.spacing;
  return static_cast<double>(product(quotient_extents(g, lat))) / static_cast<double>(g.order());
}

std::vector<Point> fundamental_domain(const GroupSpec& g, const LatticeSpec& lat) {
  validate(g, lat);
  std::vector<Point> out;
  if (g.is_finite()) {
    const std::size_t count = product(lat.divisors);
    out.reserve(count);
    for (std::size_t f = 0; f < count; ++f) {
      const auto u = unflatten(f, lat.divisors);
      out.emplace_back(u.begin(), u.end());
    }
    return out;
  }
  const long steps = integer_ratio(lat.spacing, g.dx);
  for (long i = 0; i < steps; ++i) out.push_back({static_cast<double>(i) * g.dx});
  return out;
}

long circular_distance(long k, long n) {
  const long r = mod(k, n);
  return std::min(r, n - r);
}

double cyclic_dual_radius(const GroupSpec& g, std::span<const long> k) {
  double acc = 0.0;
  for (std::size_t i = 0; i < k.size(); ++i) {
    const double c = static_cast<double>(circular_distance(k[i], g.orders[i]));
    acc += c * c;
  }
  return g.frequency_unit * std::sqrt(acc);
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(static_cast<std::size_t>(n), 0.0);
  weights.assign(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / dp;
      x -= step;
      if (std::abs(step) < 1e-16) break;
    }
    // recompute derivative at the converged node
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n == 1 ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[static_cast<std::size_t>(i)] = -x;
    nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    weights[static_cast<std::size_t>(i)] = w;
    weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
}

Realization::Realization(GroupSpec g) : group_(std::move(g)) {
  group_.validate();
  if (group_.is_finite()) {
    const std::size_t n = group_.order();
    const int d = group_.dim();
    group_points_ = n;
    freq_.resize(n * static_cast<std::size_t>(d));
    freq_index_.resize(n * static_cast<std::size_t>(d));
    weights_.assign(n, 1.0 / static_cast<double>(n));
    radius_.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      const auto k = unflatten(j, group_.orders);
      for (int i = 0; i < d; ++i) {
        freq_[j * d + i] = static_cast<double>(k[i]) / group_.orders[i];
        freq_index_[j * d + i] = static_cast<int>(k[i]);
      }
      radius_[j] = cyclic_dual_radius(group_, k);
    }
    return;
  }
  const long panels = integer_ratio(group_.gamma_max, group_.dgamma);
  const int q = group_.nodes_per_panel;
  std::vector<double> t;
  std::vector<double> w;
  gauss_legendre(q, t, w);
  const std::size_t count = static_cast<std::size_t>(2 * panels * q);
  freq_.resize(count);
  weights_.resize(count);
  radius_.resize(count);
  for (long p = -panels; p < panels; ++p) {
    for (int k = 0; k < q; ++k) {
      const std::size_t j = static_cast<std::size_t>((p + panels) * q + k);
      const double gamma = (static_cast<double>(p) + 0.5 * (t[k] + 1.0)) * group_.dgamma;
      freq_[j] = gamma;
      weights_[j] = 0.5 * w[k] * group_.dgamma;
      radius_[j] = std::abs(gamma);
    }
  }
  half_grid_ = integer_ratio(group_.x_max, group_.dx);
  group_points_ = static_cast<std::size_t>(2 * half_grid_ + 1);
}

std::span<const double> Realization::frequency(std::size_t j) const {
  const auto d = static_cast<std::size_t>(dim());
  return {freq_.data() + j * d, d};
}

Point Realization::group_point(std::size_t i) const {
  if (is_finite()) {
    const auto x = unflatten(i, group_.orders);
    return Point(x.begin(), x.end());
  }
  return {static_cast<double>(static_cast<long>(i) - half_grid_) * group_.dx};
}

std::size_t Realization::group_index(const Point& x) const {
  if (!on_grid(x)) fail(ErrorCode::kOffGrid, "point is not on the group grid");
  if (is_finite()) {
    std::vector<long> k(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) k[i] = mod(std::lround(x[i]), group_.orders[i]);
    return flatten(k, group_.orders);
  }
  return static_cast<std::size_t>(std::lround(x[0] / group_.dx) + half_grid_);
}

double Realization::group_weight() const { return is_finite() ? 1.0 : group_.dx; }

bool Realization::on_grid(const Point& x) const {
  if (static_cast<int>(x.size()) != dim()) return false;
  if (is_finite()) {
    return std::all_of(x.begin(), x.end(),
                       [](double v) { return std::abs(v - std::round(v)) < kGridSlack; });
  }
  const double q = x[0] / group_.dx;
  return std::abs(q - std::round(q)) < kGridSlack * std::max(1.0, std::abs(q)) &&
         std::abs(x[0]) <= group_.x_max + kGridSlack;
}

double Realization::norm(const Point& x) const {
  if (!is_finite()) return std::abs(x[0]);
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double c = static_cast<double>(circular_distance(std::lround(x[i]), group_.orders[i]));
    acc += c * c;
  }
  return std::sqrt(acc);
}

cplx Realization::character(const Point& x, std::size_t j) const {
  if (is_finite()) {
    const long n = static_cast<long>(group_.order());
    long num = 0;
    const auto d = static_cast<std::size_t>(dim());
    for (std::size_t i = 0; i < d; ++i) {
      if (std::abs(x[i] - std::round(x[i])) > kGridSlack) {
        fail(ErrorCode::kOffGrid, "finite-group point must have integer coordinates");
      }
      const long ni = group_.orders[i];
      const long xi = mod(std::lround(x[i]), ni);
      num = mod(num + xi * freq_index_[j * d + i] % ni * (n / ni), n);
    }
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(num) / static_cast<double>(n);
    return {std::cos(angle), std::sin(angle)};
  }
  return unit_phase(x[0] * freq_[j]);
}

std::vector<cplx> Realization::fourier(std::span<const cplx> f) const {
  if (f.size() != group_size()) fail(ErrorCode::kSizeMismatch, "fourier: sample count mismatch");
  if (is_finite()) {
    std::vector<cplx> out(f.begin(), f.end());
    fft_nd(out, group_.orders, FftDirection::kForward);
    return out;
  }
  std::vector<cplx> out(dual_size());
  for (std::size_t j = 0; j < dual_size(); ++j) {
    cplx acc = 0.0;
    for (std::size_t i = 0; i < group_size(); ++i) {
      acc += f[i] * std::conj(unit_phase(group_point(i)[0] * freq_[j]));
    }
    out[j] = acc * group_.dx;
  }
  return out;
}

std::vector<cplx> Realization::inverse_fourier(std::span<const cplx> h) const {
  if (h.size() != dual_size()) fail(ErrorCode::kSizeMismatch, "inverse_fourier: sample count mismatch");
  if (is_finite()) {
    std::vector<cplx> out(h.begin(), h.end());
    fft_nd(out, group_.orders, FftDirection::kInverse);
    const double scale = 1.0 / static_cast<double>(group_.order());
    for (auto& v : out) v *= scale;
    return out;
  }
  std::vector<cplx> out(group_size());
  for (std::size_t i = 0; i < group_size(); ++i) out[i] = inverse_at(h, group_point(i));
  return out;
}

cplx Realization::inverse_at(std::span<const cplx> h, const Point& x) const {
  if (h.size() != dual_size()) fail(ErrorCode::kSizeMismatch, "inverse_at: sample count mismatch");
  cplx acc = 0.0;
  for (std::size_t j = 0; j < dual_size(); ++j) {
    if (h[j] == cplx{}) continue;
    acc += weights_[j] * h[j] * character(x, j);
  }
  return acc;
}

CosetPartition Realization::annihilator_cosets(const LatticeSpec& lat) const {
  validate(group_, lat);
  CosetPartition part;
  part.coset_of_node.resize(dual_size());
  if (is_finite()) {
    const auto steps = quotient_extents(group_, lat);  // annihilator step per axis
    const std::size_t count = product(steps);
    part.representative.resize(count);
    for (std::size_t c = 0; c < count; ++c) {
      part.representative[c] = flatten(unflatten(c, steps), group_.orders);
    }
    std::vector<long> r(steps.size());
    for (std::size_t j = 0; j < dual_size(); ++j) {
      const auto k = unflatten(j, group_.orders);
      for (std::size_t i = 0; i < k.size(); ++i) r[i] = k[i] % steps[i];
      part.coset_of_node[j] = flatten(r, steps);
    }
    return part;
  }
  const long panels = integer_ratio(group_.gamma_max, group_.dgamma);
  const long cell = integer_ratio(1.0 / lat.spacing, group_.dgamma);
  const long q = group_.nodes_per_panel;
  part.representative.resize(static_cast<std::size_t>(cell * q));
  for (long pc = 0; pc < cell; ++pc) {
    for (long k = 0; k < q; ++k) {
      part.representative[static_cast<std::size_t>(pc * q + k)] =
          static_cast<std::size_t>((pc + panels) * q + k);
    }
  }
  for (std::size_t j = 0; j < dual_size(); ++j) {
    const long p = static_cast<long>(j) / q - panels;
    const long k = static_cast<long>(j) % q;
    part.coset_of_node[j] = static_cast<std::size_t>(mod(p, cell) * q + k);
  }
  return part;
}

std::vector<long> Realization::lattice_indices(const LatticeSpec& lat, long window) const {
  validate(group_, lat);
  std::vector<long> out;
  if (is_finite()) {
    const std::size_t count = product(quotient_extents(group_, lat));
    out.resize(count);
    for (std::size_t i = 0; i < count; ++i) out[i] = static_cast<long>(i);
    return out;
  }
  for (long m = -window; m <= window; ++m) out.push_back(m);
  return out;
}

Point Realization::lattice_point(const LatticeSpec& lat, long index) const {
  if (is_finite()) {
    const auto m = unflatten(static_cast<std::size_t>(index), quotient_extents(group_, lat));
    Point p(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) p[i] = static_cast<double>(m[i] * lat.divisors[i]);
    return p;
  }
  return {static_cast<double>(index) * lat.spacing};
}

RealizationPtr make_realization(const GroupSpec& g) { return std::make_shared<const Realization>(g); }

QuotientSamples periodize(const Realization& r, std::span<const cplx> group_samples,
                          const LatticeSpec& lat) {
  if (group_samples.size() != r.group_size()) {
    fail(ErrorCode::kSizeMismatch, "periodize: sample count mismatch");
  }
  QuotientSamples out;
  out.points = fundamental_domain(r.group(), lat);
  out.values.assign(out.points.size(), cplx{});
  if (r.is_finite()) {
    const auto indices = r.lattice_indices(lat);
    for (std::size_t u = 0; u < out.points.size(); ++u) {
      cplx acc = 0.0;
      for (long li : indices) {
        Point x = r.lattice_point(lat, li);
        for (std::size_t i = 0; i < x.size(); ++i) x[i] += out.points[u][i];
        acc += group_samples[r.group_index(x)];
      }
      out.values[u] = acc;
    }
    return out;
  }
  const auto& g = r.group();
  const long stride = std::lround(lat.spacing / g.dx);
  const long half = std::lround(g.x_max / g.dx);
  for (std::size_t u = 0; u < out.points.size(); ++u) {
    cplx acc = 0.0;
    // grid offset of the representative is u; translates run over the full grid
    for (long i = static_cast<long>(u) + half; i >= 0; i -= stride) acc += group_samples[i];
    for (long i = static_cast<long>(u) + half + stride; i <= 2 * half; i += stride) {
      acc += group_samples[i];
    }
    out.values[u] = acc;
  }
  return out;
}

std::vector<cplx> periodize_dual(const Realization& r, std::span<const cplx> dual_values,
                                 const CosetPartition& cosets) {
  if (dual_values.size() != r.dual_size()) {
    fail(ErrorCode::kSizeMismatch, "periodize_dual: sample count mismatch");
  }
  std::vector<cplx> out(cosets.coset_count(), cplx{});
  for (std::size_t j = 0; j < dual_values.size(); ++j) out[cosets.coset_of_node[j]] += dual_values[j];
  return out;
}

RealPeriodization periodize_decaying(const std::function<double(double)>& f, double period,
                                     std::span<const double> points, double cutoff,
                                     double tolerance) {
  if (!(period > 0.0) || !(cutoff > 0.0)) fail(ErrorCode::kInvalidSpec, "period and cutoff must be positive");
  RealPeriodization out;
  out.values.reserve(points.size());
  for (double t : points) {
    const long lo = static_cast<long>(std::ceil((-cutoff - t) / period));
    const long hi = static_cast<long>(std::floor((cutoff - t) / period));
    double acc = 0.0;
    for (long k = lo; k <= hi; ++k) acc += f(t + static_cast<double>(k) * period);
    out.values.push_back(acc);
  }
  boost::math::quadrature::exp_sinh<double> integrator;
  const double tail_integral = integrator.integrate(
      [&](double s) { return std::abs(f(cutoff + s)) + std::abs(f(-cutoff - s)); });
  const double edge = std::max(std::abs(f(cutoff)), std::abs(f(-cutoff)));
  out.tail_bound = 2.0 * edge + tail_integral / period;
  if (!(out.tail_bound <= tolerance)) {
    std::ostringstream msg;
    msg << "periodization tail bound " << out.tail_bound << " exceeds tolerance " << tolerance;
    fail(ErrorCode::kTailBound, msg.str());
  }
  return out;
}

double weil_check(const Realization& r, const LatticeSpec& lat, std::span<const cplx> f) {
  if (!r.is_finite()) fail(ErrorCode::kInvalidSpec, "sampled weil_check requires a finite group");
  const auto& g = r.group();
  cplx lhs = 0.0;
  for (const auto& v : f) lhs += v * r.group_weight();
  const auto quotient = periodize(r, f, lat);
  cplx quotient_integral = 0.0;
  for (const auto& v : quotient.values) quotient_integral += v;
  quotient_integral /= static_cast<double>(quotient.values.size());
  const double group_residual = std::abs(lhs - lattice_size(g, lat) * quotient_integral);

  const auto fhat = r.fourier(f);
  cplx dual_lhs = 0.0;
  for (std::size_t j = 0; j < fhat.size(); ++j) dual_lhs += fhat[j] * r.dual_weight(j);
  const auto cosets = r.annihilator_cosets(lat);
  const auto dual_quotient = periodize_dual(r, fhat, cosets);
  cplx dual_integral = 0.0;
  for (const auto& v : dual_quotient) dual_integral += v;
  dual_integral /= static_cast<double>(dual_quotient.size());
  const double dual_residual = std::abs(dual_lhs - annihilator_size(g, lat) * dual_integral);
  return std::max(group_residual, dual_residual);
}

double weil_check(const Realization& r, const LatticeSpec& lat,
                  const std::function<double(double)>& f, double extent) {
  if (r.is_finite()) fail(ErrorCode::kInvalidSpec, "callable weil_check requires the real line");
  validate(r.group(), lat);
  const auto& g = r.group();
  const long half = static_cast<long>(std::floor(extent / g.dx));
  double lhs = 0.0;
  for (long i = -half; i <= half; ++i) lhs += f(static_cast<double>(i) * g.dx) * g.dx;

  // quotient integral with Gauss-Legendre panels of width dx over [0, alpha)
  std::vector<double> t;
  std::vector<double> w;
  gauss_legendre(g.nodes_per_panel, t, w);
  const double alpha = lat.spacing;
  const long panels = std::lround(alpha / g.dx);
  const long terms = static_cast<long>(std::ceil(extent / alpha)) + 1;
  double quotient = 0.0;
  for (long p = 0; p < panels; ++p) {
    for (std::size_t k = 0; k < t.size(); ++k) {
      const double u = (static_cast<double>(p) + 0.5 * (t[k] + 1.0)) * g.dx;
      double acc = 0.0;
      for (long m = -terms; m <= terms; ++m) acc += f(u + static_cast<double>(m) * alpha);
      quotient += 0.5 * w[k] * g.dx * acc / alpha;  // normalized quotient measure
    }
  }
  return std::abs(lhs - lattice_size(g, lat) * quotient);
}

double quotient_plancherel_check(const Realization& r, const LatticeSpec& lat,
                                 std::span<const long> indices, std::span<const cplx> c) {
  if (indices.size() != c.size()) fail(ErrorCode::kSizeMismatch, "coefficient/index count mismatch");
  const auto cosets = r.annihilator_cosets(lat);
  std::vector<Point> points;
  points.reserve(indices.size());
  for (long i : indices) points.push_back(r.lattice_point(lat, i));
  double rhs = 0.0;
  for (const auto& v : c) rhs += std::norm(v);
  double lhs = 0.0;
  for (std::size_t rep : cosets.representative) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) s += c[i] * r.character(points[i], rep);
    const double weight = r.is_finite() ? 1.0 / static_cast<double>(cosets.coset_count())
                                        : r.dual_weight(rep) * lat.spacing;
    lhs += weight * std::norm(s);
  }
  return std::abs(lhs - rhs);
}

}  // namespace hwspace
