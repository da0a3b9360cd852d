#include "hwspace/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <limits>

#include "hwspace/error.hpp"

namespace hwspace {
namespace {

constexpr const char* kModule = "kernel_space";

[[noreturn]] void fail(ErrorCode code, const std::string& msg) { throw Error(code, kModule, msg); }

void require_same_space(const HwElement& a, const HwElement& b) {
  if (a.realization_ptr() != b.realization_ptr() && !(a.realization().group() == b.realization().group())) {
    fail(ErrorCode::kSizeMismatch, "elements live on different realizations");
  }
}

std::span<const cplx> as_span(const Eigen::VectorXcd& v) {
  return {v.data(), static_cast<std::size_t>(v.size())};
}

}  // namespace

HwElement::HwElement(RealizationPtr realization, Eigen::VectorXcd hat)
    : realization_(std::move(realization)), hat_(std::move(hat)) {
  if (static_cast<std::size_t>(hat_.size()) != realization_->dual_size()) {
    fail(ErrorCode::kSizeMismatch, "coefficient vector does not match the dual grid");
  }
}

HwElement HwElement::zero(RealizationPtr realization) {
  const auto n = static_cast<Eigen::Index>(realization->dual_size());
  return {std::move(realization), Eigen::VectorXcd::Zero(n)};
}

HwElement HwElement::from_group_samples(RealizationPtr realization, std::span<const cplx> samples) {
  const auto hat = realization->fourier(samples);
  Eigen::VectorXcd v = Eigen::Map<const Eigen::VectorXcd>(hat.data(), static_cast<Eigen::Index>(hat.size()));
  return {std::move(realization), std::move(v)};
}

cplx HwElement::operator()(const Point& x) const { return realization_->inverse_at(as_span(hat_), x); }

std::vector<cplx> HwElement::group_samples() const { return realization_->inverse_fourier(as_span(hat_)); }

HwElement& HwElement::operator+=(const HwElement& other) {
  require_same_space(*this, other);
  hat_ += other.hat_;
  return *this;
}

HwElement& HwElement::operator-=(const HwElement& other) {
  require_same_space(*this, other);
  hat_ -= other.hat_;
  return *this;
}

HwElement& HwElement::operator*=(cplx s) {
  hat_ *= s;
  return *this;
}

HwElement Kernel::phi() const { return {realization, phi_hat.cast<cplx>()}; }

cplx Kernel::phi_at(const Point& x) const { return phi()(x); }

Kernel synthesize_kernel(const Weight& w, RealizationPtr realization) {
  const auto& r = *realization;
  Kernel k{realization, w, {}, {}, 0.0};
  if (!r.is_finite()) {
    inv_weight_l2(w, r);  // throws kNotInL2
    if (const auto* box = std::get_if<BoxWeight>(&w.family())) {
      const double panels = box->omega / r.group().dgamma;
      if (std::abs(panels - std::round(panels)) > 1e-9 || box->omega > r.group().gamma_max) {
        fail(ErrorCode::kInvalidSpec, "box band edge must be a multiple of dgamma inside gamma_max");
      }
    }
    k.tail_bound = 2.0 * weight_tail_integral(w, 2.0, r.group().gamma_max);
  }
  const auto n = static_cast<Eigen::Index>(r.dual_size());
  k.phi_hat.resize(n);
  k.weight_sq.resize(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double rad = r.radius(static_cast<std::size_t>(j));
    const double wv = w.eval_radius(rad);
    k.weight_sq[j] = wv * wv;
    k.phi_hat[j] = w.inverse_power(rad, 2.0);
  }
  return k;
}

cplx hw_inner(const Kernel& k, const HwElement& f, const HwElement& h) {
  require_same_space(f, h);
  const auto& r = k.space();
  const auto& fh = f.hat();
  const auto& hh = h.hat();
  cplx acc = 0.0;
  for (Eigen::Index j = 0; j < fh.size(); ++j) {
    const double w2 = k.weight_sq[j];
    if (std::isinf(w2)) {
      if (fh[j] != cplx{} || hh[j] != cplx{}) {
        fail(ErrorCode::kNonFinite, "element has spectral mass where the weight is infinite");
      }
      continue;
    }
    acc += r.dual_weight(static_cast<std::size_t>(j)) * fh[j] * std::conj(hh[j]) * w2;
  }
  if (!std::isfinite(acc.real()) || !std::isfinite(acc.imag())) {
    fail(ErrorCode::kNonFinite, "inner product overflowed");
  }
  return acc;
}

double hw_norm(const Kernel& k, const HwElement& f) { return std::sqrt(std::max(0.0, hw_inner(k, f, f).real())); }

cplx l2_inner(const HwElement& f, const HwElement& h) {
  require_same_space(f, h);
  const auto& r = f.realization();
  cplx acc = 0.0;
  for (Eigen::Index j = 0; j < f.hat().size(); ++j) {
    acc += r.dual_weight(static_cast<std::size_t>(j)) * f.hat()[j] * std::conj(h.hat()[j]);
  }
  return acc;
}

double l2_norm(const HwElement& f) { return std::sqrt(std::max(0.0, l2_inner(f, f).real())); }

HwElement translate(const HwElement& f, const Point& x) {
  const auto& r = f.realization();
  if (!r.on_grid(x)) fail(ErrorCode::kOffGrid, "translation must be by a group grid point");
  Eigen::VectorXcd out = f.hat();
  for (Eigen::Index j = 0; j < out.size(); ++j) {
    if (out[j] == cplx{}) continue;
    out[j] *= std::conj(r.character(x, static_cast<std::size_t>(j)));
  }
  return {f.realization_ptr(), std::move(out)};
}

double reproduce(const HwElement& f, const Point& x, const Kernel& k) {
  return std::abs(f(x) - hw_inner(k, f, translate(k.phi(), x)));
}

std::vector<cplx> sample(const HwElement& f, const LatticeSpec& lat, std::span<const long> indices) {
  const auto& r = f.realization();
  std::vector<cplx> out;
  out.reserve(indices.size());
  if (r.is_finite()) {
    const auto values = f.group_samples();
    for (long i : indices) out.push_back(values[r.group_index(r.lattice_point(lat, i))]);
    return out;
  }
  for (long i : indices) out.push_back(f(r.lattice_point(lat, i)));
  return out;
}

KernelDiagnostics diagnose_kernel(const Kernel& k) {
  KernelDiagnostics d;
  const auto phi = k.phi();
  const auto& r = k.space();
  d.phi_at_zero = phi(Point(static_cast<std::size_t>(r.dim()), 0.0)).real();
  d.norm_sq = hw_inner(k, phi, phi).real();
  d.norm_residual = std::abs(d.phi_at_zero - d.norm_sq) / std::max(std::abs(d.phi_at_zero), 1e-300);
  const auto values = phi.group_samples();
  for (std::size_t i = 0; i < r.group_size(); ++i) {
    Point x = r.group_point(i);
    for (auto& c : x) c = -c;
    const std::size_t mirrored = r.group_index(x);
    d.hermitian_residual = std::max(d.hermitian_residual, std::abs(values[mirrored] - std::conj(values[i])));
  }
  return d;
}

HwElement random_element(const Kernel& k, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Eigen::VectorXcd hat(k.phi_hat.size());
  for (Eigen::Index j = 0; j < hat.size(); ++j) {
    const double scale = std::sqrt(k.phi_hat[j]);  // w^{-1}
    const double re = gauss(rng);
    const double im = gauss(rng);
    hat[j] = scale == 0.0 ? cplx{} : scale * cplx{re, im};
  }
  return {k.realization, std::move(hat)};
}

HwElement random_kernel_expansion(const Kernel& k, std::mt19937_64& rng, int terms) {
  const auto& r = k.space();
  std::normal_distribution<double> gauss;
  std::uniform_int_distribution<std::size_t> pick(0, r.group_size() - 1);
  HwElement out = HwElement::zero(k.realization);
  const HwElement phi = k.phi();
  for (int t = 0; t < terms; ++t) {
    const cplx a{gauss(rng), gauss(rng)};
    out += a * translate(phi, r.group_point(pick(rng)));
  }
  return out;
}

SamplingConstant measure_sampling_constant(const Kernel& k, const LatticeSpec& lat,
                                           std::size_t suite_size, std::uint64_t seed, long window) {
  // f = sum a_i T_{x_i} phi, so f(lambda) = sum a_i phi(lambda - x_i) and
  // ||f||_w^2 = sum a_i conj(a_j) phi(x_j - x_i); only phi at grid offsets is needed.
  const auto& r = k.space();
  std::vector<Point> lattice;
  for (long i : r.lattice_indices(lat, window)) lattice.push_back(r.lattice_point(lat, i));
  std::vector<cplx> table;
  std::map<long, cplx> cache;
  if (r.is_finite()) table = k.phi().group_samples();
  auto phi_offset = [&](const Point& x, const Point& y) -> cplx {
    if (r.is_finite()) {
      Point d = x;
      for (std::size_t a = 0; a < d.size(); ++a) d[a] -= y[a];
      return table[r.group_index(d)];
    }
    const long key = std::lround((x[0] - y[0]) / r.group().dx);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, k.phi_at({static_cast<double>(key) * r.group().dx})).first;
    return it->second;
  };

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> term_count(1, 3);
  std::uniform_int_distribution<std::size_t> pick(0, r.group_size() - 1);
  SamplingConstant out;
  out.suite_size = suite_size;
  for (std::size_t s = 0; s < suite_size; ++s) {
    std::normal_distribution<double> gauss;
    const int terms = term_count(rng);
    std::vector<cplx> a;
    std::vector<Point> x;
    for (int t = 0; t < terms; ++t) {
      const double re = gauss(rng);
      a.emplace_back(re, gauss(rng));
      x.push_back(r.group_point(pick(rng)));
    }
    double norm_sq = 0.0;
    for (int i = 0; i < terms; ++i) {
      for (int j = 0; j < terms; ++j) norm_sq += (a[i] * std::conj(a[j]) * phi_offset(x[j], x[i])).real();
    }
    if (!(norm_sq > 0.0)) continue;
    double q = 0.0;
    for (const auto& lambda : lattice) {
      cplx v{};
      for (int i = 0; i < terms; ++i) v += a[i] * phi_offset(lambda, x[i]);
      q += std::norm(v);
    }
    out.sup_ratio = std::max(out.sup_ratio, std::sqrt(q / norm_sq));
  }
  return out;
}

}  // namespace hwspace
