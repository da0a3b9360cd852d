#include "hwspace/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "hwspace/error.hpp"
#include "hwspace/fft.hpp"

namespace hwspace {
namespace {

constexpr const char* kModule = "interpolation";

LagrangeGenerator dual_generator(const Kernel& k, const LatticeSpec& lat, double power,
                                 const Tolerances& tol) {
  const auto& r = k.space();
  const auto cosets = r.annihilator_cosets(lat);
  std::vector<double> sums(cosets.coset_count(), 0.0);
  for (std::size_t j = 0; j < r.dual_size(); ++j) {
    sums[cosets.coset_of_node[j]] += std::pow(k.phi_hat[static_cast<Eigen::Index>(j)], power);
  }
  const auto [lo, hi] = std::minmax_element(sums.begin(), sums.end());
  if (!(*lo > tol.division_guard * *hi)) {
    std::ostringstream msg;
    msg << "periodization inf " << *lo << " below " << tol.division_guard << " * sup " << *hi
        << ": lattice translates form a frame, not a Riesz basis";
    throw FrameRefusal(kModule, msg.str(), *lo, *hi);
  }
  const double s_perp = annihilator_size(r.group(), lat);
  Eigen::VectorXcd hat(k.phi_hat.size());
  for (Eigen::Index j = 0; j < hat.size(); ++j) {
    hat[j] = k.phi_hat[j] / (s_perp * sums[cosets.coset_of_node[static_cast<std::size_t>(j)]]);
  }
  return {HwElement(k.realization, std::move(hat)), lat, *lo, *hi};
}

// Values of F^{-1}(symbol) at lattice differences l' - l, checked against delta.
double delta_residual(const Realization& r, const LatticeSpec& lat, const std::vector<cplx>& symbol,
                      long window) {
  const auto indices = r.lattice_indices(lat, window);
  double worst = 0.0;
  if (r.is_finite()) {
    const auto values = r.inverse_fourier(symbol);
    std::vector<Point> pts;
    pts.reserve(indices.size());
    for (long i : indices) pts.push_back(r.lattice_point(lat, i));
    for (std::size_t a = 0; a < pts.size(); ++a) {
      for (std::size_t b = 0; b < pts.size(); ++b) {
        Point d = pts[b];
        for (std::size_t i = 0; i < d.size(); ++i) d[i] -= pts[a][i];
        const double expected = a == b ? 1.0 : 0.0;
        worst = std::max(worst, std::abs(values[r.group_index(d)] - expected));
      }
    }
    return worst;
  }
  for (long diff = -2 * window; diff <= 2 * window; ++diff) {
    const cplx v = r.inverse_at(symbol, {static_cast<double>(diff) * lat.spacing});
    worst = std::max(worst, std::abs(v - (diff == 0 ? 1.0 : 0.0)));
  }
  return worst;
}

// sum_i c_i conj<lambda_i, gamma> on every dual node.
Eigen::VectorXcd lattice_symbol(const Realization& r, const LatticeSpec& lat, std::span<const long> indices,
                                const Eigen::VectorXcd& c) {
  if (static_cast<Eigen::Index>(indices.size()) != c.size()) {
    throw Error(ErrorCode::kSizeMismatch, kModule, "data length does not match lattice indices");
  }
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(r.dual_size()));
  if (r.is_finite()) {
    std::vector<cplx> spikes(r.group_size(), cplx{});
    for (std::size_t i = 0; i < indices.size(); ++i) {
      spikes[r.group_index(r.lattice_point(lat, indices[i]))] += c[static_cast<Eigen::Index>(i)];
    }
    fft_nd(spikes, r.group().orders, FftDirection::kForward);
    for (std::size_t j = 0; j < spikes.size(); ++j) out[static_cast<Eigen::Index>(j)] = spikes[j];
    return out;
  }
  for (std::size_t i = 0; i < indices.size(); ++i) {
    const cplx ci = c[static_cast<Eigen::Index>(i)];
    if (ci == cplx{}) continue;
    const Point x = r.lattice_point(lat, indices[i]);
    for (std::size_t j = 0; j < r.dual_size(); ++j) out[static_cast<Eigen::Index>(j)] += ci * std::conj(r.character(x, j));
  }
  return out;
}

}  // namespace

LagrangeGenerator lagrange_interpolator(const Kernel& k, const LatticeSpec& lat, const Tolerances& tol) {
  return dual_generator(k, lat, 1.0, tol);
}

LagrangeGenerator dual_atom_l2(const Kernel& k, const LatticeSpec& lat, const Tolerances& tol) {
  return dual_generator(k, lat, 2.0, tol);
}

std::vector<double> normalized_periodization(const Kernel& k, const LatticeSpec& lat, const HwElement& g) {
  const auto& r = k.space();
  const auto cosets = r.annihilator_cosets(lat);
  const auto& h = g.hat();
  const auto sums = periodize_dual(r, {h.data(), static_cast<std::size_t>(h.size())}, cosets);
  const double s_perp = annihilator_size(r.group(), lat);
  std::vector<double> out;
  out.reserve(sums.size());
  for (const auto& v : sums) out.push_back(s_perp * v.real());
  return out;
}

double biorthogonality_check(const Kernel& k, const LatticeSpec& lat, const HwElement& generator, long window) {
  // <T_l phi, T_l' g>_w = F^{-1}(phi^ w^2 conj g^)(l' - l); phi^ w^2 = 1 where w is finite
  const auto& r = k.space();
  std::vector<cplx> symbol(r.dual_size());
  for (std::size_t j = 0; j < symbol.size(); ++j) {
    const auto jj = static_cast<Eigen::Index>(j);
    symbol[j] = std::isinf(k.weight_sq[jj]) ? cplx{} : k.phi_hat[jj] * k.weight_sq[jj] * std::conj(generator.hat()[jj]);
  }
  return delta_residual(r, lat, symbol, window);
}

double l2_biorthogonality_check(const Kernel& k, const LatticeSpec& lat, const HwElement& generator, long window) {
  const auto& r = k.space();
  std::vector<cplx> symbol(r.dual_size());
  for (std::size_t j = 0; j < symbol.size(); ++j) {
    const auto jj = static_cast<Eigen::Index>(j);
    symbol[j] = k.phi_hat[jj] * std::conj(generator.hat()[jj]);
  }
  return delta_residual(r, lat, symbol, window);
}

HwElement lattice_expansion(const HwElement& generator, const LatticeSpec& lat, std::span<const long> indices,
                            const Eigen::VectorXcd& coefficients) {
  const auto symbol = lattice_symbol(generator.realization(), lat, indices, coefficients);
  return {generator.realization_ptr(), symbol.cwiseProduct(generator.hat())};
}

Interpolant min_norm_interpolant(const LagrangeGenerator& gen, std::span<const long> indices,
                                 const Eigen::VectorXcd& data) {
  Interpolant out{gen.lattice, {indices.begin(), indices.end()}, data, GeneratorKind::kPsi,
                  lattice_expansion(gen.psi, gen.lattice, indices, data)};
  return out;
}

Interpolant min_norm_interpolant(const Kernel& k, const LatticeSpec& lat, std::span<const long> indices,
                                 const Eigen::VectorXcd& data, const Tolerances& tol) {
  return min_norm_interpolant(lagrange_interpolator(k, lat, tol), indices, data);
}

Interpolant project(const Kernel& k, const LatticeSpec& lat, const HwElement& f, long window,
                    const Tolerances& tol) {
  const auto indices = k.space().lattice_indices(lat, window);
  const auto samples = sample(f, lat, indices);
  const Eigen::VectorXcd c = Eigen::Map<const Eigen::VectorXcd>(samples.data(), static_cast<Eigen::Index>(samples.size()));
  return min_norm_interpolant(k, lat, indices, c, tol);
}

PythagorasCertificate minimality_certificate(const Kernel& k, const HwElement& competitor,
                                             const HwElement& interpolant) {
  PythagorasCertificate cert;
  cert.norm_sq = hw_inner(k, competitor, competitor).real();
  cert.difference_sq = hw_inner(k, competitor - interpolant, competitor - interpolant).real();
  cert.interpolant_sq = hw_inner(k, interpolant, interpolant).real();
  cert.relative_residual = std::abs(cert.norm_sq - cert.difference_sq - cert.interpolant_sq) /
                           std::max(cert.norm_sq, 1e-300);
  return cert;
}

double expansion_check(const Kernel& k, const LatticeSpec& lat, std::span<const long> indices,
                       const Eigen::VectorXcd& phi_coefficients, const LagrangeGenerator& gen) {
  const auto& r = k.space();
  const HwElement f = lattice_expansion(k.phi(), lat, indices, phi_coefficients);
  // the psi expansion runs over every lattice point the spatial grid can resolve
  const long reach = r.is_finite() ? 0 : std::lround(r.group().x_max / lat.spacing);
  const auto all = r.lattice_indices(lat, reach);
  const auto values = sample(f, lat, all);
  const Eigen::VectorXcd c = Eigen::Map<const Eigen::VectorXcd>(values.data(), static_cast<Eigen::Index>(values.size()));
  const HwElement expansion = lattice_expansion(gen.psi, lat, all, c);
  const auto diff = (f - expansion).group_samples();
  double worst = 0.0;
  for (const auto& v : diff) worst = std::max(worst, std::abs(v));
  return worst;
}

}  // namespace hwspace
