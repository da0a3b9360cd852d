#include "hwspace/lattice_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "hwspace/error.hpp"

namespace hwspace {
namespace {

QuotientFunction periodization(const Kernel& k, const LatticeSpec& lat, double power) {
  const auto& r = k.space();
  const auto cosets = r.annihilator_cosets(lat);
  std::vector<double> sums(cosets.coset_count(), 0.0);
  for (std::size_t j = 0; j < r.dual_size(); ++j) {
    sums[cosets.coset_of_node[j]] += std::pow(k.phi_hat[static_cast<Eigen::Index>(j)], power);
  }
  QuotientFunction out;
  out.scale = periodization_scale(r);
  out.values.reserve(sums.size());
  for (std::size_t c = 0; c < sums.size(); ++c) {
    const auto nu = r.frequency(cosets.representative[c]);
    out.representatives.emplace_back(nu.begin(), nu.end());
    out.values.push_back(out.scale * sums[c]);
  }
  if (!r.is_finite()) {
    // phi^ = w^{-2}, so |phi^|^power = w^{-2 power}
    out.tail_bound = periodization_tail_bound(k.weight, 2.0 * power, r.group().gamma_max, lat.spacing);
  }
  return out;
}

// Samples of F^{-1}(phi^^power) at lattice differences, cached per difference.
Eigen::MatrixXcd correlation_matrix(const Kernel& k, const LatticeSpec& lat, std::span<const long> indices,
                                    double power) {
  const auto& r = k.space();
  std::vector<cplx> symbol(r.dual_size());
  for (std::size_t j = 0; j < symbol.size(); ++j) {
    symbol[j] = std::pow(k.phi_hat[static_cast<Eigen::Index>(j)], power);
  }
  const auto n = static_cast<Eigen::Index>(indices.size());
  Eigen::MatrixXcd g(n, n);
  std::vector<Point> pts;
  pts.reserve(indices.size());
  for (long i : indices) pts.push_back(r.lattice_point(lat, i));

  if (r.is_finite()) {
    const auto values = r.inverse_fourier(symbol);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        Point d = pts[static_cast<std::size_t>(i)];
        for (std::size_t a = 0; a < d.size(); ++a) d[a] -= pts[static_cast<std::size_t>(j)][a];
        g(i, j) = values[r.group_index(d)];
      }
    }
    return g;
  }
  std::map<long, cplx> cache;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const long diff = indices[static_cast<std::size_t>(i)] - indices[static_cast<std::size_t>(j)];
      auto it = cache.find(diff);
      if (it == cache.end()) {
        it = cache.emplace(diff, r.inverse_at(symbol, {static_cast<double>(diff) * lat.spacing})).first;
      }
      g(i, j) = it->second;
    }
  }
  return g;
}

}  // namespace

std::string_view to_string(RieszVerdict v) {
  switch (v) {
    case RieszVerdict::kRiesz: return "Riesz";
    case RieszVerdict::kNotBoundedBelow: return "NotBoundedBelow";
    case RieszVerdict::kDegenerate: return "Degenerate";
  }
  return "unknown";
}

double QuotientFunction::inf() const { return *std::min_element(values.begin(), values.end()); }
double QuotientFunction::sup() const { return *std::max_element(values.begin(), values.end()); }

QuotientFunction l2_periodization(const Kernel& k, const LatticeSpec& lat) { return periodization(k, lat, 2.0); }
QuotientFunction hw_periodization(const Kernel& k, const LatticeSpec& lat) { return periodization(k, lat, 1.0); }

double periodization_to_gram_constant(const Realization& r, const LatticeSpec& lat) {
  return annihilator_size(r.group(), lat) / periodization_scale(r);
}

GramMatrix gram_matrix(const Kernel& k, const LatticeSpec& lat, std::span<const long> indices,
                       GramSpace space, const Tolerances& tol) {
  if (indices.empty()) throw Error(ErrorCode::kInvalidSpec, "lattice_analysis", "Gram section must be nonempty");
  GramMatrix out;
  // H_w: <T_l' phi, T_l phi>_w = phi(l - l'); L^2: F^{-1}(|phi^|^2)(l - l')
  out.matrix = correlation_matrix(k, lat, indices, space == GramSpace::kHw ? 1.0 : 2.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(out.matrix, Eigen::EigenvaluesOnly);
  out.eig_min = eig.eigenvalues().minCoeff();
  out.eig_max = eig.eigenvalues().maxCoeff();
  out.condition = out.eig_min > 0.0 ? out.eig_max / out.eig_min : std::numeric_limits<double>::infinity();
  out.singular = !(out.condition <= tol.degenerate_condition);
  return out;
}

RieszReport riesz_bounds(const Kernel& k, const LatticeSpec& lat, long section_window, const Tolerances& tol) {
  const auto& r = k.space();
  RieszReport rep;
  rep.threshold = tol.riesz_threshold;
  const auto l2 = l2_periodization(k, lat);
  const auto hw = hw_periodization(k, lat);
  rep.a_l2 = l2.inf();
  rep.b_l2 = l2.sup();
  rep.a_hw = hw.inf();
  rep.b_hw = hw.sup();
  rep.tail_bound_l2 = l2.tail_bound;
  rep.tail_bound_hw = hw.tail_bound;
  rep.grid_points = hw.values.size();
  rep.oracle_constant = periodization_to_gram_constant(r, lat);

  const auto indices = r.lattice_indices(lat, section_window);
  rep.section_size = indices.size();
  const auto g_hw = gram_matrix(k, lat, indices, GramSpace::kHw, tol);
  const auto g_l2 = gram_matrix(k, lat, indices, GramSpace::kL2, tol);
  rep.gram_eig_min = g_hw.eig_min;
  rep.gram_eig_max = g_hw.eig_max;
  rep.l2_gram_eig_min = g_l2.eig_min;
  rep.l2_gram_eig_max = g_l2.eig_max;
  rep.gram_condition = g_hw.condition;

  if (!(rep.a_hw > tol.riesz_threshold * rep.b_hw)) {
    rep.verdict = RieszVerdict::kNotBoundedBelow;
  } else if (g_hw.singular) {
    rep.verdict = RieszVerdict::kDegenerate;
  } else {
    rep.verdict = RieszVerdict::kRiesz;
  }
  return rep;
}

}  // namespace hwspace
