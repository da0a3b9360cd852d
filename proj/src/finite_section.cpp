#include "hwspace/finite_section.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "hwspace/error.hpp"
#include "hwspace/lattice_analysis.hpp"

namespace hwspace {
namespace {

constexpr const char* kModule = "finite_section";

Eigen::VectorXcd gather(const LatticeData& data, std::span<const long> indices) {
  Eigen::VectorXcd out(static_cast<Eigen::Index>(indices.size()));
  for (std::size_t i = 0; i < indices.size(); ++i) out[static_cast<Eigen::Index>(i)] = data(indices[i]);
  return out;
}

double sup_norm(const HwElement& f) {
  double worst = 0.0;
  for (const auto& v : f.group_samples()) worst = std::max(worst, std::abs(v));
  return worst;
}

struct HpdSolve {
  Eigen::VectorXcd x;
  int refinement_steps = 0;
};

HpdSolve solve_hpd(const Eigen::MatrixXcd& a, const Eigen::VectorXcd& b, double condition, const Tolerances& tol) {
  if (!(condition <= tol.degenerate_condition)) {
    std::ostringstream msg;
    msg << "section Gram is singular to working precision (condition " << condition << ")";
    throw Error(ErrorCode::kSingularGram, kModule, msg.str());
  }
  Eigen::LLT<Eigen::MatrixXcd> llt(a);
  if (llt.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "Cholesky factorization failed (condition " << condition << ")";
    throw Error(ErrorCode::kSingularGram, kModule, msg.str());
  }
  HpdSolve out{llt.solve(b), 0};
  if (condition > tol.refinement_condition) {
    for (int it = 0; it < 3; ++it) {
      const Eigen::VectorXcd residual = b - a * out.x;
      out.x += llt.solve(residual);
      ++out.refinement_steps;
    }
  }
  return out;
}

}  // namespace

std::vector<long> lattice_ball(const Realization& r, const LatticeSpec& lat, double radius) {
  if (!r.is_finite()) {
    const long window = static_cast<long>(std::floor(radius / lat.spacing + 1e-9));
    return r.lattice_indices(lat, std::max(0L, window));
  }
  std::vector<long> out;
  for (long i : r.lattice_indices(lat)) {
    if (r.norm(r.lattice_point(lat, i)) <= radius + 1e-9) out.push_back(i);
  }
  return out;
}

FiniteInterpolant finite_min_norm(const Kernel& k, const LatticeSpec& lat, std::span<const long> section,
                                  const Eigen::VectorXcd& data, const Tolerances& tol) {
  if (static_cast<Eigen::Index>(section.size()) != data.size()) {
    throw Error(ErrorCode::kSizeMismatch, kModule, "section data length mismatch");
  }
  const auto gram = gram_matrix(k, lat, section, GramSpace::kHw, tol);
  const auto solved = solve_hpd(gram.matrix, data, gram.condition, tol);
  FiniteInterpolant out{
      Interpolant{lat, {section.begin(), section.end()}, solved.x, GeneratorKind::kPhi,
                  lattice_expansion(k.phi(), lat, section, solved.x)},
      gram.condition, solved.refinement_steps};
  return out;
}

SectionProjection section_projection(const Kernel& k, const LatticeSpec& lat, const HwElement& g,
                                     std::span<const long> section, const Tolerances& tol) {
  const auto samples = sample(g, lat, section);
  const Eigen::VectorXcd c = Eigen::Map<const Eigen::VectorXcd>(samples.data(), static_cast<Eigen::Index>(samples.size()));
  auto via_samples = finite_min_norm(k, lat, section, c, tol).interpolant;

  // Normal equations M a = b with M[i, j] = <T_j phi, T_i phi>_w and b_i = <g, T_i phi>_w.
  const auto& r = k.space();
  const HwElement phi = k.phi();
  std::vector<HwElement> atoms;
  atoms.reserve(section.size());
  for (long i : section) atoms.push_back(translate(phi, r.lattice_point(lat, i)));
  const auto n = static_cast<Eigen::Index>(section.size());
  Eigen::MatrixXcd m(n, n);
  Eigen::VectorXcd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& ai = atoms[static_cast<std::size_t>(i)];
    for (Eigen::Index j = i; j < n; ++j) {
      m(i, j) = hw_inner(k, atoms[static_cast<std::size_t>(j)], ai);
      m(j, i) = std::conj(m(i, j));
    }
    b[i] = hw_inner(k, g, ai);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(m, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double condition = lo > 0.0 ? eig.eigenvalues().maxCoeff() / lo : std::numeric_limits<double>::infinity();
  const auto solved = solve_hpd(m, b, condition, tol);
  Interpolant via_projection{lat, {section.begin(), section.end()}, solved.x, GeneratorKind::kPhi,
                             lattice_expansion(phi, lat, section, solved.x)};
  const double discrepancy = hw_norm(k, via_samples.function - via_projection.function);
  return {std::move(via_samples), std::move(via_projection), discrepancy};
}

ConvergenceStudy convergence_study(const Kernel& k, const LatticeSpec& lat, const LatticeData& data,
                                   const HwElement& reference, std::span<const double> radii,
                                   const Tolerances& tol) {
  ConvergenceStudy study;
  const auto& r = k.space();
  study.embedding_constant = std::sqrt(std::max(0.0, k.phi_at(Point(static_cast<std::size_t>(r.dim()), 0.0)).real()));
  double previous = std::numeric_limits<double>::infinity();
  for (double radius : radii) {
    const auto section = lattice_ball(r, lat, radius);
    if (section.empty()) {
      throw Error(ErrorCode::kInvalidSpec, kModule, "section of radius " + std::to_string(radius) + " is empty");
    }
    const auto fit = finite_min_norm(k, lat, section, gather(data, section), tol);
    const HwElement error = reference - fit.interpolant.function;
    ConvergenceRow row;
    row.radius = radius;
    row.section_size = section.size();
    row.hw_error = hw_norm(k, error);
    row.sup_error = sup_norm(error);
    row.gram_condition = fit.condition;
    if (row.hw_error > previous + 1e-12) study.monotone = false;
    previous = row.hw_error;
    study.rows.push_back(row);
  }
  return study;
}

RealLineReference real_line_reference(const Kernel& k, const LatticeSpec& lat, const LatticeData& data,
                                      std::span<const double> radii, const Tolerances& tol) {
  if (radii.size() < 2) throw Error(ErrorCode::kInvalidSpec, kModule, "reference needs at least two radii");
  std::vector<double> sorted(radii.begin(), radii.end());
  std::sort(sorted.begin(), sorted.end());
  const auto& r = k.space();
  const auto big = lattice_ball(r, lat, sorted.back());
  const auto small = lattice_ball(r, lat, sorted[sorted.size() - 2]);
  auto outer = finite_min_norm(k, lat, big, gather(data, big), tol);
  const auto inner = finite_min_norm(k, lat, small, gather(data, small), tol);

  std::map<long, cplx> inner_coeffs;
  for (std::size_t i = 0; i < small.size(); ++i) inner_coeffs[small[i]] = inner.interpolant.coefficients[static_cast<Eigen::Index>(i)];
  double change = 0.0;
  for (std::size_t i = 0; i < big.size(); ++i) {
    const auto it = inner_coeffs.find(big[i]);
    const cplx prev = it == inner_coeffs.end() ? cplx{} : it->second;
    change = std::max(change, std::abs(outer.interpolant.coefficients[static_cast<Eigen::Index>(i)] - prev));
  }
  return {std::move(outer.interpolant), change, change < tol.stability};
}

}  // namespace hwspace
