#pragma once

// Lagrange interpolator and L^2 dual atom for the lattice translates of phi, minimal-norm
// interpolation of lattice data and the orthogonal projection onto V_Lambda(phi).

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "hwspace/kernel.hpp"
#include "hwspace/tolerances.hpp"

namespace hwspace {

struct LagrangeGenerator {
  HwElement psi;
  LatticeSpec lattice;
  double denominator_inf = 0.0;  // raw Lambda^perp periodization extrema
  double denominator_sup = 0.0;
};

// psi^ = phi^ / (s(Lambda^perp) sum_chi phi^(. + chi)), normalized so that psi(lambda) = delta.
// Throws FrameRefusal when the periodization falls below division_guard * sup.
LagrangeGenerator lagrange_interpolator(const Kernel& k, const LatticeSpec& lat,
                                        const Tolerances& tol = default_tolerances());
// psi2^ = phi^ / (s(Lambda^perp) sum_chi |phi^(. + chi)|^2), biorthogonal to {T_lambda phi} in L^2.
LagrangeGenerator dual_atom_l2(const Kernel& k, const LatticeSpec& lat,
                               const Tolerances& tol = default_tolerances());

// s(Lambda^perp) * sum_chi g^(. + chi) on each coset; identically 1 for psi^.
std::vector<double> normalized_periodization(const Kernel& k, const LatticeSpec& lat, const HwElement& g);

// max |<T_l phi, T_l' g> - delta_{l,l'}| over all lattice pairs (finite groups) or
// |m|, |m'| <= window (real line), in H_w or L^2.
double biorthogonality_check(const Kernel& k, const LatticeSpec& lat, const HwElement& generator,
                             long window = 8);
double l2_biorthogonality_check(const Kernel& k, const LatticeSpec& lat, const HwElement& generator,
                                long window = 8);

enum class GeneratorKind { kPsi, kPhi };

struct Interpolant {
  LatticeSpec lattice;
  std::vector<long> indices;
  Eigen::VectorXcd coefficients;
  GeneratorKind generator = GeneratorKind::kPsi;
  HwElement function;
};

// sum_i c_i T_{lambda_i} g
HwElement lattice_expansion(const HwElement& generator, const LatticeSpec& lat,
                            std::span<const long> indices, const Eigen::VectorXcd& coefficients);

// f_c = sum c_lambda T_lambda psi. Real-line data must be finitely supported.
Interpolant min_norm_interpolant(const Kernel& k, const LatticeSpec& lat, std::span<const long> indices,
                                 const Eigen::VectorXcd& data, const Tolerances& tol = default_tolerances());
Interpolant min_norm_interpolant(const LagrangeGenerator& gen, std::span<const long> indices,
                                 const Eigen::VectorXcd& data);

// Minimal-norm interpolant of the samples of f: the orthogonal projection onto V_Lambda(phi).
Interpolant project(const Kernel& k, const LatticeSpec& lat, const HwElement& f, long window = 32,
                    const Tolerances& tol = default_tolerances());

struct PythagorasCertificate {
  double norm_sq = 0.0;           // ||g||_w^2
  double difference_sq = 0.0;     // ||g - f_c||_w^2
  double interpolant_sq = 0.0;    // ||f_c||_w^2
  double relative_residual = 0.0; // |lhs - rhs| / max(lhs, tiny)
};
PythagorasCertificate minimality_certificate(const Kernel& k, const HwElement& competitor,
                                             const HwElement& interpolant);

// sup over the group grid of |f - sum f(lambda) T_lambda psi| for f = sum a_lambda T_lambda phi.
double expansion_check(const Kernel& k, const LatticeSpec& lat, std::span<const long> indices,
                       const Eigen::VectorXcd& phi_coefficients, const LagrangeGenerator& gen);

}  // namespace hwspace
