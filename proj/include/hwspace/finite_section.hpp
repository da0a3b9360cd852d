#pragma once

// Minimal-norm interpolation on finite sections Lambda_F of the lattice (Gram systems),
// the projections P_F onto span{T_lambda phi : lambda in Lambda_F}, and the convergence
// of g_F = P_F g to the full interpolant g as the sections grow.

#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "hwspace/interpolation.hpp"
#include "hwspace/tolerances.hpp"

namespace hwspace {

using LatticeData = std::function<cplx(long index)>;

// Lattice indices with |lambda| <= radius in the group metric (centered balls).
std::vector<long> lattice_ball(const Realization& r, const LatticeSpec& lat, double radius);

struct SectionFamily {
  LatticeSpec lattice;
  std::vector<double> radii;  // increasing

  std::vector<long> section(const Realization& r, std::size_t i) const {
    return lattice_ball(r, lattice, radii.at(i));
  }
};

struct FiniteInterpolant {
  Interpolant interpolant;  // generator phi, coefficients a solving phi(l - l') a = c_F
  double condition = 0.0;
  int refinement_steps = 0;
};

// Throws kSingularGram (with the condition number) when the section Gram is singular.
FiniteInterpolant finite_min_norm(const Kernel& k, const LatticeSpec& lat, std::span<const long> section,
                                  const Eigen::VectorXcd& data, const Tolerances& tol = default_tolerances());

struct SectionProjection {
  Interpolant via_samples;     // Gram solve on g restricted to Lambda_F
  Interpolant via_projection;  // normal equations from H_w inner products
  double discrepancy = 0.0;    // ||via_samples - via_projection||_w
};

SectionProjection section_projection(const Kernel& k, const LatticeSpec& lat, const HwElement& g,
                                     std::span<const long> section, const Tolerances& tol = default_tolerances());

struct ConvergenceRow {
  double radius = 0.0;
  std::size_t section_size = 0;
  double hw_error = 0.0;
  double sup_error = 0.0;
  double gram_condition = 0.0;
};

struct ConvergenceStudy {
  std::vector<ConvergenceRow> rows;
  double embedding_constant = 0.0;  // sqrt(phi(0)) bounds sup|f| / ||f||_w
  bool monotone = true;             // e_{r+1} <= e_r + 1e-12
};

ConvergenceStudy convergence_study(const Kernel& k, const LatticeSpec& lat, const LatticeData& data,
                                   const HwElement& reference, std::span<const double> radii,
                                   const Tolerances& tol = default_tolerances());

struct RealLineReference {
  Interpolant interpolant;
  double coefficient_change = 0.0;  // between the two largest radii
  bool stable = false;
};

// Real-line stand-in for the full interpolant: the largest-radius section solution, certified
// by the coefficient change against the next-largest radius.
RealLineReference real_line_reference(const Kernel& k, const LatticeSpec& lat, const LatticeData& data,
                                      std::span<const double> radii, const Tolerances& tol = default_tolerances());

}  // namespace hwspace
