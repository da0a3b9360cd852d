#pragma once

// Riesz-sequence diagnostics for the lattice translates {T_lambda phi}: annihilator
// periodizations of |phi^|^2 (L^2 criterion) and phi^ (H_w criterion), Gram matrices and
// their spectra.

#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "hwspace/kernel.hpp"
#include "hwspace/tolerances.hpp"

namespace hwspace {

enum class GramSpace { kL2, kHw };
enum class RieszVerdict { kRiesz, kNotBoundedBelow, kDegenerate };

std::string_view to_string(RieszVerdict v);

// A Lambda^perp-periodic function sampled on the fundamental domain of G^/Lambda^perp.
struct QuotientFunction {
  std::vector<Point> representatives;  // frequency coordinates of each coset representative
  std::vector<double> values;          // scale * sum over the coset
  double scale = 1.0;                  // per-term dual cell weight (1/N or 1)
  double tail_bound = 0.0;             // bound on dropped terms (real line), already scaled

  double inf() const;
  double sup() const;
};

QuotientFunction l2_periodization(const Kernel& k, const LatticeSpec& lat);
QuotientFunction hw_periodization(const Kernel& k, const LatticeSpec& lat);

// Factor linking reported periodizations to Gram eigenvalues of the full lattice system:
// s(Lambda^perp) / scale, i.e. |Lambda| on Z_N products and 1/alpha on the real line.
double periodization_to_gram_constant(const Realization& r, const LatticeSpec& lat);

struct GramMatrix {
  Eigen::MatrixXcd matrix;  // G[i, j] = <T_{l_j} phi, T_{l_i} phi>
  double eig_min = 0.0;
  double eig_max = 0.0;
  double condition = 0.0;
  bool singular = false;  // condition above the degenerate threshold
};

GramMatrix gram_matrix(const Kernel& k, const LatticeSpec& lat, std::span<const long> indices,
                       GramSpace space, const Tolerances& tol = default_tolerances());

struct RieszReport {
  double a_l2 = 0.0;
  double b_l2 = 0.0;
  double a_hw = 0.0;
  double b_hw = 0.0;
  double gram_eig_min = 0.0;  // H_w Gram of the full system or real-line section
  double gram_eig_max = 0.0;
  double l2_gram_eig_min = 0.0;
  double l2_gram_eig_max = 0.0;
  double gram_condition = 0.0;
  double oracle_constant = 0.0;
  double tail_bound_l2 = 0.0;
  double tail_bound_hw = 0.0;
  std::size_t grid_points = 0;
  std::size_t section_size = 0;
  double threshold = 1e-8;
  RieszVerdict verdict = RieszVerdict::kRiesz;
};

// `section_window` is the real-line section |m| <= window used for the Gram spectrum.
RieszReport riesz_bounds(const Kernel& k, const LatticeSpec& lat, long section_window = 32,
                         const Tolerances& tol = default_tolerances());

}  // namespace hwspace
