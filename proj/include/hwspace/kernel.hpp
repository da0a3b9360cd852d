#pragma once

// The harmonic Hilbert space H_w: elements stored by their Fourier coefficients on the
// dual grid, the weighted inner product, translation, point evaluation, and the
// reproducing kernel phi with phi^ = w^{-2}.

#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "hwspace/group.hpp"
#include "hwspace/weight.hpp"

namespace hwspace {

class HwElement {
 public:
  HwElement(RealizationPtr realization, Eigen::VectorXcd hat);

  static HwElement zero(RealizationPtr realization);
  static HwElement from_group_samples(RealizationPtr realization, std::span<const cplx> samples);

  const Realization& realization() const { return *realization_; }
  const RealizationPtr& realization_ptr() const { return realization_; }
  const Eigen::VectorXcd& hat() const { return hat_; }

  // Point evaluation through the inversion integral.
  cplx operator()(const Point& x) const;
  // Values on the whole group grid (inverse FFT on cyclic products).
  std::vector<cplx> group_samples() const;

  HwElement& operator+=(const HwElement& other);
  HwElement& operator-=(const HwElement& other);
  HwElement& operator*=(cplx s);
  friend HwElement operator+(HwElement a, const HwElement& b) { return a += b; }
  friend HwElement operator-(HwElement a, const HwElement& b) { return a -= b; }
  friend HwElement operator*(cplx s, HwElement a) { return a *= s; }

 private:
  RealizationPtr realization_;
  Eigen::VectorXcd hat_;
};

struct Kernel {
  RealizationPtr realization;
  Weight weight;
  Eigen::VectorXd phi_hat;    // w^{-2} on the dual nodes
  Eigen::VectorXd weight_sq;  // w^2, +inf outside a band
  double tail_bound = 0.0;    // sup_x |phi(x) - phi_truncated(x)| <= tail_bound (real line)

  const Realization& space() const { return *realization; }
  HwElement phi() const;
  cplx phi_at(const Point& x) const;
};

// Refuses (kNotInL2) when w^{-1} is not square integrable; box bands on the real line
// must end on a panel boundary.
Kernel synthesize_kernel(const Weight& w, RealizationPtr realization);

// <f, h>_w = int f^ conj(h^) w^2. Throws kNonFinite if either element has mass where
// w is infinite.
cplx hw_inner(const Kernel& k, const HwElement& f, const HwElement& h);
double hw_norm(const Kernel& k, const HwElement& f);
cplx l2_inner(const HwElement& f, const HwElement& h);
double l2_norm(const HwElement& f);

// (T_x f)^(gamma) = conj(<x, gamma>) f^(gamma); x must lie on the group grid.
HwElement translate(const HwElement& f, const Point& x);

// |f(x) - <f, T_x phi>_w|
double reproduce(const HwElement& f, const Point& x, const Kernel& k);

// (f(lambda)) over the given lattice indices.
std::vector<cplx> sample(const HwElement& f, const LatticeSpec& lat, std::span<const long> indices);

struct KernelDiagnostics {
  double phi_at_zero = 0.0;
  double norm_sq = 0.0;            // ||phi||_w^2
  double norm_residual = 0.0;      // relative |phi(0) - ||phi||_w^2|
  double hermitian_residual = 0.0; // max |phi(-x) - conj phi(x)| over the group grid
};
KernelDiagnostics diagnose_kernel(const Kernel& k);

// Random element with white coefficients in H_w: f^ = w^{-1} z, z complex Gaussian.
HwElement random_element(const Kernel& k, std::mt19937_64& rng);
// Random kernel expansion sum_{i<terms} a_i T_{x_i} phi with grid points x_i and
// complex Gaussian a_i.
HwElement random_kernel_expansion(const Kernel& k, std::mt19937_64& rng, int terms);

struct SamplingConstant {
  double sup_ratio = 0.0;  // max ||Qf||_2 / ||f||_w over the suite
  std::size_t suite_size = 0;
};

// Empirical embedding constant of Q: H_w -> l^2(Lambda). The suite mixes random kernel
// expansions with 1..3 terms; real-line sampling uses |m| <= window.
SamplingConstant measure_sampling_constant(const Kernel& k, const LatticeSpec& lat,
                                           std::size_t suite_size, std::uint64_t seed,
                                           long window = 32);

}  // namespace hwspace
