#pragma once

#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "hwspace/kernel.hpp"
#include "../oracles.hpp"

namespace testing {

using hwspace::cplx;

inline std::vector<cplx> random_vector(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  std::vector<cplx> v(n);
  for (auto& x : v) {
    const double re = gauss(rng);
    x = {re, gauss(rng)};
  }
  return v;
}

inline Eigen::VectorXcd to_eigen(const std::vector<cplx>& v) {
  return Eigen::Map<const Eigen::VectorXcd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

inline double sup_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

inline hwspace::Kernel cyclic_kernel(std::vector<int> orders, const hwspace::Weight& w) {
  return hwspace::synthesize_kernel(w, hwspace::make_realization(hwspace::GroupSpec::cyclic(std::move(orders))));
}

inline oracle::RadialWeight poly(double s) {
  return [s](double r) { return std::pow(1.0 + r, s); };
}

}  // namespace testing
