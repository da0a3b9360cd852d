#include "hwspace/fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hwspace {
namespace {

int smallest_factor(int n) {
  if (n % 2 == 0) return 2;
  for (int p = 3; p * p <= n; p += 2) {
    if (n % p == 0) return p;
  }
  return n;
}

// exp(sign * 2 pi i * num / den) with the argument reduced exactly.
cplx root(long num, long den, double sign) {
  long r = num % den;
  if (r < 0) r += den;
  const double angle = sign * 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(den);
  return {std::cos(angle), std::sin(angle)};
}

void transform(const cplx* in, std::size_t stride, cplx* out, int n, double sign,
               std::vector<cplx>& scratch) {
  if (n == 1) {
    out[0] = in[0];
    return;
  }
  const int p = smallest_factor(n);
  if (p == n) {
    for (int k = 0; k < n; ++k) {
      cplx acc = 0.0;
      for (int j = 0; j < n; ++j) acc += in[j * stride] * root(static_cast<long>(j) * k, n, sign);
      out[k] = acc;
    }
    return;
  }
  const int m = n / p;
  // sub-transform r lives in out[r*m, (r+1)*m)
  for (int r = 0; r < p; ++r) transform(in + r * stride, stride * p, out + r * m, m, sign, scratch);
  scratch.assign(static_cast<std::size_t>(n), cplx{});
  for (int k = 0; k < m; ++k) {
    for (int q = 0; q < p; ++q) {
      const int idx = k + q * m;
      cplx acc = 0.0;
      for (int r = 0; r < p; ++r) acc += out[r * m + k] * root(static_cast<long>(r) * idx, n, sign);
      scratch[idx] = acc;
    }
  }
  std::copy(scratch.begin(), scratch.end(), out);
}

}  // namespace

void fft(std::span<cplx> data, FftDirection dir) {
  const int n = static_cast<int>(data.size());
  if (n <= 1) return;
  const double sign = dir == FftDirection::kForward ? -1.0 : 1.0;
  std::vector<cplx> input(data.begin(), data.end());
  std::vector<cplx> scratch;
  transform(input.data(), 1, data.data(), n, sign, scratch);
}

void fft_nd(std::span<cplx> data, std::span<const int> orders, FftDirection dir) {
  std::size_t total = 1;
  for (int n : orders) total *= static_cast<std::size_t>(n);
  if (total != data.size()) throw std::invalid_argument("fft_nd: size does not match group orders");

  std::vector<cplx> line;
  std::size_t inner = total;
  for (std::size_t axis = 0; axis < orders.size(); ++axis) {
    const auto n = static_cast<std::size_t>(orders[axis]);
    inner /= n;
    const std::size_t outer = total / (inner * n);
    line.resize(n);
    for (std::size_t o = 0; o < outer; ++o) {
      for (std::size_t i = 0; i < inner; ++i) {
        const std::size_t base = o * n * inner + i;
        for (std::size_t k = 0; k < n; ++k) line[k] = data[base + k * inner];
        fft(line, dir);
        for (std::size_t k = 0; k < n; ++k) data[base + k * inner] = line[k];
      }
    }
  }
}

}  // namespace hwspace
