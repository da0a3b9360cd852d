#pragma once

#include <complex>
#include <span>
#include <vector>

namespace hwspace {

using cplx = std::complex<double>;

enum class FftDirection { kForward, kInverse };

// Unnormalized mixed-radix DFT of arbitrary length.
// Forward uses exp(-2 pi i k n / N), inverse exp(+2 pi i k n / N).
void fft(std::span<cplx> data, FftDirection dir);

// Unnormalized DFT over Z_{N_1} x ... x Z_{N_d}, row-major (last axis fastest).
void fft_nd(std::span<cplx> data, std::span<const int> orders, FftDirection dir);

}  // namespace hwspace
