// dft.hpp - unitary DFT/IDFT with a radix-2 fast path

#pragma once

#include "afdm/complex_vec.hpp"

namespace afdm {

/// Unitary forward DFT: X[k] = (1/sqrt(N)) * sum_n x[n] e^{-j2pi kn/N}.
/// Radix-2 FFT for power-of-two lengths, direct summation otherwise.
ComplexVec dft_unitary(const ComplexVec& x);

/// Unitary inverse DFT (adjoint of dft_unitary).
ComplexVec idft_unitary(const ComplexVec& x);

/// In-place unnormalized transform, power-of-two length only.
/// sign = -1 gives the forward DFT kernel, +1 the inverse kernel.
void fft_pow2_inplace(ComplexVec& x, int sign);

inline bool is_pow2(std::size_t n) {
    return n != 0 && (n & (n - 1)) == 0;
}

}  // namespace afdm
