#pragma once

#include "rufst/grid.hpp"

namespace rufst {

/// Forward DFT, unnormalized: F_hat(k) = sum_n F(n) exp(-2*pi*i*k.n/N).
/// Input must be space-domain; output is frequency-domain in centered layout.
GridArray dft(const GridArray& f);

/// Inverse DFT carrying the 1/vol(N) factor; idft(dft(F)) == F.
GridArray idft(const GridArray& fhat);

/// In-place unnormalized transforms of a raw complex buffer of shape
/// rows x cols (row-major, standard DFT bin order). sign = -1 forward,
/// sign = +1 backward. Used for the small per-box transforms.
void fft2_raw(cplx* data, int rows, int cols, int sign);

}  // namespace rufst
