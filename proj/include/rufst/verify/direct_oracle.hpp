#pragma once

#include "rufst/finite_frame.hpp"

namespace rufst::verify {

/// Reference transforms computed by literal summation. These deliberately
/// share no code with the FFT-based production path so they can serve as an
/// independent oracle for it.
GridArray dft_direct(const GridArray& f);
GridArray idft_direct(const GridArray& fhat);

/// c_p(n) = vol(N)^{-1/2} sum_{k in box} F_hat(k) mask_p(k) conj(E_{p,n}(k)),
/// every sum written out directly.
CoefficientSet analyze_direct(const FrameInstance& frame, const GridArray& f);

}  // namespace rufst::verify
