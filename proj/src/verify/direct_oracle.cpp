#include "rufst/verify/direct_oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace rufst::verify {

GridArray dft_direct(const GridArray& f) {
  if (f.domain != Domain::Space) {
    throw std::invalid_argument("dft_direct: input must be space-domain");
  }
  GridArray out(f.n1, f.n2, Domain::Frequency);
  for (int k1 = out.freq_lo1(); k1 < out.freq_lo1() + f.n1; ++k1) {
    for (int k2 = out.freq_lo2(); k2 < out.freq_lo2() + f.n2; ++k2) {
      cplx acc(0.0, 0.0);
      for (int a = 0; a < f.n1; ++a) {
        for (int b = 0; b < f.n2; ++b) {
          const double phase = -kTwoPi * (static_cast<double>(k1) * a / f.n1 +
                                          static_cast<double>(k2) * b / f.n2);
          acc += f.at(a, b) * cplx(std::cos(phase), std::sin(phase));
        }
      }
      out.at_freq(k1, k2) = acc;
    }
  }
  return out;
}

GridArray idft_direct(const GridArray& fhat) {
  if (fhat.domain != Domain::Frequency) {
    throw std::invalid_argument("idft_direct: input must be frequency-domain");
  }
  GridArray out(fhat.n1, fhat.n2, Domain::Space);
  const double inv_vol = 1.0 / static_cast<double>(fhat.size());
  for (int a = 0; a < fhat.n1; ++a) {
    for (int b = 0; b < fhat.n2; ++b) {
      cplx acc(0.0, 0.0);
      for (int k1 = fhat.freq_lo1(); k1 < fhat.freq_lo1() + fhat.n1; ++k1) {
        for (int k2 = fhat.freq_lo2(); k2 < fhat.freq_lo2() + fhat.n2; ++k2) {
          const double phase = kTwoPi * (static_cast<double>(k1) * a / fhat.n1 +
                                         static_cast<double>(k2) * b / fhat.n2);
          acc += fhat.at_freq(k1, k2) * cplx(std::cos(phase), std::sin(phase));
        }
      }
      out.at(a, b) = inv_vol * acc;
    }
  }
  return out;
}

CoefficientSet analyze_direct(const FrameInstance& frame, const GridArray& f) {
  if (f.n1 != frame.spec.n1 || f.n2 != frame.spec.n2) {
    throw std::invalid_argument("analyze_direct: shape mismatch");
  }
  const GridArray spectrum = dft_direct(f);
  const double inv_sqrt_vol = 1.0 / std::sqrt(static_cast<double>(f.size()));

  CoefficientSet out;
  out.n1 = f.n1;
  out.n2 = f.n2;
  out.full_cover = frame.spec.full_cover();
  for (const SpectralAtom& atom : frame.atoms) {
    CoefficientSet::AtomCoeffs ac;
    ac.index = atom.index;
    ac.empty = atom.empty;
    ac.k1_min = atom.k1_min;
    ac.k2_min = atom.k2_min;
    ac.s1 = atom.s1;
    ac.s2 = atom.s2;
    if (!atom.empty) {
      const double box_scale = 1.0 / std::sqrt(static_cast<double>(atom.box_volume()));
      ac.c.resize(static_cast<std::size_t>(atom.box_volume()));
      for (int n1 = 0; n1 < atom.s1; ++n1) {
        for (int n2 = 0; n2 < atom.s2; ++n2) {
          cplx acc(0.0, 0.0);
          for (int k1 = atom.k1_min; k1 < atom.k1_min + atom.s1; ++k1) {
            for (int k2 = atom.k2_min; k2 < atom.k2_min + atom.s2; ++k2) {
              // conj(E_{p,n}(k)) = vol(S_p)^{-1/2} e^{+2 pi i k.n/S_p}
              const double phase =
                  kTwoPi * (static_cast<double>(k1) * n1 / atom.s1 +
                            static_cast<double>(k2) * n2 / atom.s2);
              acc += spectrum.at_freq(k1, k2) * atom.mask_at(k1, k2) * box_scale *
                     cplx(std::cos(phase), std::sin(phase));
            }
          }
          ac.c[static_cast<std::size_t>(n1) * atom.s2 + n2] = inv_sqrt_vol * acc;
        }
      }
    }
    out.atoms.push_back(std::move(ac));
  }
  return out;
}

}  // namespace rufst::verify
