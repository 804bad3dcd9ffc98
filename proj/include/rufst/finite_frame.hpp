#pragma once

#include <vector>

#include "rufst/fft.hpp"
#include "rufst/frame.hpp"
#include "rufst/grid.hpp"
#include "rufst/threading.hpp"

namespace rufst {

/// Frame coefficients of one array: per atom, a complex array of shape S_p
/// with c_p(n) = vol(N)^{1/2} <F, F_{p,n}>. Atoms with no lattice support
/// carry no coefficients.
struct CoefficientSet {
  struct AtomCoeffs {
    AtomIndex index;
    bool empty = false;
    int k1_min = 0;
    int k2_min = 0;
    int s1 = 1;
    int s2 = 1;
    std::vector<cplx> c;  // row-major over n in [0, s1) x [0, s2)
  };

  int n1 = 0;
  int n2 = 0;
  bool full_cover = true;  // Parseval only guaranteed when true
  std::vector<AtomCoeffs> atoms;

  double total_energy() const;
  double atom_energy(std::size_t i) const;
};

/// The normalized exponential E_{p,n} on the atom's box lattice points,
/// row-major over the box. n must lie in [0, S_p - 1].
std::vector<cplx> modulation(const SpectralAtom& atom, int n1, int n2);

CoefficientSet analyze(const FrameInstance& frame, const GridArray& f,
                       Exec exec = Exec::Parallel);

/// Adjoint of analyze; for full-cover frames synthesize(analyze(F)) == F.
GridArray synthesize(const FrameInstance& frame, const CoefficientSet& coeffs,
                     Exec exec = Exec::Parallel);

/// | sum |c|^2 - ||F||^2 | / ||F||^2 (0 for the zero array).
double parseval_residual(const FrameInstance& frame, const GridArray& f);

}  // namespace rufst
