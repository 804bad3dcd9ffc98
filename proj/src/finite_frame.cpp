#include "rufst/finite_frame.hpp"

#include <cmath>
#include <stdexcept>

namespace rufst {

double CoefficientSet::total_energy() const {
  double s = 0.0;
  for (const AtomCoeffs& a : atoms) {
    for (const cplx& z : a.c) s += std::norm(z);
  }
  return s;
}

double CoefficientSet::atom_energy(std::size_t i) const {
  double s = 0.0;
  for (const cplx& z : atoms.at(i).c) s += std::norm(z);
  return s;
}

std::vector<cplx> modulation(const SpectralAtom& atom, int n1, int n2) {
  if (n1 < 0 || n1 >= atom.s1 || n2 < 0 || n2 >= atom.s2) {
    throw std::out_of_range("modulation: n outside [0, S_p - 1]");
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(atom.box_volume()));
  std::vector<cplx> out(static_cast<std::size_t>(atom.s1) * atom.s2);
  for (int a = 0; a < atom.s1; ++a) {
    const double k1 = static_cast<double>(atom.k1_min + a);
    for (int b = 0; b < atom.s2; ++b) {
      const double k2 = static_cast<double>(atom.k2_min + b);
      const double phase =
          -kTwoPi * (k1 * n1 / atom.s1 + k2 * n2 / atom.s2);
      out[static_cast<std::size_t>(a) * atom.s2 + b] =
          scale * cplx(std::cos(phase), std::sin(phase));
    }
  }
  return out;
}

namespace {

// c_p(n) = vol(N)^{-1/2} vol(S_p)^{-1/2} e^{+2 pi i k0.n/S}
//          * (backward size-S_p DFT of the masked box spectrum).
void analyze_atom(const SpectralAtom& atom, const GridArray& spectrum,
                  double inv_sqrt_vol_n, CoefficientSet::AtomCoeffs& out) {
  out.index = atom.index;
  out.empty = atom.empty;
  out.k1_min = atom.k1_min;
  out.k2_min = atom.k2_min;
  out.s1 = atom.s1;
  out.s2 = atom.s2;
  if (atom.empty) {
    out.c.clear();
    return;
  }
  const int s1 = atom.s1, s2 = atom.s2;
  std::vector<cplx> box(static_cast<std::size_t>(s1) * s2);
  for (int a = 0; a < s1; ++a) {
    for (int b = 0; b < s2; ++b) {
      const int k1 = atom.k1_min + a, k2 = atom.k2_min + b;
      box[static_cast<std::size_t>(a) * s2 + b] =
          spectrum.at_freq(k1, k2) * atom.mask_at(k1, k2);
    }
  }
  fft2_raw(box.data(), s1, s2, +1);
  const double scale =
      inv_sqrt_vol_n / std::sqrt(static_cast<double>(atom.box_volume()));
  for (int a = 0; a < s1; ++a) {
    for (int b = 0; b < s2; ++b) {
      const double phase = kTwoPi * (static_cast<double>(atom.k1_min) * a / s1 +
                                     static_cast<double>(atom.k2_min) * b / s2);
      box[static_cast<std::size_t>(a) * s2 + b] *=
          scale * cplx(std::cos(phase), std::sin(phase));
    }
  }
  out.c = std::move(box);
}

}  // namespace

CoefficientSet analyze(const FrameInstance& frame, const GridArray& f, Exec exec) {
  if (f.domain != Domain::Space) {
    throw std::invalid_argument("analyze: input must be space-domain");
  }
  if (f.n1 != frame.spec.n1 || f.n2 != frame.spec.n2) {
    throw std::invalid_argument("analyze: array shape does not match frame grid");
  }
  const GridArray spectrum = dft(f);
  CoefficientSet out;
  out.n1 = f.n1;
  out.n2 = f.n2;
  out.full_cover = frame.spec.full_cover();
  out.atoms.resize(frame.atoms.size());
  const double inv_sqrt_vol_n = 1.0 / std::sqrt(static_cast<double>(f.size()));
  const std::int64_t n = static_cast<std::int64_t>(frame.atoms.size());
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic) num_threads(worker_count())
    for (std::int64_t i = 0; i < n; ++i) {
      analyze_atom(frame.atoms[i], spectrum, inv_sqrt_vol_n, out.atoms[i]);
    }
  } else {
    for (std::int64_t i = 0; i < n; ++i) {
      analyze_atom(frame.atoms[i], spectrum, inv_sqrt_vol_n, out.atoms[i]);
    }
  }
  return out;
}

namespace {

// Box spectrum contribution of one atom: mask * (forward size-S_p DFT of the
// phase-twisted coefficients).
std::vector<cplx> synth_atom_box(const SpectralAtom& atom,
                                 const CoefficientSet::AtomCoeffs& ac,
                                 double sqrt_vol_n) {
  const int s1 = ac.s1, s2 = ac.s2;
  std::vector<cplx> box(ac.c.begin(), ac.c.end());
  for (int a = 0; a < s1; ++a) {
    for (int b = 0; b < s2; ++b) {
      const double phase = -kTwoPi * (static_cast<double>(ac.k1_min) * a / s1 +
                                      static_cast<double>(ac.k2_min) * b / s2);
      box[static_cast<std::size_t>(a) * s2 + b] *= cplx(std::cos(phase), std::sin(phase));
    }
  }
  fft2_raw(box.data(), s1, s2, -1);
  // the Parseval family is {vol(N)^{1/2} F_{p,n}} under the coefficient
  // scaling used by analyze, so the adjoint carries vol(N)^{+1/2}
  const double scale =
      sqrt_vol_n / std::sqrt(static_cast<double>(atom.box_volume()));
  for (int a = 0; a < s1; ++a) {
    for (int b = 0; b < s2; ++b) {
      const int k1 = ac.k1_min + a, k2 = ac.k2_min + b;
      box[static_cast<std::size_t>(a) * s2 + b] *= scale * atom.mask_at(k1, k2);
    }
  }
  return box;
}

}  // namespace

GridArray synthesize(const FrameInstance& frame, const CoefficientSet& coeffs, Exec exec) {
  if (coeffs.n1 != frame.spec.n1 || coeffs.n2 != frame.spec.n2 ||
      coeffs.atoms.size() != frame.atoms.size()) {
    throw std::invalid_argument("synthesize: coefficient set does not match frame");
  }
  const std::int64_t n = static_cast<std::int64_t>(frame.atoms.size());
  std::vector<std::vector<cplx>> boxes(frame.atoms.size());
  const double sqrt_vol_n =
      std::sqrt(static_cast<double>(frame.spec.n1) * frame.spec.n2);

  for (std::int64_t i = 0; i < n; ++i) {
    const CoefficientSet::AtomCoeffs& ac = coeffs.atoms[i];
    if (ac.empty) continue;
    if (ac.s1 != frame.atoms[i].s1 || ac.s2 != frame.atoms[i].s2 ||
        ac.c.size() != static_cast<std::size_t>(frame.atoms[i].box_volume())) {
      throw std::invalid_argument("synthesize: coefficient shape mismatch");
    }
  }

  auto run_one = [&](std::int64_t i) {
    const CoefficientSet::AtomCoeffs& ac = coeffs.atoms[i];
    if (ac.empty) return;
    boxes[i] = synth_atom_box(frame.atoms[i], ac, sqrt_vol_n);
  };

  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic) num_threads(worker_count())
    for (std::int64_t i = 0; i < n; ++i) run_one(i);
  } else {
    for (std::int64_t i = 0; i < n; ++i) run_one(i);
  }

  // Accumulate in atom order so the result is independent of scheduling.
  GridArray spectrum(frame.spec.n1, frame.spec.n2, Domain::Frequency);
  for (std::int64_t i = 0; i < n; ++i) {
    if (boxes[i].empty()) continue;
    const CoefficientSet::AtomCoeffs& ac = coeffs.atoms[i];
    for (int a = 0; a < ac.s1; ++a) {
      for (int b = 0; b < ac.s2; ++b) {
        spectrum.at_freq(ac.k1_min + a, ac.k2_min + b) +=
            boxes[i][static_cast<std::size_t>(a) * ac.s2 + b];
      }
    }
  }
  return idft(spectrum);
}

double parseval_residual(const FrameInstance& frame, const GridArray& f) {
  if (!frame.spec.full_cover()) {
    throw std::invalid_argument("parseval_residual: frame is not full-cover");
  }
  const double nrm = frobenius_norm(f);
  if (nrm == 0.0) return 0.0;
  const CoefficientSet coeffs = analyze(frame, f);
  return std::abs(coeffs.total_energy() - nrm * nrm) / (nrm * nrm);
}

}  // namespace rufst
