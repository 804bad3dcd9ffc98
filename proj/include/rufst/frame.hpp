#pragma once

#include <string>
#include <vector>

#include "rufst/core_math.hpp"
#include "rufst/grid.hpp"
#include "rufst/threading.hpp"

namespace rufst {

/// Parameters of a sampled rotational covering frame: radial shell width A,
/// base angular resolution B (order of the invariance group G), grid size,
/// and the highest radial level M that gets built.
struct FrameSpec {
  double A = 1.0;
  int B = 1;
  int n1 = 0;
  int n2 = 0;
  int M = 1;

  void validate() const;

  int freq_lo1() const { return -(n1 / 2); }
  int freq_lo2() const { return -(n2 / 2); }
  /// Largest |k| over the centered lattice Omega.
  double max_lattice_radius() const;
  /// Partition of unity equals 1 at every lattice point iff A*M covers the
  /// whole lattice ball.
  bool full_cover() const { return A * M >= max_lattice_radius(); }
  /// Smallest M with A*M >= max |k| for this grid.
  static int full_cover_level(double A, int n1, int n2);
};

struct AtomIndex {
  bool low_pass = false;
  int m = 0;           // radial level, >= 1 for band atoms
  std::int64_t j = 0;  // angle index in G_m

  static AtomIndex lowpass() { return AtomIndex{true, 0, 0}; }
  static AtomIndex band(int m, std::int64_t j) { return AtomIndex{false, m, j}; }
  GroupElement rotation(int base_order) const { return GroupElement{m, base_order, j}; }
  std::string to_string() const;
  bool operator==(const AtomIndex& o) const = default;
  auto operator<=>(const AtomIndex& o) const = default;
};

/// Fourier-domain samples of one frame generator on the centered lattice,
/// with the bounding box of its nonzero samples. Mask values lie in [0, 1].
struct SpectralAtom {
  AtomIndex index;
  int n1 = 0;
  int n2 = 0;
  RealArray mask;  // centered layout, same convention as GridArray frequency
  bool empty = false;
  int k1_min = 0;  // bbox origin in frequency coordinates
  int k2_min = 0;
  int s1 = 1;  // bbox side lengths S_p in lattice points
  int s2 = 1;

  double mask_at(int k1, int k2) const {
    return mask.at(k1 + n1 / 2, k2 + n2 / 2);
  }
  std::int64_t box_volume() const { return static_cast<std::int64_t>(s1) * s2; }
};

struct FrameInstance {
  FrameSpec spec;
  std::vector<SpectralAtom> atoms;  // LowPass first, then (m, j) ascending

  const SpectralAtom& lowpass() const { return atoms.front(); }
  /// Position of an atom in `atoms` (1 + sum of lower-level group orders + j).
  std::size_t atom_pos(const AtomIndex& idx) const;
  const SpectralAtom& atom(const AtomIndex& idx) const { return atoms[atom_pos(idx)]; }
};

std::int64_t band_atom_count(const FrameSpec& spec, int up_to_level);

/// LowPass plus all Band(m, r), 1 <= m <= M, r in G_m, in deterministic order.
std::vector<AtomIndex> index_set(const FrameSpec& spec);

/// One band index per coset of G in G_m (j < m*), per level m <= M.
std::vector<AtomIndex> coset_representatives(const FrameSpec& spec);

SpectralAtom build_atom(const FrameSpec& spec, const AtomIndex& idx);

FrameInstance build_frame(const FrameSpec& spec, Exec exec = Exec::Parallel);

struct PartitionReport {
  double max_dev_inside = 0.0;   // max ||sum of squares| - 1| over |k| <= A M
  double max_leak_outside = 0.0; // max sum of squares over |k| >= A (M+1)
};

PartitionReport verify_partition(const FrameInstance& frame);

/// Numerical diameter of the wedge W_m (dense boundary sampling).
/// Requires m* B >= 4.
double wedge_diameter(const FrameSpec& spec, int m);

/// Euclidean bound on wedge diameters, valid for every m with m* B >= 4:
/// combines the radial bound 2A + 2 pi^2 A / B^2 with the tangential bound
/// 8 pi A / B.
double wedge_diameter_bound(const FrameSpec& spec);

/// Mask-weighted spectral centroid of a band atom, in polar form.
PolarPoint direction_diagnostic(const SpectralAtom& atom);

}  // namespace rufst
