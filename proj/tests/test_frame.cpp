#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "rufst/fft.hpp"
#include "rufst/frame.hpp"

using namespace rufst;

namespace {

// clockwise quarter turns of a lattice point (g^{-1} k for g = t quarter turns)
std::pair<int, int> turn_back(int k1, int k2, int t) {
  for (int s = 0; s < t; ++s) {
    const int x = k2, y = -k1;
    k1 = x;
    k2 = y;
  }
  return {k1, k2};
}

}  // namespace

TEST_CASE("index_set counts and ordering") {
  const FrameSpec spec{2.0, 8, 33, 33, 4};
  const std::vector<AtomIndex> idx = index_set(spec);
  REQUIRE(idx.size() == 89);  // 1 + 8 + 16 + 32 + 32
  CHECK(idx[0].low_pass);
  // shell populations match the first four scales at B = 8
  std::vector<int> per_level(5, 0);
  for (std::size_t i = 1; i < idx.size(); ++i) per_level[static_cast<std::size_t>(idx[i].m)]++;
  CHECK(per_level[1] == 8);
  CHECK(per_level[2] == 16);
  CHECK(per_level[3] == 32);
  CHECK(per_level[4] == 32);

  const FrameSpec tiny{1.0, 1, 9, 9, 1};
  CHECK(index_set(tiny).size() == 2);
}

TEST_CASE("coset representatives: counts and disjoint union") {
  CHECK(coset_representatives(FrameSpec{2.0, 8, 33, 33, 1}).size() == 1);
  const FrameSpec spec{2.0, 8, 33, 33, 4};
  const std::vector<AtomIndex> reps = coset_representatives(spec);
  REQUIRE(reps.size() == 11);  // 1 + 2 + 4 + 4

  const std::vector<AtomIndex> all = index_set(spec);
  std::set<std::pair<int, std::int64_t>> covered;
  for (const GroupElement& r : group_elements(1, spec.B)) {
    for (const AtomIndex& q : reps) {
      const GroupElement moved = r.compose(q.rotation(spec.B));
      const bool inserted = covered.insert({q.m, moved.index}).second;
      CHECK(inserted);  // no duplicates across the G-orbits
    }
  }
  CHECK(covered.size() == all.size() - 1);  // no omissions
}

TEST_CASE("build_atom: low-pass peak, band peak, wedge support") {
  const FrameSpec spec{2.0, 8, 33, 33, 4};
  const SpectralAtom low = build_atom(spec, AtomIndex::lowpass());
  CHECK(low.mask_at(0, 0) == 1.0);

  // m A integer: the mask equals 1 exactly at (m A, 0) for the canonical atom
  const SpectralAtom band = build_atom(spec, AtomIndex::band(3, 0));
  CHECK(band.mask_at(6, 0) == 1.0);

  // zero outside the rotated wedge, checked against polar bounds
  for (int m = 1; m <= spec.M; ++m) {
    const std::int64_t order = pow2_ceil(m) * spec.B;
    for (std::int64_t j : {std::int64_t(0), std::int64_t(1), order - 1}) {
      const SpectralAtom atom = build_atom(spec, AtomIndex::band(m, j));
      const double angle = atom.index.rotation(spec.B).angle();
      const double bm = sector_half_width(m, spec.B);
      for (int k1 = spec.freq_lo1(); k1 < spec.freq_lo1() + spec.n1; ++k1) {
        for (int k2 = spec.freq_lo2(); k2 < spec.freq_lo2() + spec.n2; ++k2) {
          const double v = atom.mask_at(k1, k2);
          CHECK(v >= 0.0);
          CHECK(v <= 1.0);
          if (v == 0.0) continue;
          const double rho = std::sqrt(static_cast<double>(k1) * k1 +
                                       static_cast<double>(k2) * k2);
          CHECK(std::abs(rho - m * spec.A) < spec.A);
          const double phi = std::atan2(static_cast<double>(k2), static_cast<double>(k1));
          CHECK(std::abs(wrap_angle(phi - angle)) < bm + 1e-12);
        }
      }
    }
  }
}

TEST_CASE("build_frame: atom count formula and validation") {
  const FrameSpec spec{2.0, 8, 17, 17, 3};
  const FrameInstance frame = build_frame(spec);
  CHECK(frame.atoms.size() == static_cast<std::size_t>(1 + band_atom_count(spec, spec.M)));
  for (std::size_t i = 0; i < frame.atoms.size(); ++i) {
    CHECK(frame.atom_pos(frame.atoms[i].index) == i);
  }
  CHECK_THROWS_AS(build_frame(FrameSpec{2.0, 8, 0, 0, 3}), std::invalid_argument);
  CHECK_THROWS_AS(build_frame(FrameSpec{2.0, 8, 33, 33, 0}), std::invalid_argument);
  CHECK_THROWS_AS(build_frame(FrameSpec{-1.0, 8, 33, 33, 3}), std::invalid_argument);
}

TEST_CASE("partition of unity at full cover, exact zero beyond the last shell") {
  const int full = FrameSpec::full_cover_level(2.0, 33, 33);
  CHECK(full == 12);
  const FrameSpec spec{2.0, 8, 33, 33, full};
  CHECK(spec.full_cover());
  const FrameInstance frame = build_frame(spec);
  const PartitionReport rep = verify_partition(frame);
  CHECK(rep.max_dev_inside < 1e-12);
  CHECK(rep.max_leak_outside == 0.0);

  // non-full-cover: still 1 inside A M, identically zero beyond A (M + 1)
  const FrameSpec partial{1.0, 4, 33, 33, 5};
  CHECK(!partial.full_cover());
  const PartitionReport rep2 = verify_partition(build_frame(partial));
  CHECK(rep2.max_dev_inside < 1e-12);
  CHECK(rep2.max_leak_outside == 0.0);

  // the origin alone is covered by the low-pass atom
  const SpectralAtom low = build_frame(FrameSpec{2.0, 8, 9, 9, 1}).lowpass();
  CHECK(low.mask_at(0, 0) == 1.0);
}

TEST_CASE("serial and parallel frame builds agree bit-exactly") {
  const FrameSpec spec{2.0, 8, 17, 17, 6};
  const FrameInstance a = build_frame(spec, Exec::Serial);
  const FrameInstance b = build_frame(spec, Exec::Parallel);
  REQUIRE(a.atoms.size() == b.atoms.size());
  for (std::size_t i = 0; i < a.atoms.size(); ++i) {
    CHECK(a.atoms[i].mask.v == b.atoms[i].mask.v);
    CHECK(a.atoms[i].s1 == b.atoms[i].s1);
    CHECK(a.atoms[i].s2 == b.atoms[i].s2);
  }
}

TEST_CASE("mask rotation equivariance is bit-exact for quarter turns") {
  for (int b : {1, 2, 4}) {
    const FrameSpec spec{1.5, b, 9, 9, 3};
    for (int m = 1; m <= spec.M; ++m) {
      const std::int64_t order = pow2_ceil(m) * b;
      for (const GroupElement& g : group_elements(1, b)) {
        const int t = static_cast<int>(((4 * g.index) / g.order()) % 4);
        for (std::int64_t j = 0; j < order; ++j) {
          const GroupElement moved = g.compose(GroupElement{m, b, j});
          const SpectralAtom lhs = build_atom(spec, AtomIndex::band(m, moved.index));
          const SpectralAtom rhs = build_atom(spec, AtomIndex::band(m, j));
          for (int k1 = spec.freq_lo1(); k1 < spec.freq_lo1() + spec.n1; ++k1) {
            for (int k2 = spec.freq_lo2(); k2 < spec.freq_lo2() + spec.n2; ++k2) {
              const auto [q1, q2] = turn_back(k1, k2, t);
              CHECK(lhs.mask_at(k1, k2) == rhs.mask_at(q1, q2));
            }
          }
        }
      }
    }
  }
}

TEST_CASE("bounding boxes contain every nonzero sample and stay bounded") {
  const FrameSpec spec{2.0, 8, 33, 33, 12};
  const FrameInstance frame = build_frame(spec);
  const double side_bound = std::floor(wedge_diameter_bound(spec)) + 1.0;
  for (const SpectralAtom& atom : frame.atoms) {
    if (atom.empty) {
      CHECK(atom.s1 == 1);
      CHECK(atom.s2 == 1);
      for (double v : atom.mask.v) CHECK(v == 0.0);
      continue;
    }
    CHECK(atom.box_volume() <= static_cast<std::int64_t>(spec.n1) * spec.n2);
    for (int k1 = spec.freq_lo1(); k1 < spec.freq_lo1() + spec.n1; ++k1) {
      for (int k2 = spec.freq_lo2(); k2 < spec.freq_lo2() + spec.n2; ++k2) {
        if (atom.mask_at(k1, k2) == 0.0) continue;
        CHECK(k1 >= atom.k1_min);
        CHECK(k1 < atom.k1_min + atom.s1);
        CHECK(k2 >= atom.k2_min);
        CHECK(k2 < atom.k2_min + atom.s2);
      }
    }
    if (!atom.index.low_pass && pow2_ceil(atom.index.m) * spec.B >= 4) {
      CHECK(atom.s1 <= side_bound);
      CHECK(atom.s2 <= side_bound);
    }
  }
}

TEST_CASE("wedge diameters: bound, non-monotonicity, precondition") {
  const FrameSpec spec{2.0, 8, 33, 33, 4};
  const double bound = wedge_diameter_bound(spec);
  double prev = -1.0;
  bool saw_decrease = false, saw_increase = false;
  for (int m = 1; m <= 64; ++m) {
    const double d = wedge_diameter(spec, m);
    CHECK(d <= bound);
    if (prev >= 0.0) {
      saw_decrease |= d < prev - 1e-9;
      saw_increase |= d > prev + 1e-9;
    }
    prev = d;
  }
  CHECK(saw_decrease);
  CHECK(saw_increase);

  // m* B < 4 rejected
  CHECK_THROWS_AS(wedge_diameter(FrameSpec{2.0, 2, 33, 33, 4}, 1), std::invalid_argument);
  CHECK_THROWS_AS(wedge_diameter(FrameSpec{2.0, 1, 33, 33, 4}, 2), std::invalid_argument);
  CHECK_NOTHROW(wedge_diameter(FrameSpec{2.0, 2, 33, 33, 4}, 2));
}

TEST_CASE("direction diagnostic: symmetry, radial range, equivariance") {
  const FrameSpec spec{2.0, 8, 33, 33, 4};
  const FrameInstance frame = build_frame(spec);

  for (int m = 1; m <= spec.M; ++m) {
    const SpectralAtom& canonical = frame.atom(AtomIndex::band(m, 0));
    const PolarPoint centroid = direction_diagnostic(canonical);
    CHECK(std::abs(centroid.phi) < 1e-10);  // symmetric mask about the axis
    CHECK(centroid.rho >= spec.A * (m - 1));
    CHECK(centroid.rho <= spec.A * (m + 1));
  }

  // quarter-turn rotation shifts the centroid angle by exactly pi/2
  const FrameSpec spec4{2.0, 4, 33, 33, 3};
  const FrameInstance frame4 = build_frame(spec4);
  const GroupElement quarter{1, 4, 1};
  for (int m = 1; m <= spec4.M; ++m) {
    const std::int64_t order = pow2_ceil(m) * spec4.B;
    for (std::int64_t j = 0; j < order; ++j) {
      const SpectralAtom& base = frame4.atom(AtomIndex::band(m, j));
      if (base.empty) continue;
      const GroupElement moved = quarter.compose(GroupElement{m, spec4.B, j});
      const SpectralAtom& rot = frame4.atom(AtomIndex::band(m, moved.index));
      const PolarPoint a = direction_diagnostic(base);
      const PolarPoint b = direction_diagnostic(rot);
      CHECK(std::abs(wrap_angle(b.phi - a.phi - kPi / 2)) < 1e-10);
      CHECK(b.rho == doctest::Approx(a.rho).epsilon(1e-12));
    }
  }

  SpectralAtom empty_atom;
  empty_atom.index = AtomIndex::band(1, 0);
  empty_atom.empty = true;
  CHECK_THROWS_AS(direction_diagnostic(empty_atom), std::invalid_argument);
}

TEST_CASE("centroid angle lies within the sector of its atom (B=8, M=4)") {
  const FrameSpec spec{2.0, 8, 33, 33, 4};
  const FrameInstance frame = build_frame(spec);
  for (const SpectralAtom& atom : frame.atoms) {
    if (atom.index.low_pass) continue;
    REQUIRE(!atom.empty);  // every shell up to M=4 intersects the 33x33 lattice
    const PolarPoint centroid = direction_diagnostic(atom);
    const double target = atom.index.rotation(spec.B).angle();
    CHECK(std::abs(wrap_angle(centroid.phi - target)) <=
          sector_half_width(atom.index.m, spec.B));
    CHECK(centroid.rho >= spec.A * (atom.index.m - 1));
    CHECK(centroid.rho <= spec.A * (atom.index.m + 1));
  }
}

TEST_CASE("real-part renders oscillate along the diagnosed direction") {
  const FrameSpec spec{2.0, 8, 33, 33, 4};
  const FrameInstance frame = build_frame(spec);
  for (const SpectralAtom& atom : frame.atoms) {
    if (atom.index.low_pass || atom.empty) continue;
    GridArray spectrum(spec.n1, spec.n2, Domain::Frequency);
    for (std::size_t i = 0; i < spectrum.v.size(); ++i) spectrum.v[i] = atom.mask.v[i];
    GridArray spatial = idft(spectrum);
    for (cplx& z : spatial.v) z = cplx(z.real(), 0.0);
    const GridArray back = dft(spatial);

    double best = -1.0;
    int p1 = 0, p2 = 0;
    for (int k1 = back.freq_lo1(); k1 < back.freq_lo1() + spec.n1; ++k1) {
      for (int k2 = back.freq_lo2(); k2 < back.freq_lo2() + spec.n2; ++k2) {
        const double v = std::abs(back.at_freq(k1, k2));
        if (v > best) {
          best = v;
          p1 = k1;
          p2 = k2;
        }
      }
    }
    // the real part has spectrum (mask(k) + mask(-k))/2: compare modulo pi
    const PolarPoint centroid = direction_diagnostic(atom);
    const double peak_phi = to_polar(p1, p2).phi;
    const double diff = std::min(std::abs(wrap_angle(peak_phi - centroid.phi)),
                                 std::abs(wrap_angle(peak_phi - centroid.phi + kPi)));
    CHECK(diff <= sector_half_width(atom.index.m, spec.B));
  }
}
