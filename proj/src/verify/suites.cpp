#include "rufst/verify/suites.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>

#include "rufst/finite_frame.hpp"
#include "rufst/scattering.hpp"
#include "rufst/verify/direct_oracle.hpp"

namespace rufst::verify {

namespace {

struct Ctx {
  std::mt19937_64 rng;
  std::string break_check;
  std::vector<CheckResult>* out = nullptr;

  bool broken(const std::string& name) const { return break_check == name; }

  void add(const std::string& suite, const std::string& name, double value,
           double threshold, bool strict) {
    CheckResult r;
    r.suite = suite;
    r.name = name;
    r.value = value;
    r.threshold = threshold;
    r.strict = strict;
    r.pass = strict ? value < threshold : value <= threshold;
    out->push_back(std::move(r));
  }
};

GridArray random_complex_grid(std::mt19937_64& rng, int n1, int n2) {
  std::normal_distribution<double> d(0.0, 1.0);
  GridArray g(n1, n2, Domain::Space);
  for (cplx& z : g.v) z = cplx(d(rng), d(rng));
  return g;
}

GridArray random_real_grid(std::mt19937_64& rng, int n1, int n2) {
  std::normal_distribution<double> d(0.0, 1.0);
  GridArray g(n1, n2, Domain::Space);
  for (cplx& z : g.v) z = cplx(d(rng), 0.0);
  return g;
}

// Real array whose spectrum is confined to |k| <= radius.
GridArray random_bandlimited(std::mt19937_64& rng, int n1, int n2, double radius) {
  GridArray g = random_real_grid(rng, n1, n2);
  GridArray spec = dft(g);
  for (int k1 = spec.freq_lo1(); k1 < spec.freq_lo1() + n1; ++k1) {
    for (int k2 = spec.freq_lo2(); k2 < spec.freq_lo2() + n2; ++k2) {
      if (std::sqrt(static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2) > radius) {
        spec.at_freq(k1, k2) = 0.0;
      }
    }
  }
  GridArray out = idft(spec);
  for (cplx& z : out.v) z = cplx(z.real(), 0.0);
  return out;
}

double rel_dist(const GridArray& a, const GridArray& b) {
  const double nb = frobenius_norm(b);
  return nb > 0.0 ? frobenius_dist(a, b) / nb : frobenius_dist(a, b);
}

// Canonical-order sum of squared moduli; equal multisets give equal bits.
double sorted_energy(const GridArray& a) {
  std::vector<double> sq(a.v.size());
  for (std::size_t i = 0; i < a.v.size(); ++i) sq[i] = std::norm(a.v[i]);
  std::sort(sq.begin(), sq.end());
  double s = 0.0;
  for (double x : sq) s += x;
  return s;
}

// ---------------------------------------------------------------------------
// core
// ---------------------------------------------------------------------------

void suite_core(Ctx& c) {
  {
    std::uniform_real_distribution<double> ad(0.1, 10.0), xd(-20.0, 20.0);
    double worst = 0.0;
    const double spacing_scale = c.broken("eta_partition") ? 1.0 + 1e-8 : 1.0;
    for (int t = 0; t < 1000; ++t) {
      const double a = ad(c.rng);
      const double x = xd(c.rng) * a;
      const double spacing = a * spacing_scale;
      const long m_lo = static_cast<long>(std::floor((x - a) / spacing)) - 1;
      const long m_hi = static_cast<long>(std::ceil((x + a) / spacing)) + 1;
      double s = 0.0;
      for (long m = m_lo; m <= m_hi; ++m) {
        const double v = eta(a, x - spacing * static_cast<double>(m));
        s += v * v;
      }
      worst = std::max(worst, std::abs(s - 1.0));
    }
    c.add("core", "eta_partition", worst, 1e-12, true);
  }
  {
    std::uniform_real_distribution<double> ad(0.1, 10.0), ud(0.0, 20.0);
    double worst = 0.0;
    const double pull = c.broken("eta_support") ? 1.0 - 1e-9 : 1.0;
    for (int t = 0; t < 500; ++t) {
      const double a = ad(c.rng);
      const double x = (a + ud(c.rng)) * pull;
      worst = std::max({worst, eta(a, x), eta(a, -x), eta(a, a * pull)});
    }
    c.add("core", "eta_support", worst, 0.0, false);
  }
  {
    std::uniform_real_distribution<double> ad(0.1, 10.0), xd(-3.0, 3.0);
    double worst = 0.0;
    for (int t = 0; t < 500; ++t) {
      const double a = ad(c.rng);
      const double x = xd(c.rng) * a;
      const double mirror = c.broken("eta_evenness") ? -x + a * 1e-13 : -x;
      worst = std::max(worst, std::abs(eta(a, x) - eta(a, mirror)));
    }
    c.add("core", "eta_evenness", worst, 0.0, false);
  }
  {
    std::uniform_real_distribution<double> pd(-10.0, 10.0);
    double worst = 0.0;
    const double spacing_scale = c.broken("beta_partition") ? 1.0 + 1e-8 : 1.0;
    for (int m = 1; m <= 8; ++m) {
      for (int b : {1, 2, 4, 8}) {
        const std::int64_t order = pow2_ceil(m) * b;
        for (int t = 0; t < 100; ++t) {
          const double phi = pd(c.rng);
          double s = 0.0;
          for (std::int64_t j = 0; j < order; ++j) {
            const double v =
                beta(m, b, phi - spacing_scale * kTwoPi * static_cast<double>(j) /
                                  static_cast<double>(order));
            s += v * v;
          }
          worst = std::max(worst, std::abs(s - 1.0));
        }
      }
    }
    c.add("core", "beta_partition", worst, 1e-12, true);
  }
  {
    std::uniform_real_distribution<double> ud(0.0, 1.0);
    double worst = 0.0;
    const double pull = c.broken("beta_support") ? 1.0 - 1e-9 : 1.0;
    for (int m = 1; m <= 8; ++m) {
      for (int b : {2, 4, 8}) {
        const double bm = sector_half_width(m, b);
        for (int t = 0; t < 50; ++t) {
          const double outside = bm + ud(c.rng) * (kPi - bm);
          worst = std::max({worst, beta(m, b, outside * pull), beta(m, b, -outside * pull),
                            beta(m, b, bm * pull)});
        }
      }
    }
    c.add("core", "beta_support", worst, 0.0, false);
  }
  {
    long violations = 0;
    for (int b : {1, 2, 4, 8}) {
      for (int m = 1; m <= 8; ++m) {
        const std::vector<GroupElement> g = group_elements(m, b);
        if (g.size() > 64) continue;
        for (const GroupElement& x : g) {
          GroupElement inv = x.inverse();
          if (c.broken("group_laws") && x.index == 1) {
            inv.index = (inv.index + 1) % inv.order();
          }
          if (!inv.compose(x).is_identity()) ++violations;
          if (!(g[0].compose(x) == x)) ++violations;
          for (const GroupElement& y : g) {
            for (const GroupElement& z : g) {
              if (!(x.compose(y).compose(z) == x.compose(y.compose(z)))) ++violations;
            }
          }
        }
        // nesting: G_m embeds in G_n for n >= m by index rescaling
        for (int n = m; n <= 8; ++n) {
          const std::int64_t ratio = pow2_ceil(n) / pow2_ceil(m);
          for (const GroupElement& x : g) {
            const GroupElement lifted{n, b, x.index * ratio};
            if (std::abs(wrap_angle(lifted.angle() - x.angle())) > 1e-15) ++violations;
          }
        }
      }
    }
    c.add("core", "group_laws", static_cast<double>(violations), 0.0, false);
  }
  {
    long violations = 0;
    for (std::int64_t m = 1; m <= 65536; ++m) {
      std::int64_t p = pow2_ceil(m);
      if (c.broken("pow2_ceil_range") && m == 7) p *= 2;
      if ((p & (p - 1)) != 0 || p < m || p >= 2 * m) ++violations;
    }
    c.add("core", "pow2_ceil_range", static_cast<double>(violations), 0.0, false);
  }
  {
    std::uniform_real_distribution<double> xd(-10.0, 10.0);
    double worst = 0.0;
    for (int t = 0; t < 1000; ++t) {
      const double x = xd(c.rng), y = xd(c.rng);
      if (x == 0.0 && y == 0.0) continue;
      PolarPoint p = to_polar(x, y);
      if (c.broken("polar_roundtrip")) p.rho *= 1.0 + 1e-9;
      const auto [x2, y2] = from_polar(p);
      worst = std::max(worst, std::hypot(x2 - x, y2 - y) / std::hypot(x, y));
    }
    c.add("core", "polar_roundtrip", worst, 1e-12, true);
  }
}

// ---------------------------------------------------------------------------
// frame
// ---------------------------------------------------------------------------

int quarter_turns_of(const GroupElement& r) {
  return static_cast<int>(((4 * r.index) / r.order()) % 4);
}

void suite_frame(Ctx& c) {
  {
    double worst = 0.0;
    for (int b : {1, 2, 4}) {
      const FrameSpec spec{1.5, b, 9, 9, 2};
      for (int m = 1; m <= spec.M; ++m) {
        const std::int64_t order = pow2_ceil(m) * b;
        for (const GroupElement& g : group_elements(1, b)) {
          const int t = quarter_turns_of(g);
          for (std::int64_t j = 0; j < order; ++j) {
            const GroupElement rotated = g.compose(GroupElement{m, b, j});
            const SpectralAtom lhs = build_atom(spec, AtomIndex::band(m, rotated.index));
            const SpectralAtom rhs = build_atom(spec, AtomIndex::band(m, j));
            for (int k1 = spec.freq_lo1(); k1 < spec.freq_lo1() + spec.n1; ++k1) {
              for (int k2 = spec.freq_lo2(); k2 < spec.freq_lo2() + spec.n2; ++k2) {
                // g^{-1} k via clockwise quarter turns
                int q1 = k1, q2 = k2;
                for (int s = 0; s < t; ++s) {
                  const int x = q2, y = -q1;
                  q1 = x;
                  q2 = y;
                }
                if (c.broken("mask_equivariance") && b == 4 && m == 1 && j == 1) {
                  q2 = -q2;
                }
                worst = std::max(worst, std::abs(lhs.mask_at(k1, k2) - rhs.mask_at(q1, q2)));
              }
            }
          }
        }
      }
    }
    c.add("frame", "mask_equivariance", worst, 0.0, false);
  }
  {
    long violations = 0;
    for (const auto& [b, m] : std::vector<std::pair<int, int>>{{8, 4}, {4, 3}, {2, 3}, {1, 2}}) {
      const FrameSpec spec{1.0, b, 9, 9, m};
      const std::vector<AtomIndex> all = index_set(spec);
      std::vector<AtomIndex> reps = coset_representatives(spec);
      if (c.broken("coset_completeness") && !reps.empty()) reps.pop_back();
      if (static_cast<std::int64_t>(all.size()) - 1 !=
          static_cast<std::int64_t>(b) * static_cast<std::int64_t>(reps.size())) {
        ++violations;
      }
      std::set<std::pair<int, std::int64_t>> seen;
      long duplicates = 0;
      for (const GroupElement& r : group_elements(1, b)) {
        for (const AtomIndex& q : reps) {
          const GroupElement moved = r.compose(q.rotation(b));
          if (!seen.insert({q.m, moved.index}).second) ++duplicates;
        }
      }
      violations += duplicates;
      if (seen.size() != all.size() - 1) ++violations;
    }
    c.add("frame", "coset_completeness", static_cast<double>(violations), 0.0, false);
  }
  {
    const FrameSpec spec{2.0, 8, 33, 33, 12};
    const FrameInstance frame = build_frame(spec);
    long violations = 0;
    const double side_bound = std::floor(wedge_diameter_bound(spec)) + 1.0;
    for (const SpectralAtom& atom : frame.atoms) {
      if (atom.empty) {
        for (double v : atom.mask.v) {
          if (v != 0.0) ++violations;
        }
        continue;
      }
      int s1 = atom.s1;
      if (c.broken("sp_boxes") && atom.index == AtomIndex::band(2, 3)) s1 -= 1;
      if (atom.box_volume() > spec.n1 * spec.n2) ++violations;
      for (int k1 = spec.freq_lo1(); k1 < spec.freq_lo1() + spec.n1; ++k1) {
        for (int k2 = spec.freq_lo2(); k2 < spec.freq_lo2() + spec.n2; ++k2) {
          if (atom.mask_at(k1, k2) == 0.0) continue;
          if (k1 < atom.k1_min || k1 >= atom.k1_min + s1 || k2 < atom.k2_min ||
              k2 >= atom.k2_min + atom.s2) {
            ++violations;
          }
        }
      }
      if (!atom.index.low_pass && pow2_ceil(atom.index.m) * spec.B >= 4) {
        if (atom.s1 > side_bound || atom.s2 > side_bound) ++violations;
      }
    }
    c.add("frame", "sp_boxes", static_cast<double>(violations), 0.0, false);
  }
  {
    double worst = 0.0;
    for (const FrameSpec spec :
         {FrameSpec{2.0, 8, 33, 33, 12}, FrameSpec{1.0, 4, 17, 17, 12}}) {
      FrameInstance frame = build_frame(spec);
      if (c.broken("partition_residual")) {
        for (double& v : frame.atoms[1].mask.v) v *= 1.0 + 1e-6;
      }
      worst = std::max(worst, verify_partition(frame).max_dev_inside);
    }
    c.add("frame", "partition_residual", worst, 1e-12, true);
  }
  {
    const FrameSpec spec{1.0, 4, 17, 17, 2};
    FrameInstance frame = build_frame(spec);
    if (c.broken("partition_leak")) {
      frame.atoms[1].mask.at(0, 0) = 1e-9;  // corner lies beyond A(M+1)
      frame.atoms[1].k1_min = spec.freq_lo1();
      frame.atoms[1].k2_min = spec.freq_lo2();
      frame.atoms[1].s1 = spec.n1;
      frame.atoms[1].s2 = spec.n2;
    }
    c.add("frame", "partition_leak", verify_partition(frame).max_leak_outside, 0.0, false);
  }
  {
    const FrameSpec spec{2.0, 8, 33, 33, 4};
    double worst = 0.0;
    for (int m = 1; m <= 64; ++m) {
      FrameSpec probe = spec;
      if (c.broken("wedge_diameter_bound") && m == 16) probe.A *= 2.5;
      worst = std::max(worst, wedge_diameter(probe, m) / wedge_diameter_bound(spec));
    }
    c.add("frame", "wedge_diameter_bound", worst, 1.0, false);
  }
  {
    const FrameSpec spec{2.0, 8, 33, 33, 4};
    const FrameInstance frame = build_frame(spec);
    long violations = 0;
    for (const SpectralAtom& atom : frame.atoms) {
      if (atom.index.low_pass || atom.empty) continue;
      PolarPoint centroid = direction_diagnostic(atom);
      if (c.broken("direction_diagnostics") && atom.index == AtomIndex::band(3, 2)) {
        centroid.phi += 2.0 * sector_half_width(atom.index.m, spec.B);
      }
      const double lo = spec.A * (atom.index.m - 1), hi = spec.A * (atom.index.m + 1);
      if (centroid.rho < lo || centroid.rho > hi) ++violations;
      const double target = atom.index.rotation(spec.B).angle();
      if (std::abs(wrap_angle(centroid.phi - target)) >
          sector_half_width(atom.index.m, spec.B)) {
        ++violations;
      }
    }
    c.add("frame", "direction_diagnostics", static_cast<double>(violations), 0.0, false);
  }
}

// ---------------------------------------------------------------------------
// finite
// ---------------------------------------------------------------------------

void suite_finite(Ctx& c) {
  {
    double worst = 0.0;
    for (int t = 0; t < 10; ++t) {
      const GridArray f = random_complex_grid(c.rng, 17, 17);
      GridArray spec = dft(f);
      if (c.broken("dft_parseval")) {
        for (cplx& z : spec.v) z *= 1.0 + 1e-7;
      }
      double e = 0.0;
      for (const cplx& z : spec.v) e += std::norm(z);
      const double n2 = frobenius_norm(f) * frobenius_norm(f);
      worst = std::max(worst, std::abs(e - f.size() * n2) / (f.size() * n2));
    }
    c.add("finite", "dft_parseval", worst, 1e-12, true);
  }
  {
    double worst = 0.0;
    for (int t = 0; t < 10; ++t) {
      const GridArray f = random_complex_grid(c.rng, 17, 17);
      GridArray back = idft(dft(f));
      if (c.broken("dft_roundtrip")) back.v[5] += 1e-8;
      worst = std::max(worst, rel_dist(back, f));
    }
    c.add("finite", "dft_roundtrip", worst, 1e-12, true);
  }
  {
    double worst = 0.0;
    for (int t = 0; t < 3; ++t) {
      const GridArray f = random_complex_grid(c.rng, 9, 9);
      GridArray fast = dft(f);
      if (c.broken("dft_vs_direct")) fast.v[3] *= 1.0 + 1e-8;
      const GridArray direct = dft_direct(f);
      worst = std::max(worst, rel_dist(fast, direct));
    }
    c.add("finite", "dft_vs_direct", worst, 1e-11, true);
  }
  {
    const FrameSpec spec{2.0, 4, 9, 9, FrameSpec::full_cover_level(2.0, 9, 9)};
    const FrameInstance frame = build_frame(spec);
    double worst = 0.0;
    for (const SpectralAtom& atom : frame.atoms) {
      if (atom.empty || atom.box_volume() > 256) continue;
      std::vector<std::vector<cplx>> mods;
      for (int a = 0; a < atom.s1; ++a) {
        for (int b = 0; b < atom.s2; ++b) mods.push_back(modulation(atom, a, b));
      }
      if (c.broken("modulation_orthonormal")) {
        for (cplx& z : mods[0]) z *= 1.0 + 1e-7;
      }
      for (std::size_t i = 0; i < mods.size(); ++i) {
        for (std::size_t j = i; j < mods.size(); ++j) {
          cplx ip(0.0, 0.0);
          for (std::size_t k = 0; k < mods[i].size(); ++k) {
            ip += mods[i][k] * std::conj(mods[j][k]);
          }
          worst = std::max(worst, std::abs(ip - (i == j ? 1.0 : 0.0)));
        }
      }
    }
    c.add("finite", "modulation_orthonormal", worst, 1e-12, true);
  }
  {
    double worst = 0.0;
    for (const auto& [a, b] : std::vector<std::pair<double, int>>{{1.0, 4}, {2.0, 8}}) {
      for (int n : {9, 17, 33}) {
        const FrameSpec spec{a, b, n, n, FrameSpec::full_cover_level(a, n, n)};
        const FrameInstance frame = build_frame(spec);
        for (int t = 0; t < 20; ++t) {
          const GridArray f = random_complex_grid(c.rng, n, n);
          CoefficientSet coeffs = analyze(frame, f);
          if (c.broken("finite_parseval")) {
            for (auto& ac : coeffs.atoms) {
              for (cplx& z : ac.c) z *= 1.0 + 1e-6;
            }
          }
          const double n2 = frobenius_norm(f) * frobenius_norm(f);
          worst = std::max(worst, std::abs(coeffs.total_energy() - n2) / n2);
        }
      }
    }
    c.add("finite", "finite_parseval", worst, 1e-10, true);
  }
  {
    const FrameSpec spec{2.0, 8, 17, 17, FrameSpec::full_cover_level(2.0, 17, 17)};
    const FrameInstance frame = build_frame(spec);
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
      const GridArray f = random_complex_grid(c.rng, 17, 17);
      const CoefficientSet fast = analyze(frame, f);
      const CoefficientSet direct = analyze_direct(frame, f);
      double num = 0.0, den = 0.0;
      for (std::size_t i = 0; i < fast.atoms.size(); ++i) {
        for (std::size_t k = 0; k < fast.atoms[i].c.size(); ++k) {
          cplx fv = fast.atoms[i].c[k];
          if (c.broken("analyze_oracle")) fv *= 1.0 + 1e-8;
          num += std::norm(fv - direct.atoms[i].c[k]);
          den += std::norm(direct.atoms[i].c[k]);
        }
      }
      worst = std::max(worst, std::sqrt(num / den));
    }
    c.add("finite", "analyze_oracle", worst, 1e-10, true);
  }
  {
    double worst = 0.0;
    for (int n : {9, 17}) {
      const FrameSpec spec{2.0, 8, n, n, FrameSpec::full_cover_level(2.0, n, n)};
      const FrameInstance frame = build_frame(spec);
      for (int t = 0; t < 5; ++t) {
        const GridArray f = random_complex_grid(c.rng, n, n);
        GridArray back = synthesize(frame, analyze(frame, f));
        if (c.broken("synth_roundtrip")) back.v[1] += 1e-7;
        worst = std::max(worst, rel_dist(back, f));
      }
    }
    c.add("finite", "synth_roundtrip", worst, 1e-10, true);
  }
  {
    const FrameSpec spec{2.0, 8, 17, 17, FrameSpec::full_cover_level(2.0, 17, 17)};
    const FrameInstance frame = build_frame(spec);
    const GridArray f = random_complex_grid(c.rng, 17, 17);
    const GridArray spectrum = dft(f);
    const CoefficientSet coeffs = analyze(frame, f);
    double worst = 0.0;
    const double total = frobenius_norm(f) * frobenius_norm(f);
    for (std::size_t i = 0; i < frame.atoms.size(); ++i) {
      const SpectralAtom& atom = frame.atoms[i];
      if (atom.empty) continue;
      double expect = 0.0;
      for (int k1 = atom.k1_min; k1 < atom.k1_min + atom.s1; ++k1) {
        for (int k2 = atom.k2_min; k2 < atom.k2_min + atom.s2; ++k2) {
          expect += std::norm(spectrum.at_freq(k1, k2)) * atom.mask_at(k1, k2) *
                    atom.mask_at(k1, k2);
        }
      }
      expect /= static_cast<double>(f.size());
      double got = coeffs.atom_energy(i);
      if (c.broken("per_atom_energy") && i == 3) got *= 1.0 + 1e-6;
      worst = std::max(worst, std::abs(got - expect) / total);
    }
    c.add("finite", "per_atom_energy", worst, 1e-10, true);
  }
  {
    const FrameSpec spec{2.0, 8, 17, 17, FrameSpec::full_cover_level(2.0, 17, 17)};
    const FrameInstance frame = build_frame(spec);
    const GridArray f = random_real_grid(c.rng, 17, 17);
    const GroupElement quarter{1, 8, 2};  // angle pi/2 inside G for B = 8
    const GridArray fr = rotate_array(f, quarter, RotationMode::Exact);
    const CoefficientSet base = analyze(frame, f);
    const CoefficientSet rot = analyze(frame, fr);
    const double total = frobenius_norm(f) * frobenius_norm(f);
    double worst = std::abs(rot.total_energy() - base.total_energy()) / total;
    for (std::size_t i = 0; i < frame.atoms.size(); ++i) {
      const AtomIndex idx = frame.atoms[i].index;
      AtomIndex partner = idx;
      if (!idx.low_pass) {
        partner.j = quarter.compose(idx.rotation(spec.B)).index;
        if (c.broken("orbit_tightness") && idx == AtomIndex::band(2, 1)) {
          partner.j = idx.j;
        }
      }
      const double lhs = rot.atom_energy(i);
      const double rhs = base.atom_energy(frame.atom_pos(partner));
      worst = std::max(worst, std::abs(lhs - rhs) / total);
    }
    c.add("finite", "orbit_tightness", worst, 1e-10, true);
  }
  {
    const FrameSpec spec{2.0, 8, 17, 17, FrameSpec::full_cover_level(2.0, 17, 17)};
    const FrameInstance frame = build_frame(spec);
    const GridArray f = random_complex_grid(c.rng, 17, 17);
    const CoefficientSet serial = analyze(frame, f, Exec::Serial);
    const CoefficientSet parallel = analyze(frame, f, Exec::Parallel);
    double worst = 0.0;
    for (std::size_t i = 0; i < serial.atoms.size(); ++i) {
      for (std::size_t k = 0; k < serial.atoms[i].c.size(); ++k) {
        cplx p = parallel.atoms[i].c[k];
        if (c.broken("serial_parallel_analyze") && i == 2 && k == 0) p += 1e-13;
        worst = std::max(worst, std::abs(serial.atoms[i].c[k] - p));
      }
    }
    c.add("finite", "serial_parallel_analyze", worst, 0.0, false);
  }
}

// ---------------------------------------------------------------------------
// scattering
// ---------------------------------------------------------------------------

void suite_scattering(Ctx& c) {
  const FrameSpec spec17{2.0, 4, 17, 17, FrameSpec::full_cover_level(2.0, 17, 17)};
  const FrameInstance frame17 = build_frame(spec17);

  {
    double worst = 0.0;
    for (int t = 0; t < 10; ++t) {
      const GridArray f = random_real_grid(c.rng, 17, 17);
      double energy = 0.0;
      for (std::size_t i = 0; i < frame17.atoms.size(); ++i) {
        if (c.broken("one_layer_energy") && i == 1) continue;
        const GridArray u = propagate(frame17, f, frame17.atoms[i].index);
        const double nn = frobenius_norm(u);
        energy += nn * nn;
      }
      const double n2 = frobenius_norm(f) * frobenius_norm(f);
      worst = std::max(worst, std::abs(energy - n2) / n2);
    }
    c.add("scattering", "one_layer_energy", worst, 1e-10, true);
  }
  {
    // smooth(U[p] f_r) == rotate(smooth(U[r p] f), r) for all r in G, k <= 2
    double worst = 0.0;
    const GridArray f = random_real_grid(c.rng, 17, 17);
    const std::vector<GroupElement> group = group_elements(1, spec17.B);
    const PathLayers paths = enumerate_paths(spec17, 2, 2, 100000);
    std::vector<ScatteringPath> sample = paths.layers[0];
    for (std::size_t i = 0; i < paths.layers[1].size(); i += 17) {
      sample.push_back(paths.layers[1][i]);
    }
    for (const GroupElement& r : group) {
      const GridArray fr = rotate_array(f, r, RotationMode::Exact);
      for (const ScatteringPath& p : sample) {
        GridArray lhs = fr;
        for (const AtomIndex& e : p.entries) lhs = propagate(frame17, lhs, e);
        lhs = smooth(frame17, lhs);

        const ScatteringPath rp = rotate_path(p, r, spec17.B);
        GridArray rhs = f;
        for (const AtomIndex& e : rp.entries) rhs = propagate(frame17, rhs, e);
        rhs = rotate_array(smooth(frame17, rhs), r, RotationMode::Exact);
        if (c.broken("equivariance")) {
          rhs = rotate_array(rhs, r, RotationMode::Exact);
        }
        worst = std::max(worst, rel_dist(lhs, rhs));
      }
    }
    c.add("scattering", "equivariance", worst, 1e-10, true);
  }
  {
    double worst = 0.0;
    for (int b : {1, 2, 4}) {
      const FrameSpec spec{2.0, b, 17, 17, FrameSpec::full_cover_level(2.0, 17, 17)};
      const FrameInstance frame = build_frame(spec);
      GridArray f = random_real_grid(c.rng, 17, 17);
      const FeatureSet base =
          scatter_rotational(frame, f, 2, 2, RotationMode::Exact);
      for (const GroupElement& r : group_elements(1, b)) {
        GridArray fr = rotate_array(f, r, RotationMode::Exact);
        if (c.broken("g_invariance")) {
          std::normal_distribution<double> d(0.0, 1e-6);
          for (cplx& z : fr.v) z += d(c.rng);
        }
        const FeatureSet rot = scatter_rotational(frame, fr, 2, 2, RotationMode::Exact);
        for (std::size_t i = 0; i < base.maps.size(); ++i) {
          double num = 0.0, den = 0.0;
          for (std::size_t k = 0; k < base.maps[i].v.size(); ++k) {
            num += (rot.maps[i].v[k] - base.maps[i].v[k]) *
                   (rot.maps[i].v[k] - base.maps[i].v[k]);
            den += base.maps[i].v[k] * base.maps[i].v[k];
          }
          worst = std::max(worst, std::sqrt(num / den));
        }
      }
    }
    c.add("scattering", "g_invariance", worst, 1e-8, true);
  }
  {
    double worst = 0.0;
    for (int b : {2, 4}) {
      const FrameSpec spec{2.0, b, 17, 17, FrameSpec::full_cover_level(2.0, 17, 17)};
      const FrameInstance frame = build_frame(spec);
      const GridArray f = random_real_grid(c.rng, 17, 17);
      FeatureSet rot = scatter_rotational(frame, f, 2, 2, RotationMode::Exact);
      const FeatureSet plain = scatter_plain(frame, f, 2, 2);
      if (c.broken("norm_equality")) {
        for (double& v : rot.maps[0].v) v *= std::sqrt(static_cast<double>(b));
      }
      worst = std::max(worst,
                       std::abs(feature_norm(rot) - feature_norm(plain)) / feature_norm(plain));
    }
    c.add("scattering", "norm_equality", worst, 1e-10, true);
  }
  {
    double worst = -1.0;
    for (int t = 0; t < 20; ++t) {
      const GridArray f = random_real_grid(c.rng, 17, 17);
      const GridArray g = random_real_grid(c.rng, 17, 17);
      for (TransformKind kind : {TransformKind::Plain, TransformKind::Rotational}) {
        const FeatureSet sf = kind == TransformKind::Plain
                                  ? scatter_plain(frame17, f, 2, 2)
                                  : scatter_rotational(frame17, f, 2, 2, RotationMode::Exact);
        const FeatureSet sg = kind == TransformKind::Plain
                                  ? scatter_plain(frame17, g, 2, 2)
                                  : scatter_rotational(frame17, g, 2, 2, RotationMode::Exact);
        const double fd = feature_distance(sf, sg);
        GridArray diff = f;
        for (std::size_t i = 0; i < diff.v.size(); ++i) diff.v[i] -= g.v[i];
        double sd = frobenius_norm(diff);
        if (c.broken("nonexpansive")) sd *= 0.01;
        worst = std::max(worst, (fd - sd) / sd);
      }
    }
    c.add("scattering", "nonexpansive", worst, 1e-10, false);
  }
  {
    const GridArray f = random_real_grid(c.rng, 17, 17);
    const double nf = frobenius_norm(f);
    const double n11 = feature_norm(scatter_plain(frame17, f, 1, 1));
    const double n12 = feature_norm(scatter_plain(frame17, f, 1, 2));
    const double n22 = feature_norm(scatter_plain(frame17, f, 2, 2));
    double nr22 = feature_norm(scatter_rotational(frame17, f, 2, 2, RotationMode::Exact));
    if (c.broken("upper_truncation_monotonic")) nr22 *= 0.5;
    double worst = std::max({n11 - n12, n12 - n22, n22 - nf * (1.0 + 1e-12),
                             n11 - nr22, n12 - nr22});
    worst /= nf;
    c.add("scattering", "upper_truncation_monotonic", worst, 1e-10, false);
  }
  {
    const GridArray f = random_bandlimited(c.rng, 17, 17, 2.0 * 2);
    double prev = -1.0, worst = 0.0;
    for (int k = 1; k <= 3; ++k) {
      double ratio = feature_norm(scatter_plain(frame17, f, 2, k));
      ratio = ratio * ratio / (frobenius_norm(f) * frobenius_norm(f));
      if (c.broken("captured_energy_growth") && k == 2) ratio *= 0.1;
      if (prev >= 0.0) worst = std::max(worst, prev - ratio);
      prev = ratio;
    }
    c.add("scattering", "captured_energy_growth", worst, 0.0, false);
  }
  {
    const GridArray f = random_bandlimited(c.rng, 17, 17, 6.0);
    double worst_ratio = 0.0, worst_mono = 0.0;
    for (TransformKind kind : {TransformKind::Plain, TransformKind::Rotational}) {
      const StabilityReport shift = stability_shift_probe(
          frame17, f, 2, 2, kind, RotationMode::Exact, {{1, 0}, {2, 0}, {3, 0}, {4, 0}});
      const WarpField field = default_warp_field(17, 17);
      const double a_max = 0.25 / field.max_gradient();
      const StabilityReport warp =
          stability_warp_probe(frame17, f, 2, 2, kind, RotationMode::Exact, field,
                               {0.25 * a_max, 0.5 * a_max, 0.75 * a_max, a_max});
      for (const StabilityReport* rep : {&shift, &warp}) {
        double prev = -1.0;
        for (const StabilityRow& row : rep->rows) {
          double fd = row.feature_dist;
          if (c.broken("stability_ratio")) fd = row.signal_dist * 1.5;
          worst_ratio = std::max(worst_ratio, fd / row.signal_dist - 1.0);
          if (prev >= 0.0) {
            double drop = prev - row.feature_dist;
            if (c.broken("stability_monotone")) drop = std::abs(drop) + 1e-3;
            worst_mono = std::max(worst_mono, drop);
          }
          prev = row.feature_dist;
        }
      }
    }
    c.add("scattering", "stability_ratio", worst_ratio, 1e-10, false);
    c.add("scattering", "stability_monotone", worst_mono, 0.0, false);
  }
  {
    const GridArray f = random_real_grid(c.rng, 17, 17);
    const FeatureSet serial = scatter_rotational(frame17, f, 2, 2, RotationMode::Exact,
                                                 kDefaultPathCap, Exec::Serial);
    const FeatureSet parallel = scatter_rotational(frame17, f, 2, 2, RotationMode::Exact,
                                                   kDefaultPathCap, Exec::Parallel);
    double worst = 0.0;
    for (std::size_t i = 0; i < serial.maps.size(); ++i) {
      for (std::size_t k = 0; k < serial.maps[i].v.size(); ++k) {
        double p = parallel.maps[i].v[k];
        if (c.broken("serial_parallel_scatter") && i == 1 && k == 7) p += 1e-13;
        worst = std::max(worst, std::abs(serial.maps[i].v[k] - p));
      }
    }
    c.add("scattering", "serial_parallel_scatter", worst, 0.0, false);
  }
  {
    const GridArray f = random_real_grid(c.rng, 17, 17);
    GridArray rot = rotate_array(f, GroupElement{1, 4, 1}, RotationMode::Exact);
    if (c.broken("rotate_exact_norm")) rot.v[0] *= 1.0 + 1e-13;
    const double diff = std::abs(sorted_energy(rot) - sorted_energy(f));
    c.add("scattering", "rotate_exact_norm", diff, 0.0, false);
  }
}

}  // namespace

std::vector<CheckResult> run_verify(const VerifyOptions& opt) {
  std::vector<CheckResult> results;
  Ctx c;
  c.rng.seed(opt.seed);
  c.break_check = opt.break_check;
  c.out = &results;

  auto wants = [&](const std::string& suite) {
    if (opt.suites.empty()) return true;
    return std::find(opt.suites.begin(), opt.suites.end(), suite) != opt.suites.end();
  };

  if (wants("core")) suite_core(c);
  if (wants("frame")) suite_frame(c);
  if (wants("finite")) suite_finite(c);
  if (wants("scattering")) suite_scattering(c);
  return results;
}

std::string format_check_line(const CheckResult& r) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%s %s/%s value=%.6g threshold=%.6g cmp=%s",
                r.pass ? "PASS" : "FAIL", r.suite.c_str(), r.name.c_str(), r.value,
                r.threshold, r.strict ? "lt" : "le");
  return buf;
}

std::vector<std::string> all_check_names() {
  VerifyOptions opt;
  opt.seed = 1;
  std::vector<std::string> names;
  for (const CheckResult& r : run_verify(opt)) names.push_back(r.name);
  return names;
}

}  // namespace rufst::verify
