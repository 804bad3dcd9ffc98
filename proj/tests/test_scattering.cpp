#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "rufst/scattering.hpp"

using namespace rufst;

namespace {

GridArray random_real(std::mt19937_64& rng, int n1, int n2) {
  std::normal_distribution<double> d(0.0, 1.0);
  GridArray g(n1, n2, Domain::Space);
  for (cplx& z : g.v) z = cplx(d(rng), 0.0);
  return g;
}

GridArray random_bandlimited(std::mt19937_64& rng, int n, double radius) {
  GridArray g = random_real(rng, n, n);
  GridArray spec = dft(g);
  for (int k1 = spec.freq_lo1(); k1 < spec.freq_lo1() + n; ++k1) {
    for (int k2 = spec.freq_lo2(); k2 < spec.freq_lo2() + n; ++k2) {
      if (std::hypot(static_cast<double>(k1), static_cast<double>(k2)) > radius) {
        spec.at_freq(k1, k2) = 0.0;
      }
    }
  }
  GridArray out = idft(spec);
  for (cplx& z : out.v) z = cplx(z.real(), 0.0);
  return out;
}

GridArray fourier_mode(int n, int k1, int k2, double amp) {
  GridArray f(n, n, Domain::Space);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const double phase =
          kTwoPi * (static_cast<double>(k1) * a / n + static_cast<double>(k2) * b / n);
      f.at(a, b) = amp * cplx(std::cos(phase), std::sin(phase));
    }
  }
  return f;
}

FrameInstance full_cover_frame(double a, int b, int n) {
  return build_frame(FrameSpec{a, b, n, n, FrameSpec::full_cover_level(a, n, n)});
}

}  // namespace

TEST_CASE("propagate: zero input, single-mode flattening, energy partition") {
  const FrameInstance frame = full_cover_frame(2.0, 8, 17);

  const GridArray zero(17, 17, Domain::Space);
  CHECK(frobenius_norm(propagate(frame, zero, AtomIndex::band(1, 0))) == 0.0);

  // the canonical band-2 atom has mask 1 at (4, 0); |U f| of that mode is flat
  const GridArray mode = fourier_mode(17, 4, 0, 0.8);
  const GridArray u = propagate(frame, mode, AtomIndex::band(2, 0));
  for (const cplx& z : u.v) {
    CHECK(z.imag() == 0.0);
    CHECK(z.real() == doctest::Approx(0.8).epsilon(1e-12));
  }

  std::mt19937_64 rng(61);
  for (int t = 0; t < 10; ++t) {
    const GridArray f = random_real(rng, 17, 17);
    double energy = 0.0;
    for (const SpectralAtom& atom : frame.atoms) {
      const double nn = frobenius_norm(propagate(frame, f, atom.index));
      energy += nn * nn;
    }
    const double n2 = frobenius_norm(f) * frobenius_norm(f);
    CHECK(std::abs(energy - n2) / n2 < 1e-10);
  }

  CHECK_THROWS_AS(propagate(frame, GridArray(9, 9, Domain::Space), AtomIndex::band(1, 0)),
                  std::invalid_argument);
}

TEST_CASE("smooth: constants pass through, mean preserved, high modes killed") {
  const FrameInstance frame = full_cover_frame(2.0, 8, 17);
  GridArray constant(17, 17, Domain::Space);
  for (cplx& z : constant.v) z = cplx(1.3, 0.2);
  const GridArray sm = smooth(frame, constant);
  CHECK(frobenius_dist(sm, constant) / frobenius_norm(constant) < 1e-13);

  std::mt19937_64 rng(67);
  const GridArray f = random_real(rng, 17, 17);
  cplx mean_in(0.0, 0.0), mean_out(0.0, 0.0);
  const GridArray smf = smooth(frame, f);
  for (std::size_t i = 0; i < f.v.size(); ++i) {
    mean_in += f.v[i];
    mean_out += smf.v[i];
  }
  CHECK(std::abs(mean_in - mean_out) < 1e-10);

  // |k0| >= A: annihilated by the low-pass support
  const GridArray high = fourier_mode(17, 2, 0, 1.0);
  CHECK(frobenius_norm(smooth(frame, high)) < 1e-10 * frobenius_norm(high));
}

TEST_CASE("enumerate_paths: layer sizes and the cap guard") {
  const FrameSpec spec{2.0, 8, 33, 33, 12};
  const PathLayers layers = enumerate_paths(spec, 4, 2);
  REQUIRE(layers.layers.size() == 2);
  CHECK(layers.layers[0].size() == 88);
  CHECK(layers.layers[1].size() == 7744);
  CHECK(layers.layers[0][0].to_string() == "k1/m1.j0");
  CHECK(layers.layers[1][1].to_string() == "k2/m1.j0-m1.j1");

  const FrameSpec tiny{1.0, 1, 9, 9, 1};
  const PathLayers t3 = enumerate_paths(tiny, 1, 3);
  CHECK(t3.layers[0].size() == 1);
  CHECK(t3.layers[1].size() == 1);
  CHECK(t3.layers[2].size() == 1);

  CHECK_THROWS_AS(enumerate_paths(spec, 4, 2, 100), CapExceededError);
  CHECK_THROWS_AS(enumerate_paths(spec, 4, 12), CapExceededError);
}

TEST_CASE("coset paths: sizes and the disjoint-union property") {
  const FrameSpec spec{2.0, 8, 33, 33, 12};
  const PathLayers q = enumerate_coset_paths(spec, 4, 2);
  CHECK(q.layers[0].size() == 11);
  CHECK(q.layers[1].size() == 968);

  // G[M]^k equals the disjoint union of r Q[M,k] over r in G
  for (int b : {2, 4, 8}) {
    const FrameSpec s{2.0, b, 33, 33, 12};
    for (int m = 1; m <= 3; ++m) {
      for (int k = 1; k <= 2; ++k) {
        const PathLayers cosets = enumerate_coset_paths(s, m, k);
        const PathLayers full = enumerate_paths(s, m, k);
        std::set<std::string> seen;
        for (const GroupElement& r : group_elements(1, b)) {
          for (const ScatteringPath& path : cosets.layers[static_cast<std::size_t>(k - 1)]) {
            const bool inserted = seen.insert(rotate_path(path, r, b).to_string()).second;
            CHECK(inserted);
          }
        }
        CHECK(seen.size() == full.layers[static_cast<std::size_t>(k - 1)].size());
      }
    }
  }
}

TEST_CASE("rotate_array: exact permutations and bilinear fallback") {
  std::mt19937_64 rng(71);
  const GridArray f = random_real(rng, 17, 17);

  const GroupElement identity{1, 4, 0};
  CHECK(rotate_array(f, identity, RotationMode::Exact).v == f.v);
  CHECK(rotate_array(f, identity, RotationMode::Bilinear).v == f.v);

  const GroupElement quarter{1, 4, 1};
  const GroupElement half{1, 4, 2};
  const GridArray once = rotate_array(f, quarter, RotationMode::Exact);
  const GridArray twice = rotate_array(once, quarter, RotationMode::Exact);
  CHECK(twice.v == rotate_array(f, half, RotationMode::Exact).v);

  // norm preserved: a permutation moves the same multiset of values
  std::vector<double> a(f.v.size()), b(f.v.size());
  for (std::size_t i = 0; i < f.v.size(); ++i) {
    a[i] = std::abs(f.v[i]);
    b[i] = std::abs(once.v[i]);
  }
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  CHECK(a == b);

  CHECK_THROWS_AS(rotate_array(f, GroupElement{1, 8, 1}, RotationMode::Exact),
                  std::invalid_argument);
  CHECK_THROWS_AS(rotate_array(GridArray(16, 16, Domain::Space), quarter, RotationMode::Exact),
                  std::invalid_argument);
  CHECK_THROWS_AS(rotate_array(GridArray(9, 17, Domain::Space), quarter, RotationMode::Exact),
                  std::invalid_argument);
  CHECK_NOTHROW(rotate_array(f, GroupElement{1, 8, 1}, RotationMode::Bilinear));
}

TEST_CASE("scatter_plain: upper bound, monotonicity, zero input") {
  std::mt19937_64 rng(73);
  const FrameInstance frame = full_cover_frame(2.0, 4, 17);
  const GridArray f = random_real(rng, 17, 17);
  const double nf = frobenius_norm(f);

  const double n11 = feature_norm(scatter_plain(frame, f, 1, 1));
  const double n12 = feature_norm(scatter_plain(frame, f, 1, 2));
  const double n22 = feature_norm(scatter_plain(frame, f, 2, 2));
  const double n23 = feature_norm(scatter_plain(frame, f, 2, 3));
  CHECK(n11 <= n12);
  CHECK(n12 <= n22);
  CHECK(n22 <= n23);
  CHECK(n23 <= nf * (1.0 + 1e-10));

  const FeatureSet z = scatter_plain(frame, GridArray(17, 17, Domain::Space), 2, 2);
  CHECK(feature_norm(z) == 0.0);

  CHECK_THROWS_AS(scatter_plain(frame, f, 2, 2, 10), CapExceededError);
  CHECK_THROWS_AS(scatter_plain(frame, f, frame.spec.M + 1, 1), std::invalid_argument);
  GridArray complex_in = f;
  complex_in.v[0] = cplx(0.0, 1.0);
  CHECK_THROWS_AS(scatter_plain(frame, complex_in, 1, 1), std::invalid_argument);
}

TEST_CASE("rotational and plain norms agree in exact mode") {
  std::mt19937_64 rng(79);
  for (int b : {1, 2, 4}) {
    const FrameInstance frame = full_cover_frame(2.0, b, 17);
    const GridArray f = random_real(rng, 17, 17);
    const FeatureSet plain = scatter_plain(frame, f, 2, 2);
    const FeatureSet rot = scatter_rotational(frame, f, 2, 2, RotationMode::Exact);
    CHECK(std::abs(feature_norm(rot) - feature_norm(plain)) / feature_norm(plain) < 1e-10);
    CHECK(feature_norm(rot) <= frobenius_norm(f) * (1.0 + 1e-10));
  }
}

TEST_CASE("equivariance: smoothing after rotation equals rotated smoothing") {
  std::mt19937_64 rng(83);
  const FrameInstance frame = full_cover_frame(2.0, 4, 17);
  const GridArray f = random_real(rng, 17, 17);
  const PathLayers paths = enumerate_paths(frame.spec, 2, 2);
  std::vector<ScatteringPath> sample = paths.layers[0];
  for (std::size_t i = 0; i < paths.layers[1].size(); i += 13) {
    sample.push_back(paths.layers[1][i]);
  }
  for (const GroupElement& r : group_elements(1, 4)) {
    const GridArray fr = rotate_array(f, r, RotationMode::Exact);
    for (const ScatteringPath& p : sample) {
      GridArray lhs = fr;
      for (const AtomIndex& e : p.entries) lhs = propagate(frame, lhs, e);
      lhs = smooth(frame, lhs);

      GridArray rhs = f;
      for (const AtomIndex& e : rotate_path(p, r, 4).entries) rhs = propagate(frame, rhs, e);
      rhs = rotate_array(smooth(frame, rhs), r, RotationMode::Exact);

      CHECK(frobenius_dist(lhs, rhs) / (frobenius_norm(rhs) + 1e-300) < 1e-10);
    }
  }
}

TEST_CASE("rotational features are invariant under the group, exact mode") {
  std::mt19937_64 rng(89);
  for (int b : {1, 2, 4}) {
    const FrameInstance frame = full_cover_frame(2.0, b, 17);
    const GridArray f = random_real(rng, 17, 17);
    const FeatureSet base = scatter_rotational(frame, f, 2, 2, RotationMode::Exact);
    for (const GroupElement& r : group_elements(1, b)) {
      const GridArray fr = rotate_array(f, r, RotationMode::Exact);
      const FeatureSet rot = scatter_rotational(frame, fr, 2, 2, RotationMode::Exact);
      REQUIRE(rot.maps.size() == base.maps.size());
      for (std::size_t i = 0; i < base.maps.size(); ++i) {
        double num = 0.0, den = 0.0;
        for (std::size_t k = 0; k < base.maps[i].v.size(); ++k) {
          const double d = rot.maps[i].v[k] - base.maps[i].v[k];
          num += d * d;
          den += base.maps[i].v[k] * base.maps[i].v[k];
        }
        CHECK(std::sqrt(num / den) < 1e-8);
      }
    }
  }
}

TEST_CASE("bilinear mode: loose invariance for B = 8 on a smooth image") {
  std::mt19937_64 rng(97);
  const FrameInstance frame = full_cover_frame(2.0, 8, 33);
  // smooth centered blob, zero near the boundary so corner loss is negligible
  GridArray f(33, 33, Domain::Space);
  for (int a = 0; a < 33; ++a) {
    for (int b = 0; b < 33; ++b) {
      const double dx = (a - 16.0) / 8.0, dy = (b - 16.0) / 8.0;
      f.at(a, b) = std::exp(-(dx * dx + dy * dy)) * (1.0 + 0.3 * std::sin(2.0 * dx + dy));
    }
  }
  const FeatureSet base = scatter_rotational(frame, f, 2, 1, RotationMode::Bilinear);
  const GroupElement eighth{1, 8, 1};
  GridArray fr = rotate_array(f, eighth, RotationMode::Bilinear);
  for (cplx& z : fr.v) z = cplx(z.real(), 0.0);
  const FeatureSet rot = scatter_rotational(frame, fr, 2, 1, RotationMode::Bilinear);
  CHECK(feature_distance(rot, base) / feature_norm(base) < 5e-2);
}

TEST_CASE("feature distance: identity, triangle inequality, non-expansiveness") {
  std::mt19937_64 rng(101);
  const FrameInstance frame = full_cover_frame(2.0, 4, 17);
  const GridArray f = random_real(rng, 17, 17);
  const FeatureSet sf = scatter_plain(frame, f, 2, 2);
  CHECK(feature_distance(sf, sf) == 0.0);

  for (int t = 0; t < 5; ++t) {
    const GridArray a = random_real(rng, 17, 17);
    const GridArray b = random_real(rng, 17, 17);
    const GridArray c = random_real(rng, 17, 17);
    const FeatureSet sa = scatter_plain(frame, a, 2, 2);
    const FeatureSet sb = scatter_plain(frame, b, 2, 2);
    const FeatureSet sc = scatter_plain(frame, c, 2, 2);
    CHECK(feature_distance(sa, sc) <=
          feature_distance(sa, sb) + feature_distance(sb, sc) + 1e-12);
  }

  for (int t = 0; t < 20; ++t) {
    const GridArray a = random_real(rng, 17, 17);
    const GridArray b = random_real(rng, 17, 17);
    GridArray diff = a;
    for (std::size_t i = 0; i < diff.v.size(); ++i) diff.v[i] -= b.v[i];
    const double sd = frobenius_norm(diff);
    CHECK(feature_distance(scatter_plain(frame, a, 2, 2), scatter_plain(frame, b, 2, 2)) <=
          sd * (1.0 + 1e-10));
    CHECK(feature_distance(scatter_rotational(frame, a, 2, 2, RotationMode::Exact),
                           scatter_rotational(frame, b, 2, 2, RotationMode::Exact)) <=
          sd * (1.0 + 1e-10));
  }

  const FeatureSet other = scatter_plain(frame, f, 1, 2);
  CHECK_THROWS_AS(feature_distance(sf, other), std::invalid_argument);
}

TEST_CASE("rotational norm dominates plain norms at lower truncation") {
  std::mt19937_64 rng(103);
  const FrameInstance frame = full_cover_frame(2.0, 4, 17);
  const GridArray f = random_real(rng, 17, 17);
  const double rot = feature_norm(scatter_rotational(frame, f, 3, 2, RotationMode::Exact));
  for (int mp = 1; mp <= 3; ++mp) {
    CHECK(feature_norm(scatter_plain(frame, f, mp, 2)) <= rot * (1.0 + 1e-10));
  }
}

TEST_CASE("captured energy is nondecreasing in depth for band-limited input") {
  std::mt19937_64 rng(107);
  const FrameInstance frame = full_cover_frame(2.0, 4, 17);
  const GridArray f = random_bandlimited(rng, 17, 4.0);
  double prev = -1.0;
  for (int k = 1; k <= 3; ++k) {
    const double nk = feature_norm(scatter_plain(frame, f, 2, k));
    const double ratio = nk * nk / (frobenius_norm(f) * frobenius_norm(f));
    CHECK(ratio >= prev);
    prev = ratio;
  }
}

TEST_CASE("stability: ratios below one, monotone sweeps, zero perturbation") {
  std::mt19937_64 rng(109);
  const FrameInstance frame = full_cover_frame(2.0, 4, 17);
  const GridArray f = random_bandlimited(rng, 17, 6.0);

  for (TransformKind kind : {TransformKind::Plain, TransformKind::Rotational}) {
    const StabilityReport shifts = stability_shift_probe(
        frame, f, 2, 2, kind, RotationMode::Exact, {{0, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 0}});
    CHECK(shifts.rows[0].magnitude == 0.0);
    CHECK(shifts.rows[0].signal_dist == 0.0);
    CHECK(shifts.rows[0].feature_dist == 0.0);
    CHECK(shifts.rows[0].ratio == 0.0);
    double prev = 0.0;
    for (std::size_t i = 1; i < shifts.rows.size(); ++i) {
      CHECK(shifts.rows[i].ratio <= 1.0 + 1e-10);
      CHECK(shifts.rows[i].feature_dist >= prev);
      prev = shifts.rows[i].feature_dist;
    }

    const WarpField field = default_warp_field(17, 17);
    const double a_max = 0.25 / field.max_gradient();
    const StabilityReport warps =
        stability_warp_probe(frame, f, 2, 2, kind, RotationMode::Exact, field,
                             {0.25 * a_max, 0.5 * a_max, 0.75 * a_max, a_max});
    prev = 0.0;
    for (const StabilityRow& row : warps.rows) {
      CHECK(row.ratio <= 1.0 + 1e-10);
      CHECK(row.feature_dist >= prev);
      prev = row.feature_dist;
    }

    CHECK_THROWS_AS(stability_warp_probe(frame, f, 2, 2, kind, RotationMode::Exact, field,
                                         {2.0 * a_max}),
                    std::invalid_argument);
  }
}

TEST_CASE("serial and parallel scattering agree bit-exactly") {
  std::mt19937_64 rng(113);
  const FrameInstance frame = full_cover_frame(2.0, 4, 17);
  const GridArray f = random_real(rng, 17, 17);
  const FeatureSet ps = scatter_plain(frame, f, 2, 2, kDefaultPathCap, Exec::Serial);
  const FeatureSet pp = scatter_plain(frame, f, 2, 2, kDefaultPathCap, Exec::Parallel);
  REQUIRE(ps.maps.size() == pp.maps.size());
  for (std::size_t i = 0; i < ps.maps.size(); ++i) CHECK(ps.maps[i].v == pp.maps[i].v);

  const FeatureSet rs =
      scatter_rotational(frame, f, 2, 2, RotationMode::Exact, kDefaultPathCap, Exec::Serial);
  const FeatureSet rp =
      scatter_rotational(frame, f, 2, 2, RotationMode::Exact, kDefaultPathCap, Exec::Parallel);
  REQUIRE(rs.maps.size() == rp.maps.size());
  for (std::size_t i = 0; i < rs.maps.size(); ++i) CHECK(rs.maps[i].v == rp.maps[i].v);
}
