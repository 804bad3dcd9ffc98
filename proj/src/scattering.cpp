#include "rufst/scattering.hpp"

#include <cmath>
#include <stdexcept>

namespace rufst {

std::string ScatteringPath::to_string() const {
  std::string s = "k" + std::to_string(entries.size()) + "/";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i) s += "-";
    s += entries[i].to_string();
  }
  return s;
}

ScatteringPath rotate_path(const ScatteringPath& p, const GroupElement& g, int base_order) {
  ScatteringPath out = p;
  for (AtomIndex& e : out.entries) {
    e.j = g.compose(e.rotation(base_order)).index;
  }
  return out;
}

namespace {

std::vector<AtomIndex> band_list(const FrameSpec& spec, int M) {
  std::vector<AtomIndex> out;
  for (int m = 1; m <= M; ++m) {
    const std::int64_t order = pow2_ceil(m) * spec.B;
    for (std::int64_t j = 0; j < order; ++j) out.push_back(AtomIndex::band(m, j));
  }
  return out;
}

std::vector<AtomIndex> rep_list(int M) {
  std::vector<AtomIndex> out;
  for (int m = 1; m <= M; ++m) {
    for (std::int64_t j = 0; j < pow2_ceil(m); ++j) out.push_back(AtomIndex::band(m, j));
  }
  return out;
}

// Path counts per layer with overflow-safe cap enforcement.
std::vector<std::int64_t> layer_sizes_checked(std::int64_t first_layer, std::int64_t branch,
                                              int K, std::int64_t cap) {
  std::vector<std::int64_t> sizes;
  std::int64_t layer = first_layer;
  std::int64_t total = 0;
  for (int k = 1; k <= K; ++k) {
    if (k > 1) {
      if (branch != 0 && layer > cap / branch) {
        throw CapExceededError("path count exceeds cap " + std::to_string(cap));
      }
      layer *= branch;
    }
    total += layer;
    if (total > cap) {
      throw CapExceededError("path count exceeds cap " + std::to_string(cap));
    }
    sizes.push_back(layer);
  }
  return sizes;
}

void validate_mk(const FrameSpec& spec, int M, int K) {
  if (M < 1 || K < 1) throw std::invalid_argument("scattering: M and K must be >= 1");
  if (M > spec.M) {
    throw std::invalid_argument("scattering: frame built to level " + std::to_string(spec.M) +
                                " < requested M " + std::to_string(M));
  }
}

}  // namespace

PathLayers enumerate_paths(const FrameSpec& spec, int M, int K, std::int64_t cap) {
  spec.validate();
  if (M < 1 || K < 1) throw std::invalid_argument("enumerate_paths: M, K must be >= 1");
  const std::vector<AtomIndex> bands = band_list(spec, M);
  const std::int64_t p = static_cast<std::int64_t>(bands.size());
  const std::vector<std::int64_t> sizes = layer_sizes_checked(p, p, K, cap);

  PathLayers out;
  out.layers.resize(K);
  for (int k = 1; k <= K; ++k) {
    std::vector<ScatteringPath>& layer = out.layers[k - 1];
    layer.reserve(static_cast<std::size_t>(sizes[k - 1]));
    std::vector<std::size_t> odo(static_cast<std::size_t>(k), 0);
    for (std::int64_t c = 0; c < sizes[k - 1]; ++c) {
      ScatteringPath path;
      path.entries.reserve(odo.size());
      for (std::size_t d : odo) path.entries.push_back(bands[d]);
      layer.push_back(std::move(path));
      for (int d = k - 1; d >= 0; --d) {
        if (++odo[static_cast<std::size_t>(d)] < bands.size()) break;
        odo[static_cast<std::size_t>(d)] = 0;
      }
    }
  }
  return out;
}

PathLayers enumerate_coset_paths(const FrameSpec& spec, int M, int K, std::int64_t cap) {
  spec.validate();
  if (M < 1 || K < 1) throw std::invalid_argument("enumerate_coset_paths: M, K must be >= 1");
  const std::vector<AtomIndex> reps = rep_list(M);
  const std::vector<AtomIndex> bands = band_list(spec, M);
  const std::vector<std::int64_t> sizes =
      layer_sizes_checked(static_cast<std::int64_t>(reps.size()),
                          static_cast<std::int64_t>(bands.size()), K, cap);

  PathLayers out;
  out.layers.resize(K);
  for (int k = 1; k <= K; ++k) {
    std::vector<ScatteringPath>& layer = out.layers[k - 1];
    layer.reserve(static_cast<std::size_t>(sizes[k - 1]));
    std::vector<std::size_t> odo(static_cast<std::size_t>(k), 0);
    for (std::int64_t c = 0; c < sizes[k - 1]; ++c) {
      ScatteringPath path;
      path.entries.reserve(odo.size());
      for (std::size_t d = 0; d < odo.size(); ++d) {
        path.entries.push_back(d == 0 ? reps[odo[d]] : bands[odo[d]]);
      }
      layer.push_back(std::move(path));
      for (int d = k - 1; d >= 0; --d) {
        const std::size_t limit = d == 0 ? reps.size() : bands.size();
        if (++odo[static_cast<std::size_t>(d)] < limit) break;
        odo[static_cast<std::size_t>(d)] = 0;
      }
    }
  }
  return out;
}

namespace {

// Quarter-turn count when angle(r) is a multiple of pi/2, else -1.
int exact_turns(const GroupElement& r) {
  const std::int64_t n = r.order();
  if ((4 * r.index) % n != 0) return -1;
  return static_cast<int>(((4 * r.index) / n) % 4);
}

void require_exact_geometry(int n1, int n2) {
  if (n1 != n2 || n1 % 2 == 0) {
    throw std::invalid_argument("rotate_array: exact mode needs a square odd grid");
  }
}

template <typename Array, typename Value>
Array rotate_impl(const Array& f, const GroupElement& r, RotationMode mode, Value zero) {
  Array out = f;
  const double c1 = 0.5 * (f.n1 - 1), c2 = 0.5 * (f.n2 - 1);
  if (mode == RotationMode::Exact) {
    require_exact_geometry(f.n1, f.n2);
    const int t = exact_turns(r);
    if (t < 0) {
      throw std::invalid_argument("rotate_array: exact mode needs an angle multiple of pi/2");
    }
    const int c = f.n1 / 2;
    for (int i1 = 0; i1 < f.n1; ++i1) {
      for (int i2 = 0; i2 < f.n2; ++i2) {
        int d1 = i1 - c, d2 = i2 - c;
        for (int q = 0; q < t; ++q) {
          const int x = -d2, y = d1;  // counter-clockwise quarter turn
          d1 = x;
          d2 = y;
        }
        out.at(i1, i2) = f.at(c + d1, c + d2);
      }
    }
    return out;
  }
  const double ca = std::cos(r.angle()), sa = std::sin(r.angle());
  for (int i1 = 0; i1 < f.n1; ++i1) {
    for (int i2 = 0; i2 < f.n2; ++i2) {
      const double d1 = i1 - c1, d2 = i2 - c2;
      const double s1 = c1 + ca * d1 - sa * d2;
      const double s2 = c2 + sa * d1 + ca * d2;
      const int a1 = static_cast<int>(std::floor(s1));
      const int a2 = static_cast<int>(std::floor(s2));
      const double f1 = s1 - a1, f2 = s2 - a2;
      Value acc = zero;
      for (int u = 0; u <= 1; ++u) {
        for (int v = 0; v <= 1; ++v) {
          const int p1 = a1 + u, p2 = a2 + v;
          if (p1 < 0 || p1 >= f.n1 || p2 < 0 || p2 >= f.n2) continue;
          const double w = (u ? f1 : 1.0 - f1) * (v ? f2 : 1.0 - f2);
          acc += w * f.at(p1, p2);
        }
      }
      out.at(i1, i2) = acc;
    }
  }
  return out;
}

}  // namespace

GridArray rotate_array(const GridArray& f, const GroupElement& r, RotationMode mode) {
  return rotate_impl(f, r, mode, cplx(0.0, 0.0));
}

RealArray rotate_array(const RealArray& f, const GroupElement& r, RotationMode mode) {
  return rotate_impl(f, r, mode, 0.0);
}

namespace {

GridArray masked_idft(const GridArray& spectrum, const SpectralAtom& atom) {
  GridArray masked(spectrum.n1, spectrum.n2, Domain::Frequency);
  if (!atom.empty) {
    for (int k1 = atom.k1_min; k1 < atom.k1_min + atom.s1; ++k1) {
      for (int k2 = atom.k2_min; k2 < atom.k2_min + atom.s2; ++k2) {
        masked.at_freq(k1, k2) = spectrum.at_freq(k1, k2) * atom.mask_at(k1, k2);
      }
    }
  }
  return idft(masked);
}

void check_space_input(const FrameInstance& frame, const GridArray& f) {
  if (f.domain != Domain::Space) {
    throw std::invalid_argument("scattering: input must be space-domain");
  }
  if (f.n1 != frame.spec.n1 || f.n2 != frame.spec.n2) {
    throw std::invalid_argument("scattering: array shape does not match frame grid");
  }
}

}  // namespace

GridArray propagate(const FrameInstance& frame, const GridArray& f, const AtomIndex& idx) {
  check_space_input(frame, f);
  GridArray out = masked_idft(dft(f), frame.atom(idx));
  for (cplx& z : out.v) z = cplx(std::abs(z), 0.0);
  return out;
}

GridArray smooth(const FrameInstance& frame, const GridArray& f) {
  check_space_input(frame, f);
  return masked_idft(dft(f), frame.lowpass());
}

bool FeatureSet::same_layout(const FeatureSet& o) const {
  return kind == o.kind && M == o.M && K == o.K && n1 == o.n1 && n2 == o.n2 &&
         layout == o.layout;
}

double feature_norm(const FeatureSet& fs) {
  double s = 0.0;
  for (const RealArray& m : fs.maps) {
    for (double x : m.v) s += x * x;
  }
  return std::sqrt(s);
}

double feature_distance(const FeatureSet& a, const FeatureSet& b) {
  if (!a.same_layout(b)) {
    throw std::invalid_argument("feature_distance: layout mismatch");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.maps.size(); ++i) {
    const RealArray& x = a.maps[i];
    const RealArray& y = b.maps[i];
    for (std::size_t j = 0; j < x.v.size(); ++j) {
      const double d = x.v[j] - y.v[j];
      s += d * d;
    }
  }
  return std::sqrt(s);
}

namespace {

struct TreePlan {
  std::vector<AtomIndex> bands;
  std::vector<std::int64_t> layer_sizes;    // P^k, k = 1..K
  std::vector<std::int64_t> layer_offsets;  // slot of first map of layer k
  std::int64_t total_maps = 1;
};

TreePlan make_plan(const FrameSpec& spec, int M, int K, std::int64_t cap) {
  TreePlan plan;
  plan.bands = band_list(spec, M);
  const std::int64_t p = static_cast<std::int64_t>(plan.bands.size());
  plan.layer_sizes = layer_sizes_checked(p, p, K, cap);
  std::int64_t offset = 1;
  for (int k = 0; k < K; ++k) {
    plan.layer_offsets.push_back(offset);
    offset += plan.layer_sizes[static_cast<std::size_t>(k)];
  }
  plan.total_maps = offset;
  return plan;
}

std::int64_t band_pos(const FrameSpec& spec, const AtomIndex& idx) {
  return band_atom_count(spec, idx.m - 1) + idx.j;
}

RealArray real_part(const GridArray& g) {
  RealArray out(g.n1, g.n2);
  for (std::size_t i = 0; i < g.v.size(); ++i) out.v[i] = g.v[i].real();
  return out;
}

// One node of the path tree: store the smoothed output of `x`, then recurse
// into the children propagations. `flat` is the node's lexicographic index
// within its layer.
void eval_node(const FrameInstance& frame, const TreePlan& plan, int K,
               const GridArray& x, int depth, std::int64_t flat,
               std::vector<RealArray>& maps) {
  const GridArray spectrum = dft(x);
  maps[static_cast<std::size_t>(
      depth == 0 ? 0 : plan.layer_offsets[static_cast<std::size_t>(depth - 1)] + flat)] =
      real_part(masked_idft(spectrum, frame.lowpass()));
  if (depth == K) return;
  const std::int64_t p = static_cast<std::int64_t>(plan.bands.size());
  for (std::int64_t i = 0; i < p; ++i) {
    GridArray child = masked_idft(spectrum, frame.atom(plan.bands[static_cast<std::size_t>(i)]));
    for (cplx& z : child.v) z = cplx(std::abs(z), 0.0);
    eval_node(frame, plan, K, child, depth + 1, flat * p + i, maps);
  }
}

void check_real_input(const GridArray& f) {
  for (const cplx& z : f.v) {
    if (z.imag() != 0.0) {
      throw std::invalid_argument("scattering: input array must be real-valued");
    }
  }
}

std::vector<std::string> plain_layout(const FrameSpec& spec, const TreePlan& plan, int M, int K) {
  std::vector<std::string> layout;
  layout.reserve(static_cast<std::size_t>(plan.total_maps));
  layout.push_back("k0/f0");
  const PathLayers paths = enumerate_paths(spec, M, K, plan.total_maps);
  for (const auto& layer : paths.layers) {
    for (const ScatteringPath& p : layer) layout.push_back(p.to_string());
  }
  return layout;
}

}  // namespace

FeatureSet scatter_plain(const FrameInstance& frame, const GridArray& f, int M, int K,
                         std::int64_t cap, Exec exec) {
  check_space_input(frame, f);
  check_real_input(f);
  validate_mk(frame.spec, M, K);
  const TreePlan plan = make_plan(frame.spec, M, K, cap);

  FeatureSet out;
  out.kind = TransformKind::Plain;
  out.M = M;
  out.K = K;
  out.n1 = f.n1;
  out.n2 = f.n2;
  out.layout = plain_layout(frame.spec, plan, M, K);
  out.maps.resize(static_cast<std::size_t>(plan.total_maps));

  if (exec == Exec::Serial) {
    eval_node(frame, plan, K, f, 0, 0, out.maps);
    return out;
  }

  // Parallel over the layer-1 subtrees; the root smoothing plus the first
  // propagation layer are peeled off so subtrees become independent.
  const GridArray spectrum0 = dft(f);
  out.maps[0] = real_part(masked_idft(spectrum0, frame.lowpass()));
  const std::int64_t p = static_cast<std::int64_t>(plan.bands.size());
#pragma omp parallel for schedule(dynamic) num_threads(worker_count())
  for (std::int64_t i = 0; i < p; ++i) {
    GridArray child = masked_idft(spectrum0, frame.atom(plan.bands[static_cast<std::size_t>(i)]));
    for (cplx& z : child.v) z = cplx(std::abs(z), 0.0);
    eval_node(frame, plan, K, child, 1, i, out.maps);
  }
  return out;
}

FeatureSet scatter_rotational(const FrameInstance& frame, const GridArray& f, int M, int K,
                              RotationMode mode, std::int64_t cap, Exec exec) {
  check_space_input(frame, f);
  validate_mk(frame.spec, M, K);
  const std::vector<GroupElement> group = group_elements(1, frame.spec.B);
  if (mode == RotationMode::Exact) {
    require_exact_geometry(f.n1, f.n2);
    for (const GroupElement& r : group) {
      if (exact_turns(r) < 0) {
        throw std::invalid_argument(
            "scatter_rotational: exact mode needs every element of G to be a quarter-turn "
            "multiple (B in {1, 2, 4})");
      }
    }
  }

  const FeatureSet plain = scatter_plain(frame, f, M, K, cap, exec);
  const TreePlan plan = make_plan(frame.spec, M, K, cap);
  const std::vector<AtomIndex> reps = rep_list(M);
  const std::int64_t p = static_cast<std::int64_t>(plan.bands.size());
  const std::int64_t p0 = static_cast<std::int64_t>(reps.size());

  FeatureSet out;
  out.kind = TransformKind::Rotational;
  out.mode = mode;
  out.M = M;
  out.K = K;
  out.n1 = f.n1;
  out.n2 = f.n2;

  std::vector<std::int64_t> coset_sizes(static_cast<std::size_t>(K));
  std::vector<std::int64_t> coset_offsets(static_cast<std::size_t>(K));
  std::int64_t offset = 1;
  for (int k = 1; k <= K; ++k) {
    std::int64_t size = p0;
    for (int d = 1; d < k; ++d) size *= p;
    coset_sizes[static_cast<std::size_t>(k - 1)] = size;
    coset_offsets[static_cast<std::size_t>(k - 1)] = offset;
    offset += size;
  }
  out.maps.resize(static_cast<std::size_t>(offset));
  out.layout.reserve(static_cast<std::size_t>(offset));
  out.layout.push_back("k0/f0");
  const PathLayers cosets = enumerate_coset_paths(frame.spec, M, K, cap);
  for (const auto& layer : cosets.layers) {
    for (const ScatteringPath& q : layer) out.layout.push_back(q.to_string());
  }

  // First term: |G|^{-1/2} l2 norm over G of the rotated smoothed input.
  {
    RealArray acc(f.n1, f.n2);
    for (const GroupElement& r : group) {
      const RealArray rot = rotate_array(plain.maps[0], r, mode);
      for (std::size_t i = 0; i < acc.v.size(); ++i) acc.v[i] += rot.v[i] * rot.v[i];
    }
    RealArray first(f.n1, f.n2);
    const double w = 1.0 / std::sqrt(static_cast<double>(group.size()));
    for (std::size_t i = 0; i < acc.v.size(); ++i) first.v[i] = w * std::sqrt(acc.v[i]);
    out.maps[0] = std::move(first);
  }

  for (int k = 1; k <= K; ++k) {
    const std::int64_t n_cosets = coset_sizes[static_cast<std::size_t>(k - 1)];
    const std::vector<ScatteringPath>& layer = cosets.layers[static_cast<std::size_t>(k - 1)];
    const std::int64_t out_base = coset_offsets[static_cast<std::size_t>(k - 1)];
    const std::int64_t plain_base = plan.layer_offsets[static_cast<std::size_t>(k - 1)];

    auto run_coset = [&](std::int64_t c) {
      const ScatteringPath& q = layer[static_cast<std::size_t>(c)];
      RealArray acc(f.n1, f.n2);
      for (const GroupElement& r : group) {
        const ScatteringPath rq = rotate_path(q, r, frame.spec.B);
        std::int64_t flat = 0;
        for (const AtomIndex& e : rq.entries) flat = flat * p + band_pos(frame.spec, e);
        const RealArray rot =
            rotate_array(plain.maps[static_cast<std::size_t>(plain_base + flat)], r, mode);
        for (std::size_t i = 0; i < acc.v.size(); ++i) acc.v[i] += rot.v[i] * rot.v[i];
      }
      RealArray map(f.n1, f.n2);
      for (std::size_t i = 0; i < acc.v.size(); ++i) map.v[i] = std::sqrt(acc.v[i]);
      out.maps[static_cast<std::size_t>(out_base + c)] = std::move(map);
    };

    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic) num_threads(worker_count())
      for (std::int64_t c = 0; c < n_cosets; ++c) run_coset(c);
    } else {
      for (std::int64_t c = 0; c < n_cosets; ++c) run_coset(c);
    }
  }
  return out;
}

GridArray circular_shift(const GridArray& f, int y1, int y2) {
  GridArray out = f;
  const int m1 = ((y1 % f.n1) + f.n1) % f.n1;
  const int m2 = ((y2 % f.n2) + f.n2) % f.n2;
  for (int i1 = 0; i1 < f.n1; ++i1) {
    for (int i2 = 0; i2 < f.n2; ++i2) {
      out.at(i1, i2) = f.at((i1 - m1 + f.n1) % f.n1, (i2 - m2 + f.n2) % f.n2);
    }
  }
  return out;
}

double WarpField::max_gradient() const {
  double g = 0.0;
  for (const RealArray* tau : {&tau1, &tau2}) {
    const int n1 = tau->n1, n2 = tau->n2;
    for (int i1 = 0; i1 < n1; ++i1) {
      for (int i2 = 0; i2 < n2; ++i2) {
        const double d1 =
            0.5 * (tau->at((i1 + 1) % n1, i2) - tau->at((i1 - 1 + n1) % n1, i2));
        const double d2 =
            0.5 * (tau->at(i1, (i2 + 1) % n2) - tau->at(i1, (i2 - 1 + n2) % n2));
        g = std::max({g, std::abs(d1), std::abs(d2)});
      }
    }
  }
  return g;
}

WarpField default_warp_field(int n1, int n2) {
  WarpField field;
  field.tau1 = RealArray(n1, n2);
  field.tau2 = RealArray(n1, n2);
  for (int i1 = 0; i1 < n1; ++i1) {
    for (int i2 = 0; i2 < n2; ++i2) {
      field.tau1.at(i1, i2) = std::sin(kTwoPi * i2 / n2) * std::cos(kTwoPi * i1 / n1);
      field.tau2.at(i1, i2) = std::sin(kTwoPi * i1 / n1);
    }
  }
  return field;
}

GridArray warp_array(const GridArray& f, const WarpField& tau, double amplitude) {
  if (tau.tau1.n1 != f.n1 || tau.tau1.n2 != f.n2 || tau.tau2.n1 != f.n1 ||
      tau.tau2.n2 != f.n2) {
    throw std::invalid_argument("warp_array: field shape mismatch");
  }
  GridArray out = f;
  for (int i1 = 0; i1 < f.n1; ++i1) {
    for (int i2 = 0; i2 < f.n2; ++i2) {
      const double s1 = i1 - amplitude * tau.tau1.at(i1, i2);
      const double s2 = i2 - amplitude * tau.tau2.at(i1, i2);
      const int a1 = static_cast<int>(std::floor(s1));
      const int a2 = static_cast<int>(std::floor(s2));
      const double f1 = s1 - a1, f2 = s2 - a2;
      cplx acc(0.0, 0.0);
      for (int u = 0; u <= 1; ++u) {
        for (int v = 0; v <= 1; ++v) {
          const double w = (u ? f1 : 1.0 - f1) * (v ? f2 : 1.0 - f2);
          const int p1 = (((a1 + u) % f.n1) + f.n1) % f.n1;
          const int p2 = (((a2 + v) % f.n2) + f.n2) % f.n2;
          acc += w * f.at(p1, p2);
        }
      }
      out.at(i1, i2) = acc;
    }
  }
  return out;
}

namespace {

FeatureSet scatter_dispatch(const FrameInstance& frame, const GridArray& f, int M, int K,
                            TransformKind kind, RotationMode mode, std::int64_t cap, Exec exec) {
  if (kind == TransformKind::Plain) return scatter_plain(frame, f, M, K, cap, exec);
  return scatter_rotational(frame, f, M, K, mode, cap, exec);
}

}  // namespace

StabilityReport stability_shift_probe(const FrameInstance& frame, const GridArray& f,
                                      int M, int K, TransformKind kind, RotationMode mode,
                                      const std::vector<std::pair<int, int>>& shifts,
                                      std::int64_t cap, Exec exec) {
  const FeatureSet base = scatter_dispatch(frame, f, M, K, kind, mode, cap, exec);
  StabilityReport report;
  for (const auto& [y1, y2] : shifts) {
    const GridArray shifted = circular_shift(f, y1, y2);
    const FeatureSet features = scatter_dispatch(frame, shifted, M, K, kind, mode, cap, exec);
    StabilityRow row;
    row.magnitude = std::hypot(static_cast<double>(y1), static_cast<double>(y2));
    row.signal_dist = frobenius_dist(shifted, f);
    row.feature_dist = feature_distance(features, base);
    row.ratio = row.signal_dist > 0.0 ? row.feature_dist / row.signal_dist : 0.0;
    report.rows.push_back(row);
  }
  return report;
}

StabilityReport stability_warp_probe(const FrameInstance& frame, const GridArray& f,
                                     int M, int K, TransformKind kind, RotationMode mode,
                                     const WarpField& field,
                                     const std::vector<double>& amplitudes,
                                     std::int64_t cap, Exec exec) {
  const double unit_gradient = field.max_gradient();
  for (double a : amplitudes) {
    if (std::abs(a) * unit_gradient > 0.25) {
      throw std::invalid_argument("stability_warp_probe: |grad tau| exceeds 1/4");
    }
  }
  const FeatureSet base = scatter_dispatch(frame, f, M, K, kind, mode, cap, exec);
  StabilityReport report;
  for (double a : amplitudes) {
    const GridArray warped = warp_array(f, field, a);
    const FeatureSet features = scatter_dispatch(frame, warped, M, K, kind, mode, cap, exec);
    StabilityRow row;
    row.magnitude = a;
    row.signal_dist = frobenius_dist(warped, f);
    row.feature_dist = feature_distance(features, base);
    row.ratio = row.signal_dist > 0.0 ? row.feature_dist / row.signal_dist : 0.0;
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace rufst
