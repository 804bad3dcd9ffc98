#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rufst/fft.hpp"
#include "rufst/frame.hpp"
#include "rufst/grid.hpp"
#include "rufst/threading.hpp"

namespace rufst {

struct CapExceededError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr std::int64_t kDefaultPathCap = 1'000'000;

/// A finite product of band atom indices p = ((m_1, r_1), ..., (m_k, r_k)).
struct ScatteringPath {
  std::vector<AtomIndex> entries;
  std::string to_string() const;  // "k2/m3.j5-m1.j0"
};

/// Left action of g in G on a path: every entry (m, s) becomes (m, g s).
ScatteringPath rotate_path(const ScatteringPath& p, const GroupElement& g, int base_order);

/// Per-layer path lists, layers()[k-1] holding G[M]^k in lexicographic order.
struct PathLayers {
  std::vector<std::vector<ScatteringPath>> layers;
};

PathLayers enumerate_paths(const FrameSpec& spec, int M, int K,
                           std::int64_t cap = kDefaultPathCap);

/// Coset layers Q[M,k] = G_0[M] x G[M]^{k-1}: first entry ranges over coset
/// representatives, later entries over all of G[M].
PathLayers enumerate_coset_paths(const FrameSpec& spec, int M, int K,
                                 std::int64_t cap = kDefaultPathCap);

enum class RotationMode { Exact, Bilinear };

/// f(x) -> f(rx) about the grid center. Exact mode requires a square odd grid
/// and an angle that is a multiple of pi/2 (an index permutation); Bilinear
/// interpolates and fills with zero outside the grid.
GridArray rotate_array(const GridArray& f, const GroupElement& r, RotationMode mode);
RealArray rotate_array(const RealArray& f, const GroupElement& r, RotationMode mode);

/// U[p]F = |F (x) f_p| under circular convolution; real and nonnegative.
GridArray propagate(const FrameInstance& frame, const GridArray& f, const AtomIndex& idx);

/// Convolution with the low-pass atom f_0 (no modulus); complex allowed.
GridArray smooth(const FrameInstance& frame, const GridArray& f);

enum class TransformKind { Plain, Rotational };

/// Ordered scattering output maps plus their identifiers. The rotational
/// kind's first map already carries the |G|^{-1/2} weight.
struct FeatureSet {
  TransformKind kind = TransformKind::Plain;
  RotationMode mode = RotationMode::Exact;
  int M = 0;
  int K = 0;
  int n1 = 0;
  int n2 = 0;
  std::vector<std::string> layout;
  std::vector<RealArray> maps;

  bool same_layout(const FeatureSet& o) const;
};

FeatureSet scatter_plain(const FrameInstance& frame, const GridArray& f, int M, int K,
                         std::int64_t cap = kDefaultPathCap, Exec exec = Exec::Parallel);

FeatureSet scatter_rotational(const FrameInstance& frame, const GridArray& f, int M, int K,
                              RotationMode mode, std::int64_t cap = kDefaultPathCap,
                              Exec exec = Exec::Parallel);

double feature_norm(const FeatureSet& fs);
double feature_distance(const FeatureSet& a, const FeatureSet& b);

/// Circular integer translation: out(n) = F(n - y mod N).
GridArray circular_shift(const GridArray& f, int y1, int y2);

/// Displacement field for T_tau f(x) = f(x - tau(x)). Sampling is bilinear
/// with periodic wrap, matching the circular convolution model.
struct WarpField {
  RealArray tau1;
  RealArray tau2;
  /// max |d tau_i / d x_j| over the grid (periodic central differences).
  double max_gradient() const;
};

/// A fixed smooth unit field for probes; scale by an amplitude before use.
WarpField default_warp_field(int n1, int n2);

GridArray warp_array(const GridArray& f, const WarpField& tau, double amplitude);

struct StabilityRow {
  double magnitude = 0.0;
  double signal_dist = 0.0;
  double feature_dist = 0.0;
  double ratio = 0.0;  // feature_dist / signal_dist, 0 when signal_dist is 0
};

struct StabilityReport {
  std::vector<StabilityRow> rows;
};

StabilityReport stability_shift_probe(const FrameInstance& frame, const GridArray& f,
                                      int M, int K, TransformKind kind, RotationMode mode,
                                      const std::vector<std::pair<int, int>>& shifts,
                                      std::int64_t cap = kDefaultPathCap,
                                      Exec exec = Exec::Parallel);

/// Sweeps T_tau with tau = amplitude * field; rejects any amplitude whose
/// scaled field violates the 1/4 gradient bound.
StabilityReport stability_warp_probe(const FrameInstance& frame, const GridArray& f,
                                     int M, int K, TransformKind kind, RotationMode mode,
                                     const WarpField& field,
                                     const std::vector<double>& amplitudes,
                                     std::int64_t cap = kDefaultPathCap,
                                     Exec exec = Exec::Parallel);

}  // namespace rufst
