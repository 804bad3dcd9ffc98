#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace rufst {

using cplx = std::complex<double>;

enum class Domain { Space, Frequency };

/// A complex-valued N1 x N2 array. Space-domain arrays are indexed by pixel
/// (i1, i2) in [0, N1) x [0, N2). Frequency-domain arrays use the centered
/// layout: storage index (i1, i2) holds frequency k_j = i_j - floor(N_j / 2),
/// so the lattice is Omega_j = {-floor(N_j/2), ..., ceil(N_j/2) - 1}.
struct GridArray {
  int n1 = 0;
  int n2 = 0;
  Domain domain = Domain::Space;
  std::vector<cplx> v;

  GridArray() = default;
  GridArray(int rows, int cols, Domain d)
      : n1(rows), n2(cols), domain(d), v(static_cast<std::size_t>(rows) * cols) {}

  cplx& at(int i1, int i2) { return v[static_cast<std::size_t>(i1) * n2 + i2]; }
  const cplx& at(int i1, int i2) const { return v[static_cast<std::size_t>(i1) * n2 + i2]; }

  std::int64_t size() const { return static_cast<std::int64_t>(n1) * n2; }
  bool same_shape(const GridArray& o) const { return n1 == o.n1 && n2 == o.n2; }

  int freq_lo1() const { return -(n1 / 2); }
  int freq_lo2() const { return -(n2 / 2); }
  /// Value at centered frequency (k1, k2); only valid on frequency arrays.
  cplx& at_freq(int k1, int k2) { return at(k1 - freq_lo1(), k2 - freq_lo2()); }
  const cplx& at_freq(int k1, int k2) const { return at(k1 - freq_lo1(), k2 - freq_lo2()); }
};

double frobenius_norm(const GridArray& a);
double frobenius_dist(const GridArray& a, const GridArray& b);
double max_abs(const GridArray& a);

/// A real-valued N1 x N2 array (feature maps, masks, renders).
struct RealArray {
  int n1 = 0;
  int n2 = 0;
  std::vector<double> v;

  RealArray() = default;
  RealArray(int rows, int cols)
      : n1(rows), n2(cols), v(static_cast<std::size_t>(rows) * cols, 0.0) {}

  double& at(int i1, int i2) { return v[static_cast<std::size_t>(i1) * n2 + i2]; }
  double at(int i1, int i2) const { return v[static_cast<std::size_t>(i1) * n2 + i2]; }
  std::int64_t size() const { return static_cast<std::int64_t>(n1) * n2; }
};

double frobenius_norm(const RealArray& a);

}  // namespace rufst
