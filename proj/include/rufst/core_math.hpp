#pragma once

#include <cstdint>
#include <vector>

namespace rufst {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Smallest power of two m* with m <= m* < 2m.
std::int64_t pow2_ceil(std::int64_t m);

/// C-infinity step: 0 for t <= 0, 1 for t >= 1, with s(t) + s(1-t) = 1.
double smooth_step(double t);

/// Radial cutoff eta_A: even, supported in [-A, A], eta_A(0) = 1, and
/// sum_m |eta_A(x - A m)|^2 = 1 for every x.
double eta(double half_width, double x);

/// Wrap an angle to (-pi, pi].
double wrap_angle(double phi);

/// Angular cutoff beta_{m,B} on the circle, realized as eta with half-width
/// B_m = 2*pi/(m* B) applied to the wrapped angle. Constant 1 when m* B = 1.
double beta(int level, int base_order, double phi);

/// Half-width of the angular sector at a given level: 2*pi / (m* B).
double sector_half_width(int level, int base_order);

/// A rotation from the nested family of finite groups: angle 2*pi*j / (m* B).
/// Angles are kept as exact integer indices so composition and coset
/// reduction never touch floating point.
struct GroupElement {
  int level = 1;       // m
  int base_order = 1;  // B
  std::int64_t index = 0;

  std::int64_t order() const;                 // m* B
  double angle() const;                       // 2*pi*index / order
  bool is_identity() const { return index == 0; }

  GroupElement inverse() const;
  /// Group product; the result lives at the coarser of the two levels
  /// (indices of the lower-level element are rescaled by the m* ratio).
  GroupElement compose(const GroupElement& other) const;

  bool operator==(const GroupElement& o) const = default;
};

/// All m* B elements of G_m, sorted by angle, identity first.
std::vector<GroupElement> group_elements(int level, int base_order);

/// Coset of j modulo the base group G embedded in G_m (G's indices are the
/// multiples of m*): representatives are j mod m*.
std::int64_t coset_of(const GroupElement& g);

struct PolarPoint {
  double rho = 0.0;
  double phi = 0.0;
};

PolarPoint to_polar(double x, double y);
std::pair<double, double> from_polar(const PolarPoint& p);

}  // namespace rufst
