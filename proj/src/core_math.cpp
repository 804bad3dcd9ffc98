#include "rufst/core_math.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace rufst {

std::int64_t pow2_ceil(std::int64_t m) {
  if (m <= 0) {
    throw std::invalid_argument("pow2_ceil: m must be positive, got " + std::to_string(m));
  }
  return static_cast<std::int64_t>(std::bit_ceil(static_cast<std::uint64_t>(m)));
}

namespace {

// psi(t) = exp(-1/t) for t > 0, 0 otherwise.
double psi(double t) {
  return t > 0.0 ? std::exp(-1.0 / t) : 0.0;
}

}  // namespace

double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = psi(t);
  const double b = psi(1.0 - t);
  return a / (a + b);
}

double eta(double half_width, double x) {
  if (!(half_width > 0.0)) {
    throw std::invalid_argument("eta: half_width must be positive");
  }
  const double t = std::abs(x) / half_width;
  if (t >= 1.0) return 0.0;
  // cos^2((pi/2) s(t)) + cos^2((pi/2) s(1-t)) = 1 makes adjacent squared
  // translates an exact two-term partition of unity.
  return std::cos(0.5 * kPi * smooth_step(t));
}

double wrap_angle(double phi) {
  double w = std::fmod(phi, kTwoPi);
  if (w > kPi) w -= kTwoPi;
  if (w <= -kPi) w += kTwoPi;
  return w;
}

double sector_half_width(int level, int base_order) {
  if (level <= 0 || base_order <= 0) {
    throw std::invalid_argument("sector_half_width: level and base order must be positive");
  }
  return kTwoPi / static_cast<double>(pow2_ceil(level) * base_order);
}

double beta(int level, int base_order, double phi) {
  if (level <= 0 || base_order <= 0) {
    throw std::invalid_argument("beta: level and base order must be positive");
  }
  const std::int64_t order = pow2_ceil(level) * base_order;
  if (order == 1) return 1.0;
  return eta(kTwoPi / static_cast<double>(order), wrap_angle(phi));
}

std::int64_t GroupElement::order() const {
  return pow2_ceil(level) * base_order;
}

double GroupElement::angle() const {
  return kTwoPi * static_cast<double>(index) / static_cast<double>(order());
}

GroupElement GroupElement::inverse() const {
  const std::int64_t n = order();
  return GroupElement{level, base_order, (n - index) % n};
}

GroupElement GroupElement::compose(const GroupElement& other) const {
  if (base_order != other.base_order) {
    throw std::invalid_argument("GroupElement::compose: mismatched base orders");
  }
  const GroupElement& lo = level <= other.level ? *this : other;
  const GroupElement& hi = level <= other.level ? other : *this;
  const std::int64_t ratio = pow2_ceil(hi.level) / pow2_ceil(lo.level);
  const std::int64_t n = hi.order();
  return GroupElement{hi.level, base_order, (lo.index * ratio + hi.index) % n};
}

std::vector<GroupElement> group_elements(int level, int base_order) {
  if (level <= 0 || base_order <= 0) {
    throw std::invalid_argument("group_elements: level and base order must be positive");
  }
  const std::int64_t n = pow2_ceil(level) * base_order;
  std::vector<GroupElement> out;
  out.reserve(static_cast<std::size_t>(n));
  for (std::int64_t j = 0; j < n; ++j) {
    out.push_back(GroupElement{level, base_order, j});
  }
  return out;
}

std::int64_t coset_of(const GroupElement& g) {
  return g.index % pow2_ceil(g.level);
}

PolarPoint to_polar(double x, double y) {
  if (x == 0.0 && y == 0.0) return PolarPoint{0.0, 0.0};
  double phi = std::atan2(y, x);
  if (phi <= -kPi) phi = kPi;  // keep the (-pi, pi] convention for y = -0.0
  return PolarPoint{std::hypot(x, y), phi};
}

std::pair<double, double> from_polar(const PolarPoint& p) {
  return {p.rho * std::cos(p.phi), p.rho * std::sin(p.phi)};
}

}  // namespace rufst
