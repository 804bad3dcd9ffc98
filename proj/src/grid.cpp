#include "rufst/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace rufst {

double frobenius_norm(const GridArray& a) {
  double s = 0.0;
  for (const cplx& z : a.v) s += std::norm(z);
  return std::sqrt(s);
}

double frobenius_dist(const GridArray& a, const GridArray& b) {
  if (!a.same_shape(b)) {
    throw std::invalid_argument("frobenius_dist: shape mismatch");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.v.size(); ++i) s += std::norm(a.v[i] - b.v[i]);
  return std::sqrt(s);
}

double max_abs(const GridArray& a) {
  double m = 0.0;
  for (const cplx& z : a.v) m = std::max(m, std::abs(z));
  return m;
}

double frobenius_norm(const RealArray& a) {
  double s = 0.0;
  for (double x : a.v) s += x * x;
  return std::sqrt(s);
}

}  // namespace rufst
