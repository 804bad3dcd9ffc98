#include "rufst/frame.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace rufst {

void FrameSpec::validate() const {
  if (!(A > 0.0)) throw std::invalid_argument("FrameSpec: A must be positive");
  if (B < 1) throw std::invalid_argument("FrameSpec: B must be >= 1");
  if (M < 1) throw std::invalid_argument("FrameSpec: M must be >= 1");
  if (n1 < 3 || n2 < 3) {
    throw std::invalid_argument("FrameSpec: grid sides must be >= 3");
  }
}

double FrameSpec::max_lattice_radius() const {
  const double a = static_cast<double>(n1 / 2);
  const double b = static_cast<double>(n2 / 2);
  return std::sqrt(a * a + b * b);
}

int FrameSpec::full_cover_level(double A, int n1, int n2) {
  FrameSpec tmp{A, 1, n1, n2, 1};
  const double r = tmp.max_lattice_radius();
  int level = static_cast<int>(std::ceil(r / A));
  if (level < 1) level = 1;
  while (A * level < r) ++level;
  return level;
}

std::string AtomIndex::to_string() const {
  if (low_pass) return "f0";
  return "m" + std::to_string(m) + ".j" + std::to_string(j);
}

std::size_t FrameInstance::atom_pos(const AtomIndex& idx) const {
  if (idx.low_pass) return 0;
  if (idx.m < 1 || idx.m > spec.M) {
    throw std::out_of_range("FrameInstance: atom level outside built range");
  }
  std::size_t pos = 1 + static_cast<std::size_t>(band_atom_count(spec, idx.m - 1));
  pos += static_cast<std::size_t>(idx.j);
  return pos;
}

std::int64_t band_atom_count(const FrameSpec& spec, int up_to_level) {
  std::int64_t n = 0;
  for (int m = 1; m <= up_to_level; ++m) n += pow2_ceil(m) * spec.B;
  return n;
}

std::vector<AtomIndex> index_set(const FrameSpec& spec) {
  spec.validate();
  std::vector<AtomIndex> out;
  out.reserve(static_cast<std::size_t>(1 + band_atom_count(spec, spec.M)));
  out.push_back(AtomIndex::lowpass());
  for (int m = 1; m <= spec.M; ++m) {
    const std::int64_t order = pow2_ceil(m) * spec.B;
    for (std::int64_t j = 0; j < order; ++j) out.push_back(AtomIndex::band(m, j));
  }
  return out;
}

std::vector<AtomIndex> coset_representatives(const FrameSpec& spec) {
  spec.validate();
  std::vector<AtomIndex> out;
  for (int m = 1; m <= spec.M; ++m) {
    const std::int64_t reps = pow2_ceil(m);
    for (std::int64_t j = 0; j < reps; ++j) out.push_back(AtomIndex::band(m, j));
  }
  return out;
}

namespace {

// Quadrant decomposition of a nonzero lattice point: k = R^t q with
// R the counter-clockwise quarter turn and q in {x > 0, y >= 0}. Returning
// the base angle and the exact turn count keeps quarter-turn symmetry of the
// sampled masks bit-exact: rotating the atom and rotating the lattice point
// produce the same (phi_base, integer offset) pair.
struct QuadrantAngle {
  int turns = 0;     // t in {0, 1, 2, 3}
  double base = 0.0; // atan2 in [0, pi/2)
};

QuadrantAngle quadrant_angle(std::int64_t k1, std::int64_t k2) {
  int t = 0;
  while (!(k1 > 0 && k2 >= 0) && t < 4) {
    // apply R^{-1}: (x, y) -> (y, -x)
    const std::int64_t x = k2, y = -k1;
    k1 = x;
    k2 = y;
    ++t;
  }
  return QuadrantAngle{t, std::atan2(static_cast<double>(k2), static_cast<double>(k1))};
}

// Angular factor beta_{m,B}(phi(k) - angle_j) with the rotation handled as an
// exact integer offset in units of 2 pi / (4 * order).
double angular_factor(std::int64_t order, std::int64_t j, const QuadrantAngle& qa) {
  if (order == 1) return 1.0;
  const std::int64_t D = 4 * order;
  std::int64_t n = qa.turns * order - 4 * j;
  n = ((n % D) + D) % D;
  double delta = qa.base + kTwoPi * static_cast<double>(n) / static_cast<double>(D);
  if (delta > kPi) delta -= kTwoPi;
  return eta(kTwoPi / static_cast<double>(order), delta);
}

}  // namespace

SpectralAtom build_atom(const FrameSpec& spec, const AtomIndex& idx) {
  spec.validate();
  SpectralAtom atom;
  atom.index = idx;
  atom.n1 = spec.n1;
  atom.n2 = spec.n2;
  atom.mask = RealArray(spec.n1, spec.n2);

  const int lo1 = spec.freq_lo1(), lo2 = spec.freq_lo2();
  const std::int64_t order = idx.low_pass ? 1 : pow2_ceil(idx.m) * spec.B;

  for (int i1 = 0; i1 < spec.n1; ++i1) {
    const std::int64_t k1 = i1 + lo1;
    for (int i2 = 0; i2 < spec.n2; ++i2) {
      const std::int64_t k2 = i2 + lo2;
      const double rho = std::sqrt(static_cast<double>(k1 * k1 + k2 * k2));
      double value;
      if (idx.low_pass) {
        value = eta(spec.A, rho);
      } else {
        const double radial = eta(spec.A, rho - idx.m * spec.A);
        if (radial == 0.0) {
          value = 0.0;  // includes the origin, where the angle is undefined
        } else {
          value = radial * angular_factor(order, idx.j, quadrant_angle(k1, k2));
        }
      }
      atom.mask.at(i1, i2) = value;
    }
  }

  // Bounding box of the nonzero samples in the centered arrangement.
  int i1_min = spec.n1, i1_max = -1, i2_min = spec.n2, i2_max = -1;
  for (int i1 = 0; i1 < spec.n1; ++i1) {
    for (int i2 = 0; i2 < spec.n2; ++i2) {
      if (atom.mask.at(i1, i2) != 0.0) {
        i1_min = std::min(i1_min, i1);
        i1_max = std::max(i1_max, i1);
        i2_min = std::min(i2_min, i2);
        i2_max = std::max(i2_max, i2);
      }
    }
  }
  if (i1_max < 0) {
    atom.empty = true;
    atom.k1_min = 0;
    atom.k2_min = 0;
    atom.s1 = 1;
    atom.s2 = 1;
  } else {
    atom.empty = false;
    atom.k1_min = i1_min + lo1;
    atom.k2_min = i2_min + lo2;
    atom.s1 = i1_max - i1_min + 1;
    atom.s2 = i2_max - i2_min + 1;
  }
  return atom;
}

FrameInstance build_frame(const FrameSpec& spec, Exec exec) {
  spec.validate();
  const std::vector<AtomIndex> indices = index_set(spec);
  FrameInstance frame;
  frame.spec = spec;
  frame.atoms.resize(indices.size());
  const std::int64_t n = static_cast<std::int64_t>(indices.size());
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic) num_threads(worker_count())
    for (std::int64_t i = 0; i < n; ++i) {
      frame.atoms[i] = build_atom(spec, indices[i]);
    }
  } else {
    for (std::int64_t i = 0; i < n; ++i) {
      frame.atoms[i] = build_atom(spec, indices[i]);
    }
  }
  return frame;
}

PartitionReport verify_partition(const FrameInstance& frame) {
  const FrameSpec& spec = frame.spec;
  RealArray sum(spec.n1, spec.n2);
  for (const SpectralAtom& atom : frame.atoms) {
    if (atom.empty) continue;
    const int lo1 = spec.freq_lo1(), lo2 = spec.freq_lo2();
    for (int k1 = atom.k1_min; k1 < atom.k1_min + atom.s1; ++k1) {
      for (int k2 = atom.k2_min; k2 < atom.k2_min + atom.s2; ++k2) {
        const double v = atom.mask.at(k1 - lo1, k2 - lo2);
        sum.at(k1 - lo1, k2 - lo2) += v * v;
      }
    }
  }
  PartitionReport rep;
  const double r_in = spec.A * spec.M;
  const double r_out = spec.A * (spec.M + 1);
  for (int i1 = 0; i1 < spec.n1; ++i1) {
    const double k1 = static_cast<double>(i1 + spec.freq_lo1());
    for (int i2 = 0; i2 < spec.n2; ++i2) {
      const double k2 = static_cast<double>(i2 + spec.freq_lo2());
      const double r = std::sqrt(k1 * k1 + k2 * k2);
      const double s = sum.at(i1, i2);
      if (r <= r_in) rep.max_dev_inside = std::max(rep.max_dev_inside, std::abs(s - 1.0));
      if (r >= r_out) rep.max_leak_outside = std::max(rep.max_leak_outside, s);
    }
  }
  return rep;
}

double wedge_diameter(const FrameSpec& spec, int m) {
  spec.validate();
  if (m < 1) throw std::invalid_argument("wedge_diameter: m must be >= 1");
  const std::int64_t order = pow2_ceil(m) * spec.B;
  if (order < 4) {
    throw std::invalid_argument("wedge_diameter: requires m* B >= 4");
  }
  const double bm = kTwoPi / static_cast<double>(order);
  const double rho_lo = std::max(0.0, spec.A * (m - 1));
  const double rho_hi = spec.A * (m + 1);

  constexpr int kSamples = 512;
  std::vector<std::pair<double, double>> pts;
  pts.reserve(4 * (kSamples + 1));
  for (int i = 0; i <= kSamples; ++i) {
    const double u = static_cast<double>(i) / kSamples;
    const double phi = -bm + 2.0 * bm * u;
    pts.emplace_back(rho_lo * std::cos(phi), rho_lo * std::sin(phi));
    pts.emplace_back(rho_hi * std::cos(phi), rho_hi * std::sin(phi));
    const double rho = rho_lo + (rho_hi - rho_lo) * u;
    pts.emplace_back(rho * std::cos(bm), rho * std::sin(bm));
    pts.emplace_back(rho * std::cos(bm), -rho * std::sin(bm));
  }
  double best = 0.0;
  for (std::size_t a = 0; a < pts.size(); ++a) {
    for (std::size_t b = a + 1; b < pts.size(); ++b) {
      const double dx = pts[a].first - pts[b].first;
      const double dy = pts[a].second - pts[b].second;
      best = std::max(best, dx * dx + dy * dy);
    }
  }
  return std::sqrt(best);
}

double wedge_diameter_bound(const FrameSpec& spec) {
  const double b = static_cast<double>(spec.B);
  const double radial = 2.0 * spec.A + 2.0 * kPi * kPi * spec.A / (b * b);
  const double tangential = 8.0 * kPi * spec.A / b;
  return std::sqrt(radial * radial + tangential * tangential);
}

PolarPoint direction_diagnostic(const SpectralAtom& atom) {
  if (atom.empty || atom.index.low_pass) {
    throw std::invalid_argument("direction_diagnostic: needs a non-empty band atom");
  }
  double w = 0.0, cx = 0.0, cy = 0.0;
  const int lo1 = -(atom.n1 / 2), lo2 = -(atom.n2 / 2);
  for (int k1 = atom.k1_min; k1 < atom.k1_min + atom.s1; ++k1) {
    for (int k2 = atom.k2_min; k2 < atom.k2_min + atom.s2; ++k2) {
      const double v = atom.mask.at(k1 - lo1, k2 - lo2);
      w += v;
      cx += v * k1;
      cy += v * k2;
    }
  }
  return to_polar(cx / w, cy / w);
}

}  // namespace rufst
