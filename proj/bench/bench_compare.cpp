// Compares the serial reference kernels against the OpenMP ones:
// frame build, finite-frame analysis, and the scattering cascade.

#include <chrono>
#include <cstdio>
#include <random>

#include "rufst/finite_frame.hpp"
#include "rufst/scattering.hpp"
#include "rufst/threading.hpp"

using namespace rufst;

namespace {

template <typename F>
double time_best_of(int reps, F&& fn) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

void row(const char* name, double serial_ms, double parallel_ms) {
  std::printf("%-24s %10.2f ms %10.2f ms %8.2fx\n", name, serial_ms, parallel_ms,
              serial_ms / parallel_ms);
}

}  // namespace

int main() {
  std::printf("workers: %d\n", worker_count());
  std::printf("%-24s %13s %13s %9s\n", "kernel", "serial", "openmp", "speedup");

  const FrameSpec spec{2.0, 8, 65, 65, FrameSpec::full_cover_level(2.0, 65, 65)};
  row("build_frame 65x65",
      time_best_of(3, [&] { build_frame(spec, Exec::Serial); }),
      time_best_of(3, [&] { build_frame(spec, Exec::Parallel); }));

  const FrameInstance frame = build_frame(spec);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> d(0.0, 1.0);
  GridArray f(65, 65, Domain::Space);
  for (cplx& z : f.v) z = cplx(d(rng), d(rng));
  row("analyze 65x65",
      time_best_of(3, [&] { analyze(frame, f, Exec::Serial); }),
      time_best_of(3, [&] { analyze(frame, f, Exec::Parallel); }));

  const CoefficientSet coeffs = analyze(frame, f);
  row("synthesize 65x65",
      time_best_of(3, [&] { synthesize(frame, coeffs, Exec::Serial); }),
      time_best_of(3, [&] { synthesize(frame, coeffs, Exec::Parallel); }));

  const FrameSpec sspec{2.0, 4, 33, 33, 4};
  const FrameInstance sframe = build_frame(sspec);
  GridArray img(33, 33, Domain::Space);
  for (cplx& z : img.v) z = cplx(d(rng), 0.0);
  row("scatter plain M=4 K=2",
      time_best_of(3, [&] { scatter_plain(sframe, img, 4, 2, kDefaultPathCap, Exec::Serial); }),
      time_best_of(3, [&] { scatter_plain(sframe, img, 4, 2, kDefaultPathCap, Exec::Parallel); }));
  row("scatter rotational",
      time_best_of(3, [&] {
        scatter_rotational(sframe, img, 4, 2, RotationMode::Exact, kDefaultPathCap, Exec::Serial);
      }),
      time_best_of(3, [&] {
        scatter_rotational(sframe, img, 4, 2, RotationMode::Exact, kDefaultPathCap,
                           Exec::Parallel);
      }));
  return 0;
}
