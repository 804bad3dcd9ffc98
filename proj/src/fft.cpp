#include "rufst/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace rufst {

namespace {

// FFTW plan creation is not thread safe; execution with new-array execute is.
// Plans are created FFTW_ESTIMATE | FFTW_UNALIGNED so they are deterministic
// and valid for any buffer.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(int rows, int cols, int sign) {
    std::scoped_lock lock(mu_);
    const auto key = std::make_tuple(rows, cols, sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    std::vector<cplx> dummy(static_cast<std::size_t>(rows) * cols);
    fftw_plan p = fftw_plan_dft_2d(
        rows, cols, reinterpret_cast<fftw_complex*>(dummy.data()),
        reinterpret_cast<fftw_complex*>(dummy.data()), sign,
        FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (p == nullptr) throw std::runtime_error("fftw_plan_dft_2d failed");
    plans_.emplace(key, p);
    return p;
  }

 private:
  std::mutex mu_;
  std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

}  // namespace

void fft2_raw(cplx* data, int rows, int cols, int sign) {
  fftw_plan p = plan_cache().get(rows, cols, sign);
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(data),
                   reinterpret_cast<fftw_complex*>(data));
}

GridArray dft(const GridArray& f) {
  if (f.domain != Domain::Space) {
    throw std::invalid_argument("dft: input must be space-domain");
  }
  GridArray work = f;
  fft2_raw(work.v.data(), f.n1, f.n2, FFTW_FORWARD);
  // fftshift: centered index i holds standard bin (i + N - floor(N/2)) mod N.
  GridArray out(f.n1, f.n2, Domain::Frequency);
  const int c1 = f.n1 / 2, c2 = f.n2 / 2;
  for (int i1 = 0; i1 < f.n1; ++i1) {
    const int s1 = (i1 - c1 + f.n1) % f.n1;
    for (int i2 = 0; i2 < f.n2; ++i2) {
      const int s2 = (i2 - c2 + f.n2) % f.n2;
      out.at(i1, i2) = work.at(s1, s2);
    }
  }
  return out;
}

GridArray idft(const GridArray& fhat) {
  if (fhat.domain != Domain::Frequency) {
    throw std::invalid_argument("idft: input must be frequency-domain");
  }
  GridArray work(fhat.n1, fhat.n2, Domain::Space);
  const int c1 = fhat.n1 / 2, c2 = fhat.n2 / 2;
  for (int i1 = 0; i1 < fhat.n1; ++i1) {
    const int s1 = (i1 - c1 + fhat.n1) % fhat.n1;
    for (int i2 = 0; i2 < fhat.n2; ++i2) {
      const int s2 = (i2 - c2 + fhat.n2) % fhat.n2;
      work.at(s1, s2) = fhat.at(i1, i2);
    }
  }
  fft2_raw(work.v.data(), fhat.n1, fhat.n2, FFTW_BACKWARD);
  const double scale = 1.0 / static_cast<double>(fhat.size());
  for (cplx& z : work.v) z *= scale;
  return work;
}

}  // namespace rufst
