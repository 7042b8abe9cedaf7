#include "cusp/fft.hpp"

#include <fftw3.h>

#include <mutex>

namespace cusp::fft {

namespace {
// FFTW planning is not thread safe; execution of distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

void dft(int n0, int n1, std::complex<double>* data, int sign) {
  auto* buf = reinterpret_cast<fftw_complex*>(data);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    if (n1 == 1) {
      plan = fftw_plan_dft_1d(n0, buf, buf, sign, FFTW_ESTIMATE);
    } else {
      plan = fftw_plan_dft_2d(n0, n1, buf, buf, sign, FFTW_ESTIMATE);
    }
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
}

}  // namespace cusp::fft
