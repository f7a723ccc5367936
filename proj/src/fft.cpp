#include "wfp/fft.hpp"

#include <fftw3.h>

#include <stdexcept>

namespace wfp {

Fft::Fft(int n, int sign) : n_(n) {
  if (n < 1) throw std::invalid_argument("Fft: length must be positive");
  buf_ = reinterpret_cast<std::complex<double>*>(fftw_malloc(sizeof(fftw_complex) * n));
  auto* b = reinterpret_cast<fftw_complex*>(buf_);
  plan_ = fftw_plan_dft_1d(n, b, b, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
  for (int i = 0; i < n; ++i) buf_[i] = 0.0;
}

Fft::~Fft() {
  fftw_destroy_plan(static_cast<fftw_plan>(plan_));
  fftw_free(buf_);
}

void Fft::execute() { fftw_execute(static_cast<fftw_plan>(plan_)); }

int next_smooth(int n) {
  if (n <= 1) return 1;
  for (int m = n;; ++m) {
    int r = m;
    for (int f : {2, 3, 5})
      while (r % f == 0) r /= f;
    if (r == 1) return m;
  }
}

}  // namespace wfp
