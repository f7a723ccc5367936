#pragma once

#include <complex>
#include <memory>

namespace wfp {

/// In-place complex FFT of fixed length backed by FFTW.
/// sign = -1: X_k = sum x_j e^{-2 pi i jk/n};  sign = +1: e^{+2 pi i jk/n}.
/// No normalization in either direction.
class Fft {
 public:
  Fft(int n, int sign);
  ~Fft();
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  int size() const { return n_; }
  std::complex<double>* data() { return buf_; }
  void execute();

 private:
  int n_;
  std::complex<double>* buf_;
  void* plan_;
};

/// Smallest 2^a 3^b 5^c that is >= n.
int next_smooth(int n);

}  // namespace wfp
