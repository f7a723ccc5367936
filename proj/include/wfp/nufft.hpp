#pragma once

#include <complex>
#include <memory>
#include <span>
#include <vector>

#include "wfp/fft.hpp"

namespace wfp {

using cplx = std::complex<double>;

/// Fourier coefficients c_k for k = -K..K.
struct ModeVector {
  int K = 0;
  std::vector<cplx> c;

  ModeVector() = default;
  explicit ModeVector(int K_) : K(K_), c(2 * static_cast<size_t>(K_) + 1) {}

  cplx& operator[](int k) { return c[static_cast<size_t>(k + K)]; }
  const cplx& operator[](int k) const { return c[static_cast<size_t>(k + K)]; }
  int size() const { return 2 * K + 1; }
  void zero() { std::fill(c.begin(), c.end(), cplx(0.0)); }
};

/// S_k = sum_j c_j e^{i k x_j}.
ModeVector nudft1_direct(std::span<const double> x, std::span<const cplx> c, int K);
/// u(x_j) = sum_k c_k e^{-i k x_j}.
std::vector<cplx> nudft2_direct(std::span<const double> x, const ModeVector& modes);

ModeVector nufft1(std::span<const double> x, std::span<const cplx> c, int K, double eps);
std::vector<cplx> nufft2(std::span<const double> x, const ModeVector& modes, double eps);

/// Below this value of M*K the transforms use direct summation.
inline constexpr long kNufftDirectThreshold = 4096;

/// Reusable transform for a fixed point set and mode range. Kernel values
/// are precomputed once, so repeated transforms cost O(M w + n log n).
class NufftPlan {
 public:
  NufftPlan(std::vector<double> x, int K, double eps);

  int K() const { return K_; }
  int points() const { return static_cast<int>(x_.size()); }
  bool direct() const { return direct_; }
  int grid_size() const { return n_; }
  int width() const { return w_; }

  void type1(std::span<const double> c, ModeVector& out);
  void type1(std::span<const cplx> c, ModeVector& out);
  void type2(const ModeVector& modes, std::span<cplx> out);
  /// Real part of type2; the usual case for conjugate-symmetric modes.
  void type2_real(const ModeVector& modes, std::span<double> out);

 private:
  template <class T>
  void spread(std::span<const T> c);
  void interp(std::span<cplx> out);

  std::vector<double> x_;
  int K_;
  bool direct_;
  int n_ = 0, w_ = 0;
  std::vector<int> base_;       // first grid index per point
  std::vector<double> kernel_;  // w_ values per point
  std::vector<double> deconv_;  // k = 0..K
  std::unique_ptr<Fft> fwd_, bwd_;
};

}  // namespace wfp
