#include "wfp/nufft.hpp"

#include <cmath>
#include <numbers>

#include "wfp/special.hpp"

namespace wfp {

namespace {
constexpr double kTwoPi = 2 * std::numbers::pi;
}

ModeVector nudft1_direct(std::span<const double> x, std::span<const cplx> c, int K) {
  ModeVector s(K);
  for (size_t j = 0; j < x.size(); ++j) {
    for (int k = -K; k <= K; ++k) s[k] += c[j] * std::polar(1.0, k * x[j]);
  }
  return s;
}

std::vector<cplx> nudft2_direct(std::span<const double> x, const ModeVector& modes) {
  std::vector<cplx> u(x.size());
  for (size_t j = 0; j < x.size(); ++j) {
    cplx acc = 0;
    for (int k = -modes.K; k <= modes.K; ++k) acc += modes[k] * std::polar(1.0, -k * x[j]);
    u[j] = acc;
  }
  return u;
}

NufftPlan::NufftPlan(std::vector<double> x, int K, double eps) : x_(std::move(x)), K_(K) {
  long M = static_cast<long>(x_.size());
  direct_ = M * static_cast<long>(K) <= kNufftDirectThreshold;
  if (direct_) return;

  w_ = static_cast<int>(std::ceil(std::log10(1.0 / eps))) + 2;
  if (w_ < 4) w_ = 4;
  n_ = next_smooth(std::max(2 * (2 * K + 1), 2 * w_));
  double h = kTwoPi / n_;
  // Kaiser-Bessel shape for oversampling 2
  double beta = std::numbers::pi * std::sqrt(0.5625 * w_ * w_ - 0.8);
  double half = 0.5 * w_;
  double norm = std::exp(-beta);

  base_.resize(M);
  kernel_.resize(static_cast<size_t>(M) * w_);
  for (long j = 0; j < M; ++j) {
    double xi = x_[j] / h;
    int l0 = static_cast<int>(std::ceil(xi - half));
    base_[j] = l0;
    for (int i = 0; i < w_; ++i) {
      double d = (xi - (l0 + i)) / half;
      double r = 1 - d * d;
      kernel_[j * w_ + i] = r > 0 ? norm * bessel_i0(beta * std::sqrt(r)) : 0.0;
    }
  }

  deconv_.resize(K + 1);
  for (int k = 0; k <= K; ++k) {
    double a = std::numbers::pi * k * w_ / n_;
    double z2 = a * a - beta * beta;
    double sinc;
    if (z2 < 0) {
      double y = std::sqrt(-z2);
      sinc = std::sinh(y) / y;
    } else if (z2 > 0) {
      double y = std::sqrt(z2);
      sinc = std::sin(y) / y;
    } else {
      sinc = 1.0;
    }
    deconv_[k] = 1.0 / (w_ * norm * sinc);
  }
  fwd_ = std::make_unique<Fft>(n_, -1);
  bwd_ = std::make_unique<Fft>(n_, +1);
}

template <class T>
void NufftPlan::spread(std::span<const T> c) {
  cplx* g = bwd_->data();
  std::fill(g, g + n_, cplx(0.0));
  long M = static_cast<long>(x_.size());
  for (long j = 0; j < M; ++j) {
    const double* kv = &kernel_[j * w_];
    int l = base_[j] % n_;
    if (l < 0) l += n_;
    cplx cj = c[j];
    for (int i = 0; i < w_; ++i) {
      g[l] += kv[i] * cj;
      if (++l == n_) l = 0;
    }
  }
}

void NufftPlan::type1(std::span<const double> c, ModeVector& out) {
  if (out.K != K_) out = ModeVector(K_);
  if (direct_) {
    out.zero();
    for (size_t j = 0; j < x_.size(); ++j)
      for (int k = -K_; k <= K_; ++k) out[k] += c[j] * std::polar(1.0, k * x_[j]);
    return;
  }
  spread(c);
  bwd_->execute();
  const cplx* g = bwd_->data();
  for (int k = -K_; k <= K_; ++k) {
    int idx = k < 0 ? k + n_ : k;
    out[k] = g[idx] * deconv_[std::abs(k)];
  }
}

void NufftPlan::type1(std::span<const cplx> c, ModeVector& out) {
  if (out.K != K_) out = ModeVector(K_);
  if (direct_) {
    out.zero();
    for (size_t j = 0; j < x_.size(); ++j)
      for (int k = -K_; k <= K_; ++k) out[k] += c[j] * std::polar(1.0, k * x_[j]);
    return;
  }
  spread(c);
  bwd_->execute();
  const cplx* g = bwd_->data();
  for (int k = -K_; k <= K_; ++k) {
    int idx = k < 0 ? k + n_ : k;
    out[k] = g[idx] * deconv_[std::abs(k)];
  }
}

void NufftPlan::interp(std::span<cplx> out) {
  const cplx* g = fwd_->data();
  long M = static_cast<long>(x_.size());
  for (long j = 0; j < M; ++j) {
    const double* kv = &kernel_[j * w_];
    int l = base_[j] % n_;
    if (l < 0) l += n_;
    cplx acc = 0;
    for (int i = 0; i < w_; ++i) {
      acc += kv[i] * g[l];
      if (++l == n_) l = 0;
    }
    out[j] = acc;
  }
}

void NufftPlan::type2(const ModeVector& modes, std::span<cplx> out) {
  if (direct_) {
    for (size_t j = 0; j < x_.size(); ++j) {
      cplx acc = 0;
      for (int k = -K_; k <= K_; ++k) acc += modes[k] * std::polar(1.0, -k * x_[j]);
      out[j] = acc;
    }
    return;
  }
  cplx* g = fwd_->data();
  std::fill(g, g + n_, cplx(0.0));
  for (int k = -K_; k <= K_; ++k) {
    int idx = k < 0 ? k + n_ : k;
    g[idx] = modes[k] * deconv_[std::abs(k)];
  }
  fwd_->execute();
  interp(out);
}

void NufftPlan::type2_real(const ModeVector& modes, std::span<double> out) {
  std::vector<cplx> tmp(x_.size());
  type2(modes, tmp);
  for (size_t j = 0; j < x_.size(); ++j) out[j] = tmp[j].real();
}

ModeVector nufft1(std::span<const double> x, std::span<const cplx> c, int K, double eps) {
  NufftPlan plan(std::vector<double>(x.begin(), x.end()), K, eps);
  ModeVector out(K);
  plan.type1(c, out);
  return out;
}

std::vector<cplx> nufft2(std::span<const double> x, const ModeVector& modes, double eps) {
  NufftPlan plan(std::vector<double>(x.begin(), x.end()), modes.K, eps);
  std::vector<cplx> out(x.size());
  plan.type2(modes, out);
  return out;
}

}  // namespace wfp
