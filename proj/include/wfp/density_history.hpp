#pragma once

#include <iosfwd>
#include <vector>

namespace wfp {

/// Ring of recent density vectors, stored spring-major with each ring
/// written twice so that every spring's recent history is contiguous,
/// most recent first. Entries before t = 0 are zero.
class DensityHistory {
 public:
  DensityHistory() = default;
  DensityHistory(int M, int depth);

  int springs() const { return M_; }
  int depth() const { return D_; }

  void push(const double* sigma);
  /// window(l)[r] is the r-th most recent pushed density of spring l.
  const double* window(int l) const { return &buf_[static_cast<size_t>(l) * 2 * D_ + head_]; }
  double value(int l, int r) const { return window(l)[r]; }

  void snapshot(std::ostream& out) const;
  void restore(std::istream& in);
  size_t footprint() const { return buf_.size(); }

 private:
  int M_ = 0, D_ = 0, head_ = 0;
  std::vector<double> buf_;
};

}  // namespace wfp
