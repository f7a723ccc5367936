#pragma once

#include <vector>

namespace wfp {

struct GaussRule {
  int n = 0;
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-node Gauss-Legendre rule on [-1,1].
GaussRule gauss_legendre(int n);

/// n-node Gauss-Legendre rule mapped to [a,b].
GaussRule gauss_legendre(int n, double a, double b);

/// Uniform grid t_i = origin + i*spacing for integer i in [first, last].
struct UniformGrid {
  double origin = 0;
  double spacing = 1;
  int first = 0;
  int last = 0;
};

struct Stencil {
  int first = 0;                 ///< grid index of weights[0]
  std::vector<double> weights;   ///< Lagrange weights on first..first+p-1
};

/// Lagrange weights at xi on the p grid points nearest to xi; ties go to the
/// later point.
Stencil interp_weights(double xi, const UniformGrid& grid, int p);

/// Same, writing p weights to out and returning the first index. x is the
/// evaluation point in grid-index units, [lo,hi] the available indices.
int lagrange_stencil(double x, int lo, int hi, int p, double* out);

}  // namespace wfp
