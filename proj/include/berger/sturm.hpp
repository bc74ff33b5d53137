#pragma once

// Symmetric tridiagonal generalized eigenproblems K u = lambda M u (M positive
// definite) solved by Sturm counts: the number of eigenvalues below sigma equals
// the number of negative pivots of the LDL^T factorization of K - sigma M.
// Bisection on the count needs no factorization of M, which matters when the
// mass matrix carries an exponentially decaying weight.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "berger/errors.hpp"

namespace berger {

struct TridiagonalPencil {
  std::vector<double> k_diag, k_off;
  std::vector<double> m_diag, m_off;

  std::size_t size() const { return k_diag.size(); }
};

/// Number of eigenvalues strictly below sigma.
inline int count_below(const TridiagonalPencil& p, double sigma) {
  const std::size_t n = p.size();
  int count = 0;
  double d = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    double piv = p.k_diag[i] - sigma * p.m_diag[i];
    if (i > 0) {
      const double o = p.k_off[i - 1] - sigma * p.m_off[i - 1];
      piv -= o * o / d;
    }
    if (piv == 0.0) piv = -std::numeric_limits<double>::min();
    if (piv < 0.0) ++count;
    d = piv;
  }
  return count;
}

/// The `count` smallest eigenvalues, each bisected to absolute width `tol`
/// inside [lo, hi]. Eigenvalues above `hi` are not reported.
inline std::vector<double> smallest_eigenvalues(const TridiagonalPencil& p, int count, double lo, double hi,
                                                double tol = 1e-12) {
  if (count_below(p, lo) != 0) throw NumericalError("sturm_bracket", "lower bound is not below the spectrum");
  std::vector<double> out;
  for (int j = 0; j < count; ++j) {
    if (count_below(p, hi) <= j) break;
    double a = lo, b = hi;
    while (b - a > tol * std::max(1.0, std::abs(a) + std::abs(b))) {
      const double m = 0.5 * (a + b);
      if (m <= a || m >= b) break;
      if (count_below(p, m) > j) b = m; else a = m;
    }
    out.push_back(0.5 * (a + b));
    lo = a;
  }
  return out;
}

}  // namespace berger
