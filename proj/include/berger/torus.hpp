#pragma once

// Flat CMC tori T_alpha(H) = S^1(r1) x S^1(r2): induced metric, lattice and dual
// lattice, Laplacian spectrum and the Jacobi stability test L = Delta + 4(H^2 + 1).

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <utility>
#include <vector>

#include "berger/core.hpp"
#include "berger/errors.hpp"
#include "berger/stability.hpp"

namespace berger {

struct TorusData {
  double alpha{1.0};
  double H{0.0};
  double r1{0.0};
  double r2{0.0};
  std::array<std::array<double, 2>, 2> metric{};

  double det() const { return metric[0][0] * metric[1][1] - metric[0][1] * metric[1][0]; }
};

inline TorusData torus_data(const BergerParam& p, double H) {
  if (!(H >= 0.0) || !std::isfinite(H)) throw ContractError("torus_data: H must be finite and >= 0");
  const double root = std::sqrt(1.0 + H * H);
  const double r1sq = 0.5 + H / (2.0 * root);
  const double r2sq = 1.0 / (2.0 * root * (root + H));
  const double b = 1.0 - p.alpha();
  TorusData t;
  t.alpha = p.alpha();
  t.H = H;
  t.r1 = std::sqrt(r1sq);
  t.r2 = std::sqrt(r2sq);
  t.metric[0][0] = r1sq * (1.0 - b * r1sq);
  t.metric[1][1] = r2sq * (1.0 - b * r2sq);
  t.metric[0][1] = t.metric[1][0] = -r1sq * r2sq * b;
  return t;
}

struct LatticeBasis {
  std::array<double, 2> v1{};
  std::array<double, 2> v2{};

  double det() const { return v1[0] * v2[1] - v1[1] * v2[0]; }
};

/// Generators (v1, v2) of the lattice (scaled by 2 pi) and of its dual.
inline std::pair<LatticeBasis, LatticeBasis> lattice_and_dual(const TorusData& t) {
  const double b = 1.0 - t.alpha;
  const double sa = std::sqrt(t.alpha);
  const double w = std::sqrt(1.0 - b * t.r1 * t.r1);
  LatticeBasis lat;
  lat.v1 = {t.r1 * w, 0.0};
  lat.v2 = {-t.r2 / w * t.r1 * t.r2 * b, t.r2 / w * sa};
  LatticeBasis dual;
  dual.v1 = {1.0 / (w * t.r1), t.r2 * b / (w * sa)};
  dual.v2 = {0.0, w / (t.r2 * sa)};
  const LatticeBasis* bases[2] = {&lat, &dual};
  for (const LatticeBasis* bs : bases) {
    if (!(std::abs(bs->det()) > 0.0)) throw NumericalError("lattice", "degenerate lattice basis");
  }
  const double pair[2][2] = {{lat.v1[0] * dual.v1[0] + lat.v1[1] * dual.v1[1], lat.v1[0] * dual.v2[0] + lat.v1[1] * dual.v2[1]},
                             {lat.v2[0] * dual.v1[0] + lat.v2[1] * dual.v1[1], lat.v2[0] * dual.v2[0] + lat.v2[1] * dual.v2[1]}};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      if (std::abs(pair[i][j] - (i == j ? 1.0 : 0.0)) > 1e-12) {
        throw NumericalError("lattice_duality", "basis and dual basis do not pair to the identity");
      }
    }
  return {lat, dual};
}

/// Laplacian eigenvalues |m v1* + n v2*|^2, complete up to `certified_bound`.
struct LatticeSpectrum {
  std::vector<double> eigenvalues;  // ascending, repeated by multiplicity
  double lambda1{0.0};
  double certified_bound{0.0};
  int cutoff{0};

  /// Distinct values with multiplicities, merged at relative tolerance `tol`.
  std::vector<std::pair<double, int>> distinct(double tol = 1e-12) const {
    std::vector<std::pair<double, int>> out;
    for (double v : eigenvalues) {
      if (!out.empty() && std::abs(v - out.back().first) <= tol * std::max(1.0, v)) {
        ++out.back().second;
      } else {
        out.emplace_back(v, 1);
      }
    }
    return out;
  }
};

namespace detail {

/// min of Q(m, n) = |m a + n b|^2 over the boundary of the square max(|m|, |n|) = 1.
inline double square_boundary_minimum(const std::array<double, 2>& a, const std::array<double, 2>& b) {
  const double aa = a[0] * a[0] + a[1] * a[1];
  const double ab = a[0] * b[0] + a[1] * b[1];
  const double bb = b[0] * b[0] + b[1] * b[1];
  // Edge m = 1: aa + 2 ab n + bb n^2 on n in [-1, 1]; edge n = 1 likewise. The
  // opposite edges give the same values by symmetry Q(-u) = Q(u).
  const double n1 = std::clamp(-ab / bb, -1.0, 1.0);
  const double m1 = std::clamp(-ab / aa, -1.0, 1.0);
  return std::min(aa + 2.0 * ab * n1 + bb * n1 * n1, bb + 2.0 * ab * m1 + aa * m1 * m1);
}

}  // namespace detail

inline LatticeSpectrum torus_spectrum(const TorusData& t, int N) {
  if (N < 3) throw ContractError("torus_spectrum: cutoff N must be >= 3");
  const LatticeBasis dual = lattice_and_dual(t).second;
  LatticeSpectrum s;
  s.cutoff = N;
  s.lambda1 = std::numeric_limits<double>::infinity();
  std::vector<double> all;
  all.reserve(static_cast<std::size_t>(2 * N + 1) * (2 * N + 1));
  for (int m = -N; m <= N; ++m) {
    for (int n = -N; n <= N; ++n) {
      const double x = m * dual.v1[0] + n * dual.v2[0];
      const double y = m * dual.v1[1] + n * dual.v2[1];
      const double v = x * x + y * y;
      all.push_back(v);
      if (m != 0 || n != 0) s.lambda1 = std::min(s.lambda1, v);
    }
  }
  // Every lattice point outside the square has sup-norm >= N + 1.
  const double shell = (N + 1.0) * (N + 1.0) * detail::square_boundary_minimum(dual.v1, dual.v2);
  if (!(shell > s.lambda1)) {
    std::ostringstream os;
    os << "cutoff N = " << N << " cannot certify lambda1 = " << s.lambda1 << " (shell bound " << shell << ")";
    throw NumericalError("spectrum_cutoff", os.str());
  }
  s.certified_bound = shell;
  std::sort(all.begin(), all.end());
  for (double v : all) {
    if (v >= shell) break;
    s.eigenvalues.push_back(v);
  }
  return s;
}

/// Smallest cutoff >= 3 (by doubling) whose enumeration certifies lambda1.
inline LatticeSpectrum torus_spectrum_auto(const TorusData& t) {
  for (int N = 3; N <= 1 << 12; N *= 2) {
    try {
      return torus_spectrum(t, N);
    } catch (const NumericalError&) {
    }
  }
  throw NumericalError("spectrum_cutoff", "no cutoff up to 4096 certifies lambda1");
}

/// H*(alpha) = (1 - 3 alpha) / (2 sqrt(alpha (1 - 2 alpha))) for alpha <= 1/3.
inline double torus_stability_threshold(const BergerParam& p) {
  const double a = p.alpha();
  if (a > 1.0 / 3.0) throw ContractError("torus_stability_threshold: defined only for alpha <= 1/3");
  return (1.0 - 3.0 * a) / (2.0 * std::sqrt(a * (1.0 - 2.0 * a)));
}

/// Two-branch first eigenvalue; for alpha > 1/3 the first branch applies for every H.
inline double lambda1_closed_form(const BergerParam& p, double H) {
  if (!(H >= 0.0) || !std::isfinite(H)) throw ContractError("lambda1_closed_form: H must be finite and >= 0");
  const double a = p.alpha();
  const double root = std::sqrt(H * H + 1.0);
  const double first = 2.0 * root / (H + root) + (1.0 - a) / a;
  if (a > 1.0 / 3.0 || H > torus_stability_threshold(p)) return first;
  return 4.0 * (H * H + 1.0);
}

/// Relative size below which the lambda1 gap counts as zero (rounding of the enumeration).
inline constexpr double kGapZeroTolerance = 1e-12;

inline StabilityVerdict classify_torus(const BergerParam& p, double H) {
  const TorusData t = torus_data(p, H);
  const LatticeSpectrum s = torus_spectrum_auto(t);
  const double jac = 4.0 * (H * H + 1.0);
  double margin = s.lambda1 - jac;
  if (std::abs(margin) <= kGapZeroTolerance * jac) margin = 0.0;
  return {margin >= 0.0, margin, Criterion::Lambda1Gap, p.alpha(), H};
}

struct AreaVolume {
  double area;
  double volume;
};

/// Area 2 pi^2 sqrt(alpha / (1 + H^2)) and the volume 2 pi^2 sqrt(alpha) r2^2 of the
/// smaller side {|z| >= r1}.
inline AreaVolume torus_area_volume(const BergerParam& p, double H) {
  const TorusData t = torus_data(p, H);
  return {2.0 * kPi * kPi * std::sqrt(p.alpha() / (1.0 + H * H)), 2.0 * kPi * kPi * p.sqrt_alpha() * t.r2 * t.r2};
}

}  // namespace berger
