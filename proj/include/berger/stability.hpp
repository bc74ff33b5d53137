#pragma once

// Stability of the CMC spheres S_alpha(H): the Jacobi operator in the meridian chart,
// a solution of L f = 1, its integral (the Koiso test value) and the spectrum.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "berger/core.hpp"
#include "berger/errors.hpp"
#include "berger/format.hpp"
#include "berger/quadrature.hpp"
#include "berger/roots.hpp"
#include "berger/sphere.hpp"
#include "berger/sturm.hpp"

namespace berger {

enum class Criterion { KoisoIntegral, Lambda1Gap };

inline const char* to_string(Criterion c) {
  return c == Criterion::KoisoIntegral ? "koiso_integral" : "lambda1_gap";
}

struct StabilityVerdict {
  bool stable{false};
  double margin{0.0};
  Criterion criterion{Criterion::KoisoIntegral};
  double alpha{1.0};
  double H{0.0};
};

/// q * conf in the meridian chart; the same function for every (alpha, H).
inline double jacobi_potential_flat(double x) {
  const double c = std::cosh(x);
  return 2.0 / (c * c);
}

/// (|sigma|^2 + Ric(N, N)) * conf assembled from the fundamental data.
inline double jacobi_potential(const SphereFundamentalData& d, double x) {
  const double cf = d.conf(x);
  const double c = d.C(x);
  const double sigma2 = 2.0 * d.H * d.H + 8.0 * std::norm(d.p(x)) / (cf * cf);
  const double ric = (4.0 - 2.0 * d.alpha) * (1.0 - c * c) + 2.0 * d.alpha * c * c;
  return (sigma2 + ric) * cf;
}

/// A solution of L f = 1, i.e. f'' + (2/cosh^2 x) f = conf in the meridian chart.
inline double koiso_solution(const BergerParam& p, double H, double x) {
  const double a = p.alpha();
  const double kappa = H * H + 1.0;
  if (a == 1.0) return 1.0 / (2.0 * kappa);
  const double h = std::sqrt(std::abs(1.0 - a) / kappa) * std::tanh(x);
  const double t = a < 1.0 ? h * std::atanh(h) : -h * std::atan(h);
  return (1.0 - t) / (2.0 * kappa);
}

/// Integral of the Koiso solution over the sphere:
/// pi / (2 kappa^2) * (3 + (H^2 + 3 alpha - 2) / kappa * branch_ratio), kappa = H^2 + 1.
/// The arctanh and arctan branches meet at alpha = 1 with value 2 pi / kappa^2.
inline double koiso_integral(const BergerParam& p, double H) {
  const double kappa = H * H + 1.0;
  const double g = branch_ratio(p.alpha(), kappa);
  return kPi / (2.0 * kappa * kappa) * (3.0 + (H * H + 3.0 * p.alpha() - 2.0) / kappa * g);
}

/// 2 pi * integral of f * conf by adaptive quadrature.
inline double koiso_integral_quadrature(const BergerParam& p, double H) {
  const SphereFundamentalData d = fundamental_data(p, H);
  const quad::Options opt{1e-12, 1e-300, 4000};
  return 2.0 * kPi *
         quad::integrate_line([&](double x) { return koiso_solution(p, H, x) * d.conf(x); }, kMeridianCutoff, opt,
                              "koiso_integral");
}

/// Closed form cross-checked against quadrature at 1e-6, relative to
/// max(|value|, pi / (2 kappa^2)).
inline double koiso_integral_checked(const BergerParam& p, double H) {
  const double closed = koiso_integral(p, H);
  const double numeric = koiso_integral_quadrature(p, H);
  const double kappa = H * H + 1.0;
  const double scale = std::max(std::abs(closed), kPi / (2.0 * kappa * kappa));
  if (std::abs(closed - numeric) > 1e-6 * scale) {
    std::ostringstream os;
    os << "closed form " << closed << " vs quadrature " << numeric << " at alpha = " << p.alpha() << ", H = " << H;
    throw NumericalError("koiso_integral", os.str());
  }
  return closed;
}

inline StabilityVerdict classify_sphere(const BergerParam& p, double H) {
  if (!(H >= 0.0) || !std::isfinite(H)) throw ContractError("classify_sphere: H must be finite and >= 0");
  const double v = koiso_integral(p, H);
  return {v >= 0.0, v, Criterion::KoisoIntegral, p.alpha(), H};
}

/// Root of arctanh(sqrt(1-a)) = 3 sqrt(1-a) / (2 - 3a) on (0, 1/3): below it the
/// minimal sphere is unstable.
inline double alpha0() {
  auto g = [](double a) {
    const double r = std::sqrt(1.0 - a);
    return 3.0 * r + (3.0 * a - 2.0) * std::atanh(r);
  };
  return roots::brent(g, 1e-6, 1.0 / 3.0, 1e-15).x;
}

/// For alpha < alpha0, the mean curvature H(alpha) above which S_alpha(H) is stable.
inline double stability_threshold_H(const BergerParam& p, double a0) {
  const double a = p.alpha();
  if (!(a < a0)) {
    std::ostringstream os;
    os << "stability boundary exists only for alpha < alpha0 = " << a0 << " (got " << a << ")";
    throw ContractError(os.str());
  }
  auto g = [&](double H) {
    const double kappa = H * H + 1.0;
    const double r = std::sqrt(1.0 - a);
    return 3.0 * std::sqrt(kappa) * r + (H * H + 3.0 * a - 2.0) * std::atanh(r / std::sqrt(kappa));
  };
  const auto br = roots::expand_upper(g, 0.0, 1.0);
  return roots::brent(g, br.first, br.second, 1e-12).x;
}

struct BoundaryPoint {
  double alpha;
  double H;
};

inline std::vector<BoundaryPoint> sphere_stability_boundary(const std::vector<double>& alphas) {
  const double a0 = alpha0();
  std::vector<BoundaryPoint> out;
  out.reserve(alphas.size());
  for (double a : alphas) out.push_back({a, stability_threshold_H(BergerParam(a), a0)});
  return out;
}

// ---------------------------------------------------------------------------
// Jacobi spectrum: -f'' + k^2 f - (2/cosh^2 x) f = lambda conf f for each Fourier mode k.

/// Linear finite elements on a uniform grid of [-X, X] with 3-point Gauss quadrature.
/// Mode 0 keeps natural boundary conditions (solutions tend to constants at the poles);
/// modes k != 0 vanish at the poles and are truncated with Dirichlet conditions.
inline TridiagonalPencil assemble_jacobi_pencil(const SphereFundamentalData& d, int k, double X, int n) {
  if (n < 200) throw ContractError("assemble_jacobi_pencil: need n >= 200 elements");
  if (!(X > 0.0) || !std::isfinite(X)) throw ContractError("assemble_jacobi_pencil: X must be positive");
  const double h = 2.0 * X / n;
  const double gp[3] = {-std::sqrt(0.6), 0.0, std::sqrt(0.6)};
  const double gw[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
  std::vector<double> kd(n + 1, 0.0), ko(n, 0.0), md(n + 1, 0.0), mo(n, 0.0);
  const double kk = static_cast<double>(k) * k;
  for (int e = 0; e < n; ++e) {
    const double xm = -X + (e + 0.5) * h;
    kd[e] += 1.0 / h;
    kd[e + 1] += 1.0 / h;
    ko[e] -= 1.0 / h;
    for (int g = 0; g < 3; ++g) {
      const double x = xm + 0.5 * h * gp[g];
      const double w = 0.5 * h * gw[g];
      const double n0 = 0.5 * (1.0 - gp[g]), n1 = 0.5 * (1.0 + gp[g]);
      const double pot = kk - jacobi_potential_flat(x);
      const double cf = d.conf(x);
      kd[e] += w * pot * n0 * n0;
      kd[e + 1] += w * pot * n1 * n1;
      ko[e] += w * pot * n0 * n1;
      md[e] += w * cf * n0 * n0;
      md[e + 1] += w * cf * n1 * n1;
      mo[e] += w * cf * n0 * n1;
    }
  }
  TridiagonalPencil p;
  if (k == 0) {
    p.k_diag = std::move(kd);
    p.k_off = std::move(ko);
    p.m_diag = std::move(md);
    p.m_off = std::move(mo);
  } else {
    p.k_diag.assign(kd.begin() + 1, kd.end() - 1);
    p.k_off.assign(ko.begin() + 1, ko.end() - 1);
    p.m_diag.assign(md.begin() + 1, md.end() - 1);
    p.m_off.assign(mo.begin() + 1, mo.end() - 1);
  }
  return p;
}

struct SpectrumResult {
  std::vector<double> eigenvalues;  // ascending
  std::vector<int> modes;           // Fourier mode of each eigenvalue
  int negatives{0};
  int zeros{0};
  double zero_tolerance{0.0};
  double gap{0.0};  // smallest positive eigenvalue
  double boundary_shift{0.0};
};

namespace detail {

/// Sorts, applies the zero rule |lambda| < 1e-3 * (|lambda|_(4) - |lambda|_(3)) and counts.
inline void classify_eigenvalues(SpectrumResult& r) {
  std::vector<std::size_t> idx(r.eigenvalues.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return r.eigenvalues[a] < r.eigenvalues[b] || (r.eigenvalues[a] == r.eigenvalues[b] && r.modes[a] < r.modes[b]);
  });
  std::vector<double> ev;
  std::vector<int> md;
  for (std::size_t i : idx) {
    ev.push_back(r.eigenvalues[i]);
    md.push_back(r.modes[i]);
  }
  r.eigenvalues = std::move(ev);
  r.modes = std::move(md);
  std::vector<double> mags;
  for (double v : r.eigenvalues) mags.push_back(std::abs(v));
  std::sort(mags.begin(), mags.end());
  if (mags.size() < 4) throw NumericalError("spectrum", "fewer than four eigenvalues computed");
  r.zero_tolerance = 1e-3 * (mags[3] - mags[2]);
  r.negatives = 0;
  r.zeros = 0;
  r.gap = std::numeric_limits<double>::infinity();
  for (double v : r.eigenvalues) {
    if (std::abs(v) < r.zero_tolerance) {
      ++r.zeros;
    } else if (v < 0.0) {
      ++r.negatives;
    } else {
      r.gap = std::min(r.gap, v);
    }
  }
}

inline std::vector<double> mode_eigenvalues(const SphereFundamentalData& d, int k, double X, int n, int per_mode) {
  const TridiagonalPencil pen = assemble_jacobi_pencil(d, k, X, n);
  // lambda >= -2 max(sech^2 / conf) bounds the spectrum from below.
  const double kappa = d.H * d.H + 1.0;
  const double lo = -2.0 * std::max(kappa * kappa, d.s() * d.s()) / d.s() - 1.0;
  double hi = 16.0;
  while (count_below(pen, hi) < per_mode) {
    hi *= 2.0;
    if (hi > 1e12) throw NumericalError("spectrum", "could not bracket the requested eigenvalues");
  }
  return smallest_eigenvalues(pen, per_mode, lo, hi);
}

inline SpectrumResult collect_spectrum(const SphereFundamentalData& d, int k_max, double X, int n, int per_mode) {
  SpectrumResult r;
  for (int k = 0; k <= k_max; ++k) {
    for (double v : mode_eigenvalues(d, k, X, n, per_mode)) {
      r.eigenvalues.push_back(v);
      r.modes.push_back(k);
      if (k != 0) {
        r.eigenvalues.push_back(v);
        r.modes.push_back(-k);
      }
    }
  }
  classify_eigenvalues(r);
  return r;
}

}  // namespace detail

/// Lowest `per_mode` eigenvalues of each mode |k| <= k_max, merged (k and -k both listed).
/// The run is repeated on [-2X, 2X] at the same spacing; eigenvalues that move by
/// more than 1e-4 mean the truncation is too short.
inline SpectrumResult jacobi_spectrum(const BergerParam& p, double H, int k_max = 2, double X = 15.0, int n = 3000,
                                      int per_mode = 4, bool check_boundary = true) {
  if (k_max < 2) throw ContractError("jacobi_spectrum: k_max must be >= 2");
  if (n < 200) throw ContractError("jacobi_spectrum: n must be >= 200");
  if (per_mode < 2) throw ContractError("jacobi_spectrum: need at least 2 eigenvalues per mode");
  const SphereFundamentalData d = fundamental_data(p, H);
  SpectrumResult r = detail::collect_spectrum(d, k_max, X, n, per_mode);
  if (check_boundary) {
    const SpectrumResult wide = detail::collect_spectrum(d, k_max, 2.0 * X, 2 * n, per_mode);
    for (std::size_t i = 0; i < r.eigenvalues.size() && i < wide.eigenvalues.size(); ++i) {
      r.boundary_shift = std::max(r.boundary_shift, std::abs(r.eigenvalues[i] - wide.eigenvalues[i]));
    }
    if (r.boundary_shift > 1e-4) {
      std::ostringstream os;
      os << "eigenvalues moved by " << r.boundary_shift << " when X doubled from " << X << "; increase X";
      throw NumericalError("boundary_sensitivity", os.str());
    }
  }
  return r;
}

inline std::string spectrum_csv(const SpectrumResult& r) {
  io::CsvTable t({"k (1)", "lambda (1)"});
  for (std::size_t i = 0; i < r.eigenvalues.size(); ++i) t.add_row({static_cast<double>(r.modes[i]), r.eigenvalues[i]});
  return t.str();
}

}  // namespace berger
