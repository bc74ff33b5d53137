#pragma once

// Area / enclosed-volume profiles of the CMC sphere and flat torus families and the
// least-area comparison at fixed volume.

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "berger/core.hpp"
#include "berger/errors.hpp"
#include "berger/format.hpp"
#include "berger/quadrature.hpp"
#include "berger/roots.hpp"
#include "berger/sphere.hpp"
#include "berger/stability.hpp"
#include "berger/torus.hpp"

namespace berger {

enum class Family { Sphere, Torus };

inline const char* to_string(Family f) { return f == Family::Sphere ? "sphere" : "torus"; }

struct IsoperimetricProfile {
  Family family{Family::Sphere};
  double alpha{1.0};
  std::vector<double> H;
  std::vector<double> area;
  std::vector<double> volume;
  /// False when the volume fails to decrease somewhere along the grid.
  bool volume_monotone{true};
  /// First grid index i with volume[i] >= volume[i-1], or 0.
  std::size_t first_increase{0};
};

/// dV/dH of S_alpha(H). From the first variation dA = 2H dV and A = 2 pi * int conf dx,
/// differentiating under the integral cancels the factor 2H:
///   dV/dH = 2 pi * int c (1 - alpha - s c) / D^3 dx,  c = cosh^2 x, s = H^2 + alpha.
inline double sphere_volume_rate(const BergerParam& p, double H) {
  const SphereFundamentalData d = fundamental_data(p, H);
  const double b = 1.0 - p.alpha();
  const double s = d.s();
  const quad::Options opt{1e-12, 1e-300, 4000};
  return 2.0 * kPi * quad::integrate_line(
                         [&](double x) {
                           const double c = std::cosh(x) * std::cosh(x);
                           const double D = b + s * c;
                           return c * (b - s * c) / (D * D * D);
                         },
                         kMeridianCutoff, opt, "sphere_volume_rate");
}

/// Volume of the mean-convex side of S_alpha(H): pi^2 sqrt(alpha) at H = 0 (the minimal
/// sphere halves S^3_alpha) plus the integral of the rate.
inline double sphere_volume(const BergerParam& p, double H) {
  const double half = kPi * kPi * p.sqrt_alpha();
  if (H == 0.0) return half;
  const quad::Options opt{1e-11, 1e-14, 2000};
  return half + quad::integrate_or_throw([&](double h) { return sphere_volume_rate(p, h); }, 0.0, H, opt,
                                         "sphere_volume");
}

namespace detail {

inline void mark_monotonicity(IsoperimetricProfile& prof) {
  prof.volume_monotone = true;
  prof.first_increase = 0;
  for (std::size_t i = 1; i < prof.volume.size(); ++i) {
    if (prof.volume[i] >= prof.volume[i - 1]) {
      prof.volume_monotone = false;
      prof.first_increase = i;
      return;
    }
  }
}

inline std::vector<double> graded_grid(double H_max, int n) {
  std::vector<double> h(n);
  for (int i = 0; i < n; ++i) {
    const double u = static_cast<double>(i) / (n - 1);
    h[i] = H_max * u * u;
  }
  return h;
}

inline void check_profile_args(double H_max, int n) {
  if (!(H_max > 0.0) || !std::isfinite(H_max)) throw ContractError("profile: H_max must be positive");
  if (n < 50) throw ContractError("profile: need n >= 50 samples");
}

}  // namespace detail

/// Sphere family on the grid H_i = H_max (i/(n-1))^2: areas by quadrature, volumes by
/// accumulating the rate between consecutive grid points.
inline IsoperimetricProfile sphere_profile(const BergerParam& p, double H_max, int n) {
  detail::check_profile_args(H_max, n);
  IsoperimetricProfile prof;
  prof.family = Family::Sphere;
  prof.alpha = p.alpha();
  prof.H = detail::graded_grid(H_max, n);
  const quad::Options opt{1e-11, 1e-14, 2000};
  double v = kPi * kPi * p.sqrt_alpha();
  for (int i = 0; i < n; ++i) {
    const double H = prof.H[i];
    if (i > 0) {
      try {
        v += quad::integrate_or_throw([&](double h) { return sphere_volume_rate(p, h); }, prof.H[i - 1], H, opt,
                                      "sphere_profile");
      } catch (const NumericalError& e) {
        std::ostringstream os;
        os << "volume integration failed at H = " << H << ": " << e.what();
        throw NumericalError("sphere_profile", os.str());
      }
    }
    prof.area.push_back(area_sphere(p, H, 1e-11));
    prof.volume.push_back(v);
  }
  detail::mark_monotonicity(prof);
  return prof;
}

/// Torus family from the closed forms A = 2 pi^2 sqrt(alpha/(1+H^2)),
/// V = pi^2 sqrt(alpha) (1 - H / sqrt(1+H^2)).
inline IsoperimetricProfile torus_profile(const BergerParam& p, double H_max, int n) {
  detail::check_profile_args(H_max, n);
  IsoperimetricProfile prof;
  prof.family = Family::Torus;
  prof.alpha = p.alpha();
  prof.H = detail::graded_grid(H_max, n);
  for (double H : prof.H) {
    const AreaVolume av = torus_area_volume(p, H);
    prof.area.push_back(av.area);
    prof.volume.push_back(av.volume);
  }
  detail::mark_monotonicity(prof);
  return prof;
}

inline std::string profile_csv(const std::vector<IsoperimetricProfile>& profiles) {
  io::CsvTable t({"family", "H (1)", "area (1)", "volume (1)"});
  for (const auto& prof : profiles) {
    for (std::size_t i = 0; i < prof.H.size(); ++i) {
      t.add_cells({to_string(prof.family), io::num(prof.H[i]), io::num(prof.area[i]), io::num(prof.volume[i])});
    }
  }
  return t.str();
}

struct HalfVolumeComparison {
  double torus_area;
  double sphere_area;
  Family winner;
};

/// Clifford torus against the minimal sphere; both enclose half of S^3_alpha.
inline HalfVolumeComparison clifford_vs_minimal_sphere(const BergerParam& p) {
  const double at = 2.0 * kPi * kPi * p.sqrt_alpha();
  const double as = minimal_sphere_area(p);
  return {at, as, as <= at ? Family::Sphere : Family::Torus};
}

/// The alpha in (0, 1/3) where the Clifford torus and the minimal sphere have equal area.
inline double crossing_alpha() {
  auto g = [](double a) {
    const BergerParam p(a);
    return 2.0 * kPi * kPi * p.sqrt_alpha() - minimal_sphere_area(p);
  };
  const double a = roots::bisect(g, 0.01, 1.0 / 3.0, 1e-13).x;
  const BergerParam p(a);
  const double closed = minimal_sphere_area(p);
  const double numeric = area_sphere(p, 0.0);
  if (std::abs(closed - numeric) > 1e-6 * closed) {
    std::ostringstream os;
    os << "minimal sphere area " << closed << " disagrees with quadrature " << numeric;
    throw NumericalError("crossing_alpha", os.str());
  }
  return a;
}

struct IsoperimetricCandidate {
  Family family{Family::Sphere};
  double H{0.0};
  double area{0.0};
  /// True when the requested volume exceeded half the total and the complement was used.
  bool complement{false};
  std::vector<std::string> notes;
};

/// Least-area stable CMC candidate among spheres and flat tori enclosing volume V.
/// Volumes above half the total are answered by the same surface bounding the complement.
inline IsoperimetricCandidate isoperimetric_candidate(const BergerParam& p, double V) {
  const double total = total_volume(p);
  if (!(V > 0.0 && V < total)) {
    std::ostringstream os;
    os << "isoperimetric_candidate: volume must lie in (0, " << total << ")";
    throw ContractError(os.str());
  }
  const double half = 0.5 * total;
  IsoperimetricCandidate best;
  best.complement = V > half;
  const double target = best.complement ? total - V : V;

  struct Option {
    Family family;
    double H, area;
    bool stable;
  };
  std::vector<Option> options;

  // Spheres: every H with sphere_volume(H) = target (several when V(H) is not monotone).
  double H_hi = 1.0;
  while (sphere_volume(p, H_hi) > target) {
    H_hi *= 2.0;
    if (H_hi > 1e6) throw NumericalError("isoperimetric_candidate", "volume too small to bracket a sphere");
  }
  constexpr int kScan = 64;
  auto f = [&](double h) { return sphere_volume(p, h) - target; };
  std::vector<double> roots_H;
  double h_prev = 0.0, f_prev = f(0.0);
  if (f_prev == 0.0) roots_H.push_back(0.0);
  for (int i = 1; i <= kScan; ++i) {
    const double u = static_cast<double>(i) / kScan;
    const double h = H_hi * u * u;
    const double fh = f(h);
    if (fh == 0.0) {
      roots_H.push_back(h);
    } else if (f_prev != 0.0 && (f_prev < 0.0) != (fh < 0.0)) {
      roots_H.push_back(roots::brent(f, h_prev, h, 1e-13).x);
    }
    h_prev = h;
    f_prev = fh;
  }
  for (double H : roots_H) options.push_back({Family::Sphere, H, area_sphere(p, H), classify_sphere(p, H).stable});

  // Tori: V = half (1 - H / sqrt(1 + H^2)) inverts in closed form.
  const double u = 1.0 - target / half;
  const double Ht = u / std::sqrt(std::max(0.0, 1.0 - u * u));
  options.push_back({Family::Torus, Ht, torus_area_volume(p, Ht).area, classify_torus(p, Ht).stable});

  const Option* pick = nullptr;
  for (const auto& o : options) {
    if (!o.stable) continue;
    if (!pick || o.area < pick->area) pick = &o;
  }
  if (!pick) throw NumericalError("isoperimetric_candidate", "no stable sphere or torus encloses this volume");
  best.family = pick->family;
  best.H = pick->H;
  best.area = pick->area;
  for (const auto& o : options) {
    if (&o == pick) continue;
    std::ostringstream os;
    os << (o.stable ? "stable " : "unstable ") << to_string(o.family) << " at H = " << io::sig(o.H, 10)
       << " has area " << io::sig(o.area, 10);
    best.notes.push_back(os.str());
  }
  if (roots_H.size() > 1) best.notes.push_back("several non-congruent spheres enclose this volume");
  if (p.alpha() < 1.0 / 3.0) {
    best.notes.push_back("ranking covers stable CMC spheres and flat tori only; other surfaces are not excluded");
  }
  return best;
}

}  // namespace berger
