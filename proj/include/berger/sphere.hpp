#pragma once

// Fundamental data of the rotational CMC spheres S_alpha(H), expressed in the
// chart w = x + iy with z = e^w, where the angle function is C = tanh x and every
// datum depends on x only.

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include "berger/core.hpp"
#include "berger/errors.hpp"
#include "berger/quadrature.hpp"

namespace berger {

/// Default truncation of the meridian coordinate for improper integrals.
/// conf decays like e^{-2|x|}, so conf(25) / conf(0) < 1e-16 for moderate (alpha, H).
inline constexpr double kMeridianCutoff = 25.0;

/// arctanh(u)/u for 1 - alpha > 0, arctan(u)/u for 1 - alpha < 0, where
/// u = sqrt(|1 - alpha| / kappa). Continuous across alpha = 1 (value 1).
inline double branch_ratio(double alpha, double kappa) {
  const double u2 = std::abs(1.0 - alpha) / kappa;
  const double u = std::sqrt(u2);
  if (u < 1e-4) {
    // Series: arctanh(u)/u = 1 + u^2/3 + u^4/5, arctan(u)/u = 1 - u^2/3 + u^4/5.
    const double sgn = alpha < 1.0 ? 1.0 : -1.0;
    return 1.0 + sgn * u2 / 3.0 + u2 * u2 / 5.0;
  }
  return alpha < 1.0 ? std::atanh(u) / u : std::atan(u) / u;
}

struct SphereFundamentalData {
  double alpha{1.0};
  double H{0.0};

  double s() const { return H * H + alpha; }
  double sqrt_alpha() const { return std::sqrt(alpha); }

  /// (1 - alpha) + (H^2 + alpha) cosh^2 x, the common denominator.
  double denom(double x) const {
    const double c = std::cosh(x);
    return (1.0 - alpha) + s() * c * c;
  }

  double C(double x) const { return std::tanh(x); }

  /// Conformal factor e^{2v}: the induced metric is conf(x) |dw|^2.
  double conf(double x) const {
    const double c = std::cosh(x);
    const double d = denom(x);
    return s() * c * c / (d * d);
  }

  /// The same factor computed from the z-chart expression e^{2u(z)} |z|^2 at z = e^x.
  double conf_from_z_chart(double x) const {
    const double r2 = std::exp(2.0 * x);
    const double d = 4.0 * (1.0 - alpha) * r2 + s() * (r2 + 1.0) * (r2 + 1.0);
    const double e2u = 4.0 * (r2 + 1.0) * (r2 + 1.0) * s() / (d * d);
    return e2u * r2;
  }

  /// <Phi_w, xi>.
  std::complex<double> A(double x) const {
    return -std::complex<double>(H, sqrt_alpha()) / (2.0 * denom(x));
  }

  /// <sigma(d_w, d_w), N>.
  std::complex<double> p(double x) const {
    const double d = denom(x);
    return (1.0 - alpha) * std::complex<double>(H, sqrt_alpha()) / (2.0 * d * d);
  }

  /// Transports the z-chart datum A(z) to the w-chart: A_w = A_z * dz/dw at z = e^x.
  std::complex<double> A_from_z_chart(double x) const {
    const double r = std::exp(x);
    const double r2 = r * r;
    const double d = 4.0 * (1.0 - alpha) * r2 + s() * (r2 + 1.0) * (r2 + 1.0);
    const std::complex<double> az = -2.0 * std::complex<double>(H, sqrt_alpha()) * r / d;
    return az * r;
  }

  /// Second fundamental form in the orthonormal frame (d_x, d_y)/sqrt(conf).
  struct Shape {
    double h11, h12, h22;
  };
  Shape shape(double x) const {
    const double cf = conf(x);
    const std::complex<double> pw = p(x);
    const double diff = 4.0 * pw.real() / cf;  // h11 - h22
    return {H + 0.5 * diff, -2.0 * pw.imag() / cf, H - 0.5 * diff};
  }

  /// Second derivative of log conf, exact.
  double log_conf_dd(double x) const {
    const double c = std::cosh(x);
    const double d = denom(x);
    const double sv = s();
    const double num = 2.0 * sv * ((1.0 - alpha) + 0.5 * sv) * std::cosh(2.0 * x) + sv * sv;
    return 2.0 / (c * c) - 2.0 * num / (d * d);
  }
};

inline SphereFundamentalData fundamental_data(const BergerParam& p, double H) {
  if (!(H >= 0.0) || !std::isfinite(H)) {
    throw ContractError("fundamental_data: mean curvature H must be finite and >= 0");
  }
  return {p.alpha(), H};
}

/// Sup-norm residuals of the four integrability conditions on a uniform grid,
/// with d/dw = d/dw̄ = (1/2) d/dx for x-only data.
struct IntegrabilityResidual {
  double codazzi_p{0.0};   // p_w̄ = 2(1-a) conf C A
  double killing_A{0.0};   // A_w̄ = conf C (H + i sqrt a) / 2
  double gradient_C{0.0};  // C_w = -(H - i sqrt a) A - 2 p Ā / conf
  double norm_A{0.0};      // |A|^2 = conf (1 - C^2) / 4
  double spacing{0.0};
};

inline IntegrabilityResidual integrability_residual(const SphereFundamentalData& d, double x_lo,
                                                    double x_hi, int n) {
  if (n < 16) throw ContractError("integrability_residual: grid needs n >= 16");
  if (!(x_hi > x_lo) || !std::isfinite(x_lo) || !std::isfinite(x_hi)) {
    throw ContractError("integrability_residual: degenerate or non-finite range");
  }
  using cd = std::complex<double>;
  const double h = (x_hi - x_lo) / (n - 1);
  const cd hs(d.H, d.sqrt_alpha());
  const cd hs_bar(d.H, -d.sqrt_alpha());
  IntegrabilityResidual r;
  r.spacing = h;
  for (int i = 0; i < n; ++i) {
    const double x = x_lo + i * h;
    const double cf = d.conf(x);
    const double c = d.C(x);
    const cd a = d.A(x);
    const cd pw = d.p(x);
    r.norm_A = std::max(r.norm_A, std::abs(std::norm(a) - 0.25 * cf * (1.0 - c * c)));
    if (i == 0 || i == n - 1) continue;
    const double xm = x - h, xp = x + h;
    const cd dp = 0.5 * (d.p(xp) - d.p(xm)) / (2.0 * h);
    const cd da = 0.5 * (d.A(xp) - d.A(xm)) / (2.0 * h);
    const double dc = 0.5 * (d.C(xp) - d.C(xm)) / (2.0 * h);
    r.codazzi_p = std::max(r.codazzi_p, std::abs(dp - 2.0 * (1.0 - d.alpha) * cf * c * a));
    r.killing_A = std::max(r.killing_A, std::abs(da - 0.5 * cf * c * hs));
    r.gradient_C = std::max(r.gradient_C, std::abs(cd(dc) + hs_bar * a + 2.0 * pw * std::conj(a) / cf));
  }
  return r;
}

/// K = -(1/(2 conf)) (log conf)'' for the metric conf |dw|^2.
inline double gauss_curvature_conformal(const SphereFundamentalData& d, double x) {
  return -0.5 * d.log_conf_dd(x) / d.conf(x);
}

/// K = 2H^2 - |sigma|^2/2 + alpha + 4(1-alpha)C^2 with |sigma|^2 = 2H^2 + 8|p|^2/conf^2.
inline double gauss_curvature_gauss_equation(const SphereFundamentalData& d, double x) {
  const double cf = d.conf(x);
  const double sigma2 = 2.0 * d.H * d.H + 8.0 * std::norm(d.p(x)) / (cf * cf);
  const double c = d.C(x);
  return 2.0 * d.H * d.H - 0.5 * sigma2 + d.alpha + 4.0 * (1.0 - d.alpha) * c * c;
}

/// Gauss curvature, cross-checked between the intrinsic and the Gauss-equation routes.
inline double gauss_curvature(const SphereFundamentalData& d, double x) {
  const double intrinsic = gauss_curvature_conformal(d, x);
  const double extrinsic = gauss_curvature_gauss_equation(d, x);
  if (std::abs(intrinsic - extrinsic) > 1e-6 * std::max(1.0, std::abs(intrinsic))) {
    std::ostringstream os;
    os << "intrinsic K = " << intrinsic << " but Gauss equation gives " << extrinsic << " at x = " << x;
    throw NumericalError("gauss_curvature", os.str());
  }
  return intrinsic;
}

/// Area 2 pi * integral of conf over the meridian coordinate, by adaptive quadrature.
inline double area_sphere(const BergerParam& p, double H, double rel_tol = 1e-12) {
  const SphereFundamentalData d = fundamental_data(p, H);
  const quad::Options opt{rel_tol, 1e-300, 4000};
  return 2.0 * kPi * quad::integrate_line([&](double x) { return d.conf(x); }, kMeridianCutoff, opt,
                                          "area_sphere");
}

/// Closed form of the same area (t = tanh x turns the integral into a rational one):
/// 2 pi / (H^2+1) * (1 + (H^2+alpha)/(H^2+1) * branch_ratio).
inline double sphere_area_closed_form(const BergerParam& p, double H) {
  const double kappa = H * H + 1.0;
  const double s = H * H + p.alpha();
  return 2.0 * kPi / kappa * (1.0 + s / kappa * branch_ratio(p.alpha(), kappa));
}

/// Area of the minimal sphere: 2 pi (1 + alpha arctanh(sqrt(1-alpha)) / sqrt(1-alpha)) for alpha < 1.
inline double minimal_sphere_area(const BergerParam& p) {
  const double a = p.alpha();
  if (a == 1.0) return 4.0 * kPi;
  if (a < 1.0) {
    const double r = std::sqrt(1.0 - a);
    return 2.0 * kPi * (1.0 + a * std::atanh(r) / r);
  }
  const double r = std::sqrt(a - 1.0);
  return 2.0 * kPi * (1.0 + a * std::atan(r) / r);
}

}  // namespace berger
