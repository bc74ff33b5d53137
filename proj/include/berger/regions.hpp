#pragma once

// Sign analysis of the quadratic P_t(alpha) = A(t) alpha^2 + B(t) alpha + C(t), which
// decides where the curvature function F is nonnegative, and the integrand of the
// harmonic test-field argument.

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "berger/core.hpp"
#include "berger/errors.hpp"
#include "berger/format.hpp"
#include "berger/roots.hpp"

namespace berger {

struct RegionPolynomial {
  double t{0.0};
  int epsilon{1};
  double A{0.0};
  double B{0.0};
  double C{0.0};

  double operator()(double alpha) const { return (A * alpha + B) * alpha + C; }
  double discriminant() const { return B * B - 4.0 * A * C; }
};

inline void check_region_args(double t, int epsilon) {
  if (!(t >= 0.0 && t <= 1.0)) throw ContractError("region polynomial: t must lie in [0, 1]");
  if (epsilon != 1 && epsilon != -1) throw ContractError("region polynomial: epsilon must be +1 or -1");
}

inline RegionPolynomial region_polynomial(double t, int epsilon) {
  check_region_args(t, epsilon);
  const double e = epsilon;
  const double t2 = t * t, t4 = t2 * t2;
  return {t, epsilon, -(t4 + 2.0 * t2 - 8.0 * e * t + 1.0), 2.0 * (t4 - 4.0 * e * t + 3.0), -(1.0 - t2) * (1.0 - t2)};
}

inline double poly_eval(double t, int epsilon, double alpha) {
  if (!(alpha > 0.0)) throw ContractError("poly_eval: alpha must be positive");
  return region_polynomial(t, epsilon)(alpha);
}

/// Denominator t^4 + 2t^2 - 8t + 1 of the epsilon = +1 root; vanishes at t0.
inline double region_pole_polynomial(double t) { return t * t * t * t + 2.0 * t * t - 8.0 * t + 1.0; }

/// The root alpha(t) as printed: (b' -+ 2|t - eps| sqrt(2(1+t^2))) / a' with
/// a' = -A, b' = B/2. Throws at the pole t = t0 for epsilon = +1.
inline double alpha_root(double t, int epsilon) {
  check_region_args(t, epsilon);
  const double t4 = t * t * t * t;
  const double root = std::sqrt(2.0 * (1.0 + t * t));
  if (epsilon == -1) {
    return (t4 + 4.0 * t + 3.0 + 2.0 * (1.0 + t) * root) / (t4 + 2.0 * t * t + 8.0 * t + 1.0);
  }
  const double den = region_pole_polynomial(t);
  if (std::abs(den) < 1e-14) {
    std::ostringstream os;
    os << "alpha_root: t = " << t << " is the pole t0 of the epsilon = +1 root";
    throw ContractError(os.str());
  }
  return (t4 - 4.0 * t + 3.0 - 2.0 * (1.0 - t) * root) / den;
}

/// Same root written as -2C / (B + sqrt(B^2 - 4AC)), continuous across t0.
/// At t = 1, epsilon = +1 both numerator and denominator vanish; the limit is 0.
inline double alpha_root_continuous(double t, int epsilon) {
  const RegionPolynomial p = region_polynomial(t, epsilon);
  if (epsilon == -1) return alpha_root(t, epsilon);
  const double den = p.B + std::sqrt(std::max(0.0, p.discriminant()));
  if (den == 0.0) return 0.0;
  return -2.0 * p.C / den;
}

/// The other root beta(t) of the epsilon = +1 polynomial.
inline double beta_root(double t) {
  check_region_args(t, 1);
  const double den = region_pole_polynomial(t);
  if (std::abs(den) < 1e-14) throw ContractError("beta_root: pole at t0");
  const double t4 = t * t * t * t;
  return (t4 - 4.0 * t + 3.0 + 2.0 * (1.0 - t) * std::sqrt(2.0 * (1.0 + t * t))) / den;
}

struct CriticalConstants {
  double t0{0.0};
  double alpha1{0.0};
  double t_alpha1{0.0};
  double alpha_hyperbolic{0.0};
  double t_hyperbolic{0.0};
};

inline CriticalConstants critical_constants() {
  CriticalConstants c;
  c.t0 = roots::brent(region_pole_polynomial, 0.0, 1.0, 1e-15).x;

  constexpr int kScan = 10000;
  auto plus = [](double t) { return alpha_root_continuous(t, 1); };
  int best = 0;
  for (int i = 1; i <= kScan; ++i) {
    if (plus(static_cast<double>(i) / kScan) > plus(static_cast<double>(best) / kScan)) best = i;
  }
  const double lo = std::max(0.0, (best - 1.0) / kScan), hi = std::min(1.0, (best + 1.0) / kScan);
  const roots::Root r = roots::golden_max(plus, lo, hi, 1e-11);
  c.t_alpha1 = r.x;
  c.alpha1 = r.fx;

  auto neg_minus = [](double t) { return -alpha_root(t, -1); };
  int worst = 0;
  for (int i = 1; i <= kScan; ++i) {
    if (neg_minus(static_cast<double>(i) / kScan) > neg_minus(static_cast<double>(worst) / kScan)) worst = i;
  }
  const double lo2 = std::max(0.0, (worst - 1.0) / kScan), hi2 = std::min(1.0, (worst + 1.0) / kScan);
  const roots::Root m = roots::golden_max(neg_minus, lo2, hi2, 1e-11);
  // The minimum sits at the end point t = 1 when the scan says so.
  if (worst == kScan && neg_minus(1.0) >= m.fx) {
    c.t_hyperbolic = 1.0;
    c.alpha_hyperbolic = alpha_root(1.0, -1);
  } else {
    c.t_hyperbolic = m.x;
    c.alpha_hyperbolic = -m.fx;
  }
  return c;
}

/// F(t) = P_t(alpha) with t = |C| and epsilon the sign of 1 - alpha.
inline double region_function(double alpha, double t) {
  const int eps = alpha < 1.0 ? 1 : -1;
  return region_polynomial(t, eps)(alpha);
}

struct RegionSign {
  bool nonnegative{false};
  double minimum{0.0};
  double argmin{0.0};
};

/// Minimum of F over t in [0, 1] from an n-point grid, the end points and the
/// critical points of F (sign changes of F' refined by Brent).
inline RegionSign curvature_function_nonnegative(const BergerParam& p, int n = 2000, double tol = 1e-12) {
  if (p.alpha() == 1.0) throw ContractError("curvature_function_nonnegative: alpha = 1 has no sign epsilon");
  if (n < 1000) throw ContractError("curvature_function_nonnegative: grid needs n >= 1000");
  const double a = p.alpha();
  const double e = a < 1.0 ? 1.0 : -1.0;
  auto F = [&](double t) { return region_function(a, t); };
  auto dF = [&](double t) {
    const double b = 1.0 - a;
    return -4.0 * b * b * t * t * t + 4.0 * (1.0 - a * a) * t + 8.0 * e * a * (a - 1.0);
  };
  RegionSign s{true, F(0.0), 0.0};
  auto consider = [&](double t) {
    const double v = F(t);
    if (v < s.minimum) {
      s.minimum = v;
      s.argmin = t;
    }
  };
  consider(1.0);
  double prev = dF(0.0);
  for (int i = 1; i <= n; ++i) {
    const double t = static_cast<double>(i) / n;
    consider(t);
    const double cur = dF(t);
    if ((prev < 0.0) != (cur < 0.0)) consider(roots::brent(dF, static_cast<double>(i - 1) / n, t, 1e-15).x);
    prev = cur;
  }
  s.nonnegative = s.minimum >= -tol;
  return s;
}

/// Integrand -4H^2 - 4 alpha + ((alpha-1)^2/alpha)(1-c^2)^2 of Q(X) + Q(X*) for a
/// harmonic test field X and its conjugate.
inline double harmonic_pair_integrand(const BergerParam& p, double H, double c) {
  if (!(c >= -1.0 && c <= 1.0)) throw ContractError("harmonic_pair_integrand: c must lie in [-1, 1]");
  const double a = p.alpha();
  const double w = 1.0 - c * c;
  return -4.0 * H * H - 4.0 * a + (a - 1.0) * (a - 1.0) / a * w * w;
}

/// CSV of both roots over a uniform t grid (the pole of the printed +1 root is
/// avoided by the continuous form).
inline std::string alpha_root_csv(int n) {
  io::CsvTable t({"t (1)", "alpha_root_plus (1)", "alpha_root_minus (1)"});
  for (int i = 0; i <= n; ++i) {
    const double tt = static_cast<double>(i) / n;
    t.add_row({tt, alpha_root_continuous(tt, 1), alpha_root(tt, -1)});
  }
  return t.str();
}

}  // namespace berger
