#pragma once

// Bracketed scalar root finding and 1-D extremum refinement.

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "berger/errors.hpp"

namespace berger::roots {

struct Root {
  double x{0.0};
  double fx{0.0};
  int iterations{0};
};

/// Brent's method (inverse quadratic interpolation safeguarded by bisection).
/// Requires f(a) and f(b) of opposite sign (or one of them zero).
template <class F>
Root brent(const F& f, double a, double b, double xtol = 1e-14, int max_iter = 200) {
  double fa = f(a);
  double fb = f(b);
  if (fa == 0.0) return {a, fa, 0};
  if (fb == 0.0) return {b, fb, 0};
  if (std::signbit(fa) == std::signbit(fb)) {
    std::ostringstream os;
    os << "no sign change on [" << a << ", " << b << "] (f = " << fa << ", " << fb << ")";
    throw NumericalError("bracket", os.str());
  }
  double c = a, fc = fa, d = b - a, e = d;
  for (int it = 1; it <= max_iter; ++it) {
    if (std::signbit(fb) == std::signbit(fc)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double tol = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) + 0.5 * xtol;
    const double m = 0.5 * (c - b);
    if (std::abs(m) <= tol || fb == 0.0) return {b, fb, it};
    if (std::abs(e) >= tol && std::abs(fa) > std::abs(fb)) {
      double p, q;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * m * s;
        q = 1.0 - s;
      } else {
        const double qa = fa / fc, r = fb / fc;
        p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
        q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q; else p = -p;
      if (2.0 * p < std::min(3.0 * m * q - std::abs(tol * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = m;
        e = m;
      }
    } else {
      d = m;
      e = m;
    }
    a = b;
    fa = fb;
    b += std::abs(d) > tol ? d : (m > 0.0 ? tol : -tol);
    fb = f(b);
  }
  throw NumericalError("brent", "iteration limit reached");
}

/// Plain bisection to an absolute width `xtol`.
template <class F>
Root bisect(const F& f, double a, double b, double xtol = 1e-12, int max_iter = 400) {
  double fa = f(a);
  const double fb = f(b);
  if (std::signbit(fa) == std::signbit(fb) && fa != 0.0 && fb != 0.0) {
    throw NumericalError("bracket", "bisection requires a sign change");
  }
  int it = 0;
  while (std::abs(b - a) > xtol && it < max_iter) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if (fm == 0.0) return {m, fm, it};
    if (std::signbit(fm) == std::signbit(fa)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
    ++it;
  }
  const double x = 0.5 * (a + b);
  return {x, f(x), it};
}

/// Grows `hi` geometrically until f(lo) and f(hi) differ in sign.
template <class F>
std::pair<double, double> expand_upper(const F& f, double lo, double hi, int max_doublings = 80) {
  const bool s = std::signbit(f(lo));
  for (int i = 0; i < max_doublings; ++i) {
    if (std::signbit(f(hi)) != s) return {lo, hi};
    lo = hi;
    hi *= 2.0;
  }
  throw NumericalError("bracket", "could not bracket a root by expansion");
}

/// Golden-section search for the maximum of a unimodal f on [a, b].
template <class F>
Root golden_max(const F& f, double a, double b, double xtol = 1e-12) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = f(x1), f2 = f(x2);
  int it = 0;
  while (b - a > xtol && it < 400) {
    if (f1 < f2) {
      a = x1; x1 = x2; f1 = f2;
      x2 = a + g * (b - a);
      f2 = f(x2);
    } else {
      b = x2; x2 = x1; f2 = f1;
      x1 = b - g * (b - a);
      f1 = f(x1);
    }
    ++it;
  }
  const double x = 0.5 * (a + b);
  return {x, f(x), it};
}

}  // namespace berger::roots
