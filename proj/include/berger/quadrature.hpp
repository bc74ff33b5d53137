#pragma once

// Globally adaptive Gauss-Kronrod (7/15) quadrature.

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>
#include <vector>

#include "berger/errors.hpp"

namespace berger::quad {

struct Result {
  double value{0.0};
  double error{0.0};
  int evaluations{0};
  bool converged{false};
};

struct Options {
  double rel_tol{1e-12};
  double abs_tol{1e-15};
  int max_intervals{4000};
};

namespace detail {

inline constexpr double kNodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr double kKronrod[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights at kNodes[1], kNodes[3], kNodes[5], kNodes[7].
inline constexpr double kGauss[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
Panel gk15(const F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double kron = kKronrod[7] * fc;
  double gauss = kGauss[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = h * kNodes[i];
    const double sum = f(c - dx) + f(c + dx);
    kron += kKronrod[i] * sum;
    if (i % 2 == 1) gauss += kGauss[i / 2] * sum;
  }
  return {a, b, kron * h, std::abs((kron - gauss) * h)};
}

}  // namespace detail

/// Integrates f over [a, b] until the summed error estimate is below
/// max(abs_tol, rel_tol * |I|). Does not throw; check `converged`.
template <class F>
Result integrate(const F& f, double a, double b, const Options& opt = {}) {
  Result r;
  if (a == b) {
    r.converged = true;
    return r;
  }
  std::priority_queue<detail::Panel> heap;
  heap.push(detail::gk15(f, a, b));
  r.evaluations = 15;
  double value = heap.top().value;
  double error = heap.top().error;
  while (error > std::max(opt.abs_tol, opt.rel_tol * std::abs(value))) {
    if (static_cast<int>(heap.size()) >= opt.max_intervals) {
      r.value = value;
      r.error = error;
      return r;
    }
    const detail::Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const detail::Panel left = detail::gk15(f, worst.a, mid);
    const detail::Panel right = detail::gk15(f, mid, worst.b);
    r.evaluations += 30;
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    if (error < 0.0) error = 0.0;
  }
  // Re-sum to shed the drift of the running update.
  value = 0.0;
  error = 0.0;
  while (!heap.empty()) {
    value += heap.top().value;
    error += heap.top().error;
    heap.pop();
  }
  r.value = value;
  r.error = error;
  r.converged = true;
  return r;
}

/// Like integrate() but throws NumericalError when the tolerance is not met.
template <class F>
double integrate_or_throw(const F& f, double a, double b, const Options& opt, const char* what) {
  const Result r = integrate(f, a, b, opt);
  if (!r.converged) {
    std::ostringstream os;
    os << "quadrature did not converge on [" << a << ", " << b << "], estimate " << r.value
       << " with error " << r.error;
    throw NumericalError(what, os.str());
  }
  return r.value;
}

/// Integral over the real line of a function decaying like e^{-c|x|}, truncated
/// at |x| = cutoff and split at 0.
template <class F>
double integrate_line(const F& f, double cutoff, const Options& opt, const char* what) {
  return integrate_or_throw(f, -cutoff, 0.0, opt, what) + integrate_or_throw(f, 0.0, cutoff, opt, what);
}

}  // namespace berger::quad
