#pragma once

// Reconstruction of the meridian of S_alpha(H) from its fundamental data.
//
// Along y = 0 the adapted frame (e1, e2, N) = (d_x, d_y, N) / norms is written in the
// right-invariant frame (F1, F2, F3) as the columns of a 3x3 matrix R. With arclength
// ds = sqrt(conf) dx the Gauss-Weingarten equations read
//   dR/ds = R * Omega - M * R,   M[c][a] = sum_b R[b][0] * Gamma[b][a][c],
// where Omega carries the second fundamental form and Gamma the ambient connection,
// and the curve itself follows dq/ds = (R00 j + R10 k + R20 i / sqrt(alpha)) q.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "berger/core.hpp"
#include "berger/errors.hpp"
#include "berger/format.hpp"
#include "berger/sphere.hpp"

namespace berger {

struct MeridianProfile {
  double alpha{1.0};
  double H{0.0};
  std::vector<double> x;
  std::vector<AmbientPoint> points;
  std::vector<AmbientVector> normals;
  /// Orbit direction of the rotation group at each point: d_y of the surface.
  std::vector<AmbientVector> orbit_directions;
  std::vector<double> metric_residual;
  std::vector<double> c_residual;

  double max_metric_residual() const {
    return metric_residual.empty() ? 0.0 : *std::max_element(metric_residual.begin(), metric_residual.end());
  }
  double max_c_residual() const {
    return c_residual.empty() ? 0.0 : *std::max_element(c_residual.begin(), c_residual.end());
  }
};

namespace detail {

using MeridianState = std::array<double, 13>;  // q (4), R row-major (9)

inline Quaternion tangent_quaternion(const BergerParam& p, const Quaternion& q, const double* coeff) {
  return coeff[0] * frame_field(p, q, 0) + coeff[1] * frame_field(p, q, 1) + coeff[2] * frame_field(p, q, 2);
}

class MeridianSystem {
 public:
  MeridianSystem(const BergerParam& p, double H) : p_(p), d_(fundamental_data(p, H)), gamma_(frame_connection(p)) {}

  MeridianState rhs(double x, const MeridianState& y) const {
    const double lam = std::sqrt(d_.conf(x));
    const auto sh = d_.shape(x);
    const double om[3][3] = {{0.0, 0.0, -sh.h11}, {0.0, 0.0, -sh.h12}, {sh.h11, sh.h12, 0.0}};
    const double* R = y.data() + 4;
    double M[3][3] = {};
    for (int c = 0; c < 3; ++c)
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) M[c][a] += R[3 * b] * gamma_[b][a][c];
    MeridianState dy{};
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) {
        double v = 0.0;
        for (int k = 0; k < 3; ++k) v += R[3 * r + k] * om[k][c] - M[r][k] * R[3 * k + c];
        dy[4 + 3 * r + c] = lam * v;
      }
    const Quaternion q{y[0], y[1], y[2], y[3]};
    const Quaternion u{0.0, R[6] / p_.sqrt_alpha(), R[0], R[3]};
    const Quaternion dq = lam * (u * q);
    dy[0] = dq.re; dy[1] = dq.i; dy[2] = dq.j; dy[3] = dq.k;
    return dy;
  }

  /// Classical RK4 from x0 to x1 with steps no longer than max_step.
  MeridianState advance(MeridianState y, double x0, double x1, double max_step) const {
    const int steps = std::max(1, static_cast<int>(std::ceil(std::abs(x1 - x0) / max_step)));
    const double h = (x1 - x0) / steps;
    for (int s = 0; s < steps; ++s) {
      const double x = x0 + s * h;
      const MeridianState k1 = rhs(x, y);
      const MeridianState k2 = rhs(x + 0.5 * h, axpy(y, 0.5 * h, k1));
      const MeridianState k3 = rhs(x + 0.5 * h, axpy(y, 0.5 * h, k2));
      const MeridianState k4 = rhs(x + h, axpy(y, h, k3));
      for (std::size_t i = 0; i < y.size(); ++i) y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    return y;
  }

  /// State at x = 0: q = 1, xi = (xi1, xi2, 0) in the adapted frame, negatively oriented.
  MeridianState initial() const {
    const double root = std::sqrt(d_.s());
    const double xi1 = -d_.H / root;
    const double xi2 = d_.sqrt_alpha() / root;
    MeridianState y{};
    y[0] = 1.0;
    const double R[9] = {xi2, -xi1, 0.0, 0.0, 0.0, 1.0, xi1, xi2, 0.0};  // det R = -1
    std::copy(R, R + 9, y.begin() + 4);
    return y;
  }

  const SphereFundamentalData& data() const { return d_; }

 private:
  static MeridianState axpy(const MeridianState& y, double h, const MeridianState& k) {
    MeridianState r;
    for (std::size_t i = 0; i < y.size(); ++i) r[i] = y[i] + h * k[i];
    return r;
  }

  BergerParam p_;
  SphereFundamentalData d_;
  Tensor3 gamma_;
};

inline Quaternion state_point(const MeridianState& y) { return Quaternion{y[0], y[1], y[2], y[3]}.normalized(); }

inline std::array<double, 4> tangent_part(const Quaternion& v, const Quaternion& q) {
  const double r = v.dot(q);
  return (v - r * q).components();
}

}  // namespace detail

/// Integrates the frame system from x = 0 in both directions and samples it on a
/// uniform grid of n points over [x_lo, x_hi].
inline MeridianProfile reconstruct_meridian(const BergerParam& p, double H, double x_lo, double x_hi, int n,
                                            double max_residual = 1e-3) {
  if (n < 64) throw ContractError("reconstruct_meridian: grid needs n >= 64");
  if (!(x_hi > x_lo) || !std::isfinite(x_lo) || !std::isfinite(x_hi)) {
    throw ContractError("reconstruct_meridian: degenerate or non-finite range");
  }
  const detail::MeridianSystem sys(p, H);
  const SphereFundamentalData& d = sys.data();
  const double h = (x_hi - x_lo) / (n - 1);
  const double max_step = std::min(h, 0.005);

  std::vector<double> xs(n);
  for (int i = 0; i < n; ++i) xs[i] = x_lo + i * h;
  xs[n - 1] = x_hi;
  const int i0 = std::clamp(static_cast<int>(std::lround(-x_lo / h)), 0, n - 1);

  std::vector<detail::MeridianState> states(n);
  states[i0] = sys.advance(sys.initial(), 0.0, xs[i0], max_step);
  for (int i = i0 + 1; i < n; ++i) states[i] = sys.advance(states[i - 1], xs[i - 1], xs[i], max_step);
  for (int i = i0 - 1; i >= 0; --i) states[i] = sys.advance(states[i + 1], xs[i + 1], xs[i], max_step);

  MeridianProfile m;
  m.alpha = p.alpha();
  m.H = H;
  m.x = xs;
  m.points.reserve(n);
  m.normals.reserve(n);
  m.orbit_directions.reserve(n);
  for (int i = 0; i < n; ++i) {
    const auto& y = states[i];
    for (double v : y) {
      if (!std::isfinite(v)) throw NumericalError("reconstruction", "non-finite state in the frame ODE");
    }
    const Quaternion q = detail::state_point(y);
    const AmbientPoint pt(q);
    const double* R = y.data() + 4;
    const double ncoef[3] = {R[2], R[5], R[8]};
    const double e2coef[3] = {R[1], R[4], R[7]};
    const Quaternion nq = detail::tangent_quaternion(p, q, ncoef);
    const Quaternion e2q = std::sqrt(d.conf(xs[i])) * detail::tangent_quaternion(p, q, e2coef);
    m.points.push_back(pt);
    m.normals.emplace_back(pt, detail::tangent_part(nq, q));
    m.orbit_directions.emplace_back(pt, detail::tangent_part(e2q, q));
  }

  // Residuals: numerical speed^2 against conf, and <N, xi> against tanh x.
  m.metric_residual.resize(n);
  m.c_residual.resize(n);
  for (int i = 0; i < n; ++i) {
    Quaternion dq;
    if (i == 0) {
      dq = (1.0 / (2.0 * h)) * (-3.0 * m.points[0].quaternion() + 4.0 * m.points[1].quaternion() -
                                m.points[2].quaternion());
    } else if (i == n - 1) {
      dq = (1.0 / (2.0 * h)) * (3.0 * m.points[n - 1].quaternion() - 4.0 * m.points[n - 2].quaternion() +
                                m.points[n - 3].quaternion());
    } else {
      dq = (1.0 / (2.0 * h)) * (m.points[i + 1].quaternion() - m.points[i - 1].quaternion());
    }
    const AmbientVector velocity(m.points[i], detail::tangent_part(dq, m.points[i].quaternion()));
    m.metric_residual[i] = std::abs(metric_eval(p, velocity, velocity) / d.conf(xs[i]) - 1.0);
    const AmbientVector v = killing_field(m.points[i]);
    const double c = metric_eval(p, m.normals[i], v) / p.sqrt_alpha();
    m.c_residual[i] = std::abs(c - d.C(xs[i]));
  }
  const double worst = std::max(m.max_metric_residual(), m.max_c_residual());
  if (!(worst <= max_residual)) {
    std::ostringstream os;
    os << "alpha = " << p.alpha() << ", H = " << H << ": metric residual " << m.max_metric_residual()
       << ", C residual " << m.max_c_residual() << " exceed " << max_residual;
    throw NumericalError("reconstruction", os.str());
  }
  return m;
}

inline MeridianProfile reconstruct_meridian(const BergerParam& p, double H, double x_extent, int n) {
  return reconstruct_meridian(p, H, -x_extent, x_extent, n);
}

/// Killing field W(q) = a q + q b generating the rotations of the sphere. Isometries
/// of S^3_alpha are left multiplications by e^{it} composed with right multiplications
/// by unit quaternions, so a is a multiple of i and b is imaginary.
struct RotationGenerator {
  Quaternion left;
  Quaternion right;
  double fit_residual{0.0};
};

/// Least-squares fit of W to the sampled orbit directions.
inline RotationGenerator fit_rotation_generator(const MeridianProfile& m, int stride = 4) {
  const int n = static_cast<int>(m.points.size());
  const int rows = 4 * ((n + stride - 1) / stride);
  Eigen::MatrixXd A(rows, 4);
  Eigen::VectorXd b(rows);
  const Quaternion basis[3] = {kUnitI, kUnitJ, kUnitK};
  int r = 0;
  for (int i = 0; i < n; i += stride, r += 4) {
    const Quaternion& q = m.points[i].quaternion();
    const auto lc = (kUnitI * q).components();
    for (int k = 0; k < 4; ++k) A(r + k, 0) = lc[k];
    for (int c = 0; c < 3; ++c) {
      const auto rc = (q * basis[c]).components();
      for (int k = 0; k < 4; ++k) A(r + k, 1 + c) = rc[k];
    }
    const auto& t = m.orbit_directions[i].components();
    for (int k = 0; k < 4; ++k) b(r + k) = t[k];
  }
  const Eigen::VectorXd sol = A.colPivHouseholderQr().solve(b);
  RotationGenerator g;
  g.left = {0.0, sol(0), 0.0, 0.0};
  g.right = {0.0, sol(1), sol(2), sol(3)};
  g.fit_residual = (A * sol - b).lpNorm<Eigen::Infinity>();
  return g;
}

namespace detail {

/// Unit quaternion h with h u h^{-1} = v for unit imaginary u, v.
inline Quaternion rotation_taking(const Quaternion& u, const Quaternion& v) {
  const Quaternion h = Quaternion{1.0, 0.0, 0.0, 0.0} - v * u;
  if (h.norm() > 1e-8) return h.normalized();
  // u = -v: any unit imaginary orthogonal to v rotates by pi.
  Quaternion w = std::abs(v.j) < 0.9 ? kUnitJ : kUnitK;
  w = w - w.dot(v) * v;
  return w.normalized();
}

}  // namespace detail

struct Point2 {
  double x{0.0};
  double y{0.0};
};

/// Projects the meridian to the orbit space of its rotation group. After conjugating
/// the generator to q -> e^{it/2} q e^{-it/2}, i.e. (z, w) -> (z, e^{it} w), the orbit
/// space is the closed unit disc of z, and the poles land on its boundary.
inline std::vector<Point2> orbit_space_curve(const MeridianProfile& m, const RotationGenerator& g) {
  const double la = g.left.norm(), lb = g.right.norm();
  if (std::abs(la - lb) > 1e-6 * std::max(la, lb) || la < 1e-6) {
    std::ostringstream os;
    os << "rotation generator is not a rotation about a great circle (|a| = " << la << ", |b| = " << lb << ")";
    throw NumericalError("rotation_fit", os.str());
  }
  const Quaternion h = detail::rotation_taking((1.0 / la) * g.left, kUnitI);
  const Quaternion gr = detail::rotation_taking(-1.0 * kUnitI, (1.0 / lb) * g.right);
  // gr (-i) gr^{-1} = b/|b|, so gr^{-1} b gr = -|b| i.
  std::vector<Point2> out;
  out.reserve(m.points.size());
  for (const auto& pt : m.points) {
    const Quaternion q = h * pt.quaternion() * gr;
    out.push_back({q.re, q.i});
  }
  return out;
}

inline std::vector<Point2> orbit_space_curve(const MeridianProfile& m) {
  const RotationGenerator g = fit_rotation_generator(m);
  const double scale = std::max(g.left.norm(), 1e-300);
  if (g.fit_residual > 1e-6 * std::max(1.0, scale)) {
    std::ostringstream os;
    os << "orbit directions are not a Killing field (fit residual " << g.fit_residual << ")";
    throw NumericalError("rotation_fit", os.str());
  }
  return orbit_space_curve(m, g);
}

/// CSV with columns x, re(z), im(z), re(w), im(w), metric_residual, C_residual.
inline std::string meridian_csv(const MeridianProfile& m) {
  io::CsvTable t({"x (1)", "re(z) (1)", "im(z) (1)", "re(w) (1)", "im(w) (1)", "metric_residual (1)",
                  "C_residual (1)"});
  for (std::size_t i = 0; i < m.points.size(); ++i) {
    const Quaternion& q = m.points[i].quaternion();
    t.add_row({m.x[i], q.re, q.i, q.j, q.k, m.metric_residual[i], m.c_residual[i]});
  }
  return t.str();
}

}  // namespace berger
