#pragma once

// Ambient geometry of the Berger spheres S^3_alpha.
//
// Points of S^3 in C^2 are stored as unit quaternions q = z + w j, i.e. the four
// reals (Re z, Im z, Re w, Im w). Left multiplication by i is the complex
// structure, so the Hopf Killing field is V(q) = i q. Right multiplication by
// unit quaternions commutes with it, which makes the right-invariant fields
// F1 = j q, F2 = k q, F3 = i q / sqrt(alpha) a global g_alpha-orthonormal frame.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>

#include "berger/errors.hpp"

namespace berger {

inline constexpr double kPi = std::numbers::pi;

struct Quaternion {
  double re{0.0};
  double i{0.0};
  double j{0.0};
  double k{0.0};

  friend constexpr Quaternion operator*(const Quaternion& a, const Quaternion& b) {
    return {a.re * b.re - a.i * b.i - a.j * b.j - a.k * b.k,
            a.re * b.i + a.i * b.re + a.j * b.k - a.k * b.j,
            a.re * b.j - a.i * b.k + a.j * b.re + a.k * b.i,
            a.re * b.k + a.i * b.j - a.j * b.i + a.k * b.re};
  }
  friend constexpr Quaternion operator+(const Quaternion& a, const Quaternion& b) {
    return {a.re + b.re, a.i + b.i, a.j + b.j, a.k + b.k};
  }
  friend constexpr Quaternion operator-(const Quaternion& a, const Quaternion& b) {
    return {a.re - b.re, a.i - b.i, a.j - b.j, a.k - b.k};
  }
  friend constexpr Quaternion operator*(double s, const Quaternion& a) {
    return {s * a.re, s * a.i, s * a.j, s * a.k};
  }

  constexpr Quaternion conj() const { return {re, -i, -j, -k}; }
  constexpr double dot(const Quaternion& o) const { return re * o.re + i * o.i + j * o.j + k * o.k; }
  double norm() const { return std::sqrt(dot(*this)); }
  Quaternion normalized() const { return (1.0 / norm()) * (*this); }

  constexpr std::array<double, 4> components() const { return {re, i, j, k}; }
  static constexpr Quaternion from(const std::array<double, 4>& c) { return {c[0], c[1], c[2], c[3]}; }
};

inline constexpr Quaternion kUnitI{0.0, 1.0, 0.0, 0.0};
inline constexpr Quaternion kUnitJ{0.0, 0.0, 1.0, 0.0};
inline constexpr Quaternion kUnitK{0.0, 0.0, 0.0, 1.0};

/// Exponential of a purely imaginary quaternion.
inline Quaternion exp_imaginary(const Quaternion& v) {
  const double theta = std::sqrt(v.i * v.i + v.j * v.j + v.k * v.k);
  if (theta < 1e-300) return {1.0, 0.0, 0.0, 0.0};
  const double s = std::sin(theta) / theta;
  return {std::cos(theta), s * v.i, s * v.j, s * v.k};
}

/// Deformation parameter of the Berger metric. alpha = 1 is the round sphere.
class BergerParam {
 public:
  explicit BergerParam(double alpha) : alpha_(alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
      throw ContractError("BergerParam: alpha must be a finite positive number");
    }
  }

  double alpha() const noexcept { return alpha_; }
  double sqrt_alpha() const noexcept { return std::sqrt(alpha_); }
  /// Sign of 1 - alpha (0 on the round sphere).
  int epsilon() const noexcept { return alpha_ < 1.0 ? 1 : (alpha_ > 1.0 ? -1 : 0); }

 private:
  double alpha_;
};

class AmbientPoint {
 public:
  static constexpr double kTolerance = 1e-12;

  explicit AmbientPoint(const Quaternion& q) : q_(q) {
    if (std::abs(q.dot(q) - 1.0) > kTolerance) {
      throw ContractError("AmbientPoint: |z|^2 + |w|^2 must equal 1");
    }
  }
  AmbientPoint(std::complex<double> z, std::complex<double> w)
      : AmbientPoint(Quaternion{z.real(), z.imag(), w.real(), w.imag()}) {}

  const Quaternion& quaternion() const noexcept { return q_; }
  std::complex<double> z() const { return {q_.re, q_.i}; }
  std::complex<double> w() const { return {q_.j, q_.k}; }

  friend bool operator==(const AmbientPoint& a, const AmbientPoint& b) {
    return a.q_.re == b.q_.re && a.q_.i == b.q_.i && a.q_.j == b.q_.j && a.q_.k == b.q_.k;
  }

 private:
  Quaternion q_;
};

/// Tangent vector of S^3 stored by its real coordinates in C^2.
class AmbientVector {
 public:
  static constexpr double kTolerance = 1e-10;

  AmbientVector(const AmbientPoint& base, const std::array<double, 4>& components)
      : base_(base), v_(components) {
    const Quaternion v = Quaternion::from(components);
    const double scale = std::max(1.0, v.norm());
    if (std::abs(v.dot(base.quaternion())) > kTolerance * scale) {
      throw ContractError("AmbientVector: vector is not tangent to S^3 at its base point");
    }
  }

  const AmbientPoint& base() const noexcept { return base_; }
  const std::array<double, 4>& components() const noexcept { return v_; }
  Quaternion quaternion() const { return Quaternion::from(v_); }

 private:
  AmbientPoint base_;
  std::array<double, 4> v_;
};

/// V(q) = (iz, iw).
inline AmbientVector killing_field(const AmbientPoint& q) {
  return AmbientVector(q, (kUnitI * q.quaternion()).components());
}

/// g_alpha(X, Y) = g(X, Y) + (alpha - 1) g(X, V) g(Y, V).
inline double metric_eval(const BergerParam& p, const AmbientVector& x, const AmbientVector& y) {
  if (!(x.base() == y.base())) {
    throw ContractError("metric_eval: tangent vectors live at different base points");
  }
  const Quaternion v = kUnitI * x.base().quaternion();
  const Quaternion a = x.quaternion();
  const Quaternion b = y.quaternion();
  return a.dot(b) + (p.alpha() - 1.0) * a.dot(v) * b.dot(v);
}

/// Hopf fibration onto the sphere of radius 1/2: (Re z w̄, Im z w̄, (|z|^2 - |w|^2)/2).
inline std::array<double, 3> hopf_project(const AmbientPoint& q) {
  const std::complex<double> zw = q.z() * std::conj(q.w());
  return {zw.real(), zw.imag(), 0.5 * (std::norm(q.z()) - std::norm(q.w()))};
}

inline double total_volume(const BergerParam& p) { return 2.0 * kPi * kPi * p.sqrt_alpha(); }

// ---------------------------------------------------------------------------
// Right-invariant orthonormal frame and its Levi-Civita connection.

/// F_a(q) for a = 0, 1, 2 (F3 is the unit Killing field xi).
inline Quaternion frame_field(const BergerParam& p, const Quaternion& q, int a) {
  switch (a) {
    case 0: return kUnitJ * q;
    case 1: return kUnitK * q;
    default: return (1.0 / p.sqrt_alpha()) * (kUnitI * q);
  }
}

using Tensor3 = std::array<std::array<std::array<double, 3>, 3>, 3>;
using Matrix3 = std::array<std::array<double, 3>, 3>;

/// Structure constants c[a][b][c] = g_alpha([F_a, F_b], F_c).
/// For linear fields X_u(q) = u q one has [X_u, X_v] = -(uv - vu) q.
inline Tensor3 frame_brackets(const BergerParam& p) {
  const double sa = p.sqrt_alpha();
  Tensor3 c{};
  c[0][1][2] = -2.0 * sa;  // [F1,F2] = -2 X_i = -2 sqrt(a) F3
  c[1][2][0] = -2.0 / sa;  // [F2,F3] = -2 X_j / sqrt(a)
  c[2][0][1] = -2.0 / sa;  // [F3,F1] = -2 X_k / sqrt(a)
  c[1][0][2] = -c[0][1][2];
  c[2][1][0] = -c[1][2][0];
  c[0][2][1] = -c[2][0][1];
  return c;
}

/// Christoffel symbols gamma[a][b][c] = g_alpha(nabla_{F_a} F_b, F_c) via Koszul.
inline Tensor3 frame_connection(const BergerParam& p) {
  const Tensor3 c = frame_brackets(p);
  Tensor3 g{};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int d = 0; d < 3; ++d) g[a][b][d] = 0.5 * (c[a][b][d] - c[b][d][a] + c[d][a][b]);
  return g;
}

/// Ricci tensor in the frame (F1, F2, F3).
inline Matrix3 ricci_frame(const BergerParam& p) {
  const Tensor3 c = frame_brackets(p);
  const Tensor3 g = frame_connection(p);
  // R(F_a,F_b)F_e = nabla_a nabla_b F_e - nabla_b nabla_a F_e - nabla_[a,b] F_e
  auto riemann = [&](int a, int b, int e, int f) {
    double r = 0.0;
    for (int d = 0; d < 3; ++d) {
      r += g[b][e][d] * g[a][d][f] - g[a][e][d] * g[b][d][f];
      r -= c[a][b][d] * g[d][e][f];
    }
    return r;
  };
  Matrix3 ric{};
  for (int b = 0; b < 3; ++b)
    for (int e = 0; e < 3; ++e)
      for (int a = 0; a < 3; ++a) ric[b][e] += riemann(a, b, e, a);
  return ric;
}

/// Ricci curvature Ric(u, u) of a g_alpha-unit vector given by frame coordinates.
inline double ricci_curvature(const BergerParam& p, const std::array<double, 3>& u) {
  const Matrix3 ric = ricci_frame(p);
  double r = 0.0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) r += u[a] * ric[a][b] * u[b];
  return r;
}

}  // namespace berger
