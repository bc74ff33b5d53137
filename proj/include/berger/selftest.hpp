#pragma once

// Fast invariant suite behind `berger selftest`.

#include <cmath>
#include <exception>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "berger/berger.hpp"

namespace berger {

struct CheckResult {
  std::string name;
  bool passed{false};
  std::string detail;
};

namespace detail {

inline CheckResult run_check(const std::string& name, const std::function<std::string(bool&)>& body) {
  CheckResult r{name, false, ""};
  try {
    r.detail = body(r.passed);
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  return r;
}

inline std::string sci(double v) { return io::sig(v, 3); }

}  // namespace detail

inline std::vector<CheckResult> run_selftest() {
  using detail::run_check;
  using detail::sci;
  std::vector<CheckResult> out;

  out.push_back(run_check("killing_field_norm", [](bool& ok) {
    double worst = 0.0;
    for (double a : {0.05, 0.5, 1.0, 3.0}) {
      const BergerParam p(a);
      for (int i = 0; i < 8; ++i) {
        const double t = 0.7 * i, s = 0.3 + 0.1 * i;
        const AmbientPoint q(std::polar(std::cos(s), t), std::polar(std::sin(s), 2.0 * t));
        const AmbientVector v = killing_field(q);
        worst = std::max(worst, std::abs(metric_eval(p, v, v) - a));
        const auto h = hopf_project(q);
        worst = std::max(worst, std::abs(std::hypot(h[0], h[1], h[2]) - 0.5));
      }
    }
    ok = worst < 1e-12;
    return "max deviation " + sci(worst);
  }));

  out.push_back(run_check("integrability_second_order", [](bool& ok) {
    const auto d = fundamental_data(BergerParam(0.5), 1.0);
    const auto r1 = integrability_residual(d, -5.0, 5.0, 400);
    const auto r2 = integrability_residual(d, -5.0, 5.0, 799);
    const double ratio = r1.codazzi_p / r2.codazzi_p;
    ok = r1.codazzi_p < 1e-3 && r1.killing_A < 1e-3 && r1.gradient_C < 1e-3 && r1.norm_A < 1e-12 && ratio > 3.5 &&
         ratio < 4.5;
    return "refinement ratio " + sci(ratio);
  }));

  out.push_back(run_check("gauss_bonnet", [](bool& ok) {
    double worst = 0.0;
    for (double a : {0.1, 0.5, 2.0})
      for (double H : {0.0, 0.7}) {
        const auto d = fundamental_data(BergerParam(a), H);
        const double gb = 2.0 * kPi *
                          quad::integrate_line([&](double x) { return gauss_curvature(d, x) * d.conf(x); },
                                               kMeridianCutoff, {1e-12, 1e-300, 4000}, "gauss_bonnet");
        worst = std::max(worst, std::abs(gb / (4.0 * kPi) - 1.0));
      }
    ok = worst < 1e-6;
    return "max relative deviation " + sci(worst);
  }));

  out.push_back(run_check("minimal_sphere_area", [](bool& ok) {
    const BergerParam p(1.0 / 3.0);
    const double rel = std::abs(area_sphere(p, 0.0) / minimal_sphere_area(p) - 1.0);
    ok = rel < 1e-8;
    return "relative deviation " + sci(rel);
  }));

  out.push_back(run_check("meridian_reconstruction", [](bool& ok) {
    const auto m = reconstruct_meridian(BergerParam(0.5), 1.0, 8.0, 4096);
    ok = m.max_metric_residual() < 1e-4 && m.max_c_residual() < 1e-4;
    return "metric " + sci(m.max_metric_residual()) + ", C " + sci(m.max_c_residual());
  }));

  out.push_back(run_check("jacobi_potential_universal", [](bool& ok) {
    double worst = 0.0;
    for (double a : {0.1, 1.0, 3.0})
      for (double H : {0.0, 0.5, 2.0}) {
        const auto d = fundamental_data(BergerParam(a), H);
        for (double x = -6.0; x <= 6.0; x += 0.25) {
          worst = std::max(worst, std::abs(jacobi_potential(d, x) - jacobi_potential_flat(x)));
        }
      }
    ok = worst < 1e-12;
    return "max deviation " + sci(worst);
  }));

  out.push_back(run_check("koiso_closed_form", [](bool& ok) {
    for (double a : {0.05, 0.3, 0.9, 1.5, 4.0})
      for (double H : {0.0, 0.4, 2.0}) koiso_integral_checked(BergerParam(a), H);
    ok = true;
    return std::string("closed form matches quadrature");
  }));

  out.push_back(run_check("index_and_nullity", [](bool& ok) {
    std::string detail;
    ok = true;
    for (double a : {0.05, 0.3, 2.0}) {
      const auto r = jacobi_spectrum(BergerParam(a), 0.5);
      ok = ok && r.negatives == 1 && r.zeros == 3;
      detail += "(" + sci(a) + ": " + std::to_string(r.negatives) + "," + std::to_string(r.zeros) + ") ";
    }
    return detail;
  }));

  out.push_back(run_check("torus_lambda1", [](bool& ok) {
    double worst = 0.0;
    for (double a : {0.1, 0.2, 1.0 / 3.0, 0.5, 2.0})
      for (double H : {0.0, 0.3, 1.0, 3.0}) {
        const BergerParam p(a);
        const auto s = torus_spectrum_auto(torus_data(p, H));
        worst = std::max(worst, std::abs(s.lambda1 - lambda1_closed_form(p, H)));
      }
    ok = worst < 1e-10;
    return "max deviation " + sci(worst);
  }));

  out.push_back(run_check("region_identities", [](bool& ok) {
    double worst = 0.0;
    for (int i = 0; i <= 50; ++i) {
      const double t = i / 50.0;
      for (int e : {1, -1}) {
        const auto P = region_polynomial(t, e);
        worst = std::max(worst, std::abs(P(1.0) - 4.0));
        worst = std::max(worst, std::abs(P.discriminant() - 32.0 * (t - e) * (t - e) * (1.0 + t * t)));
      }
    }
    ok = worst < 1e-12;
    return "max deviation " + sci(worst);
  }));

  out.push_back(run_check("critical_constants", [](bool& ok) {
    const auto c = critical_constants();
    const double a0 = alpha0();
    const double ac = crossing_alpha();
    ok = std::abs(a0 - 0.121) < 5e-4 && std::abs(c.alpha1 - 0.217) < 5e-4 && std::abs(c.t0 - 0.1292) < 5e-5 &&
         std::abs(c.alpha_hyperbolic - 4.0 / 3.0) < 1e-10 && std::abs(ac - 0.166) < 5e-4;
    return "alpha0 " + io::sig(a0, 6) + ", alpha1 " + io::sig(c.alpha1, 6) + ", crossing " + io::sig(ac, 6);
  }));

  out.push_back(run_check("round_sphere_profile", [](bool& ok) {
    const auto prof = sphere_profile(BergerParam(1.0), 10.0, 60);
    double worst = 0.0;
    for (std::size_t i = 0; i < prof.H.size(); ++i) {
      const double r = std::atan2(1.0, prof.H[i]);
      worst = std::max(worst, std::abs(prof.area[i] - 4.0 * kPi * std::sin(r) * std::sin(r)));
      worst = std::max(worst, std::abs(prof.volume[i] - kPi * (2.0 * r - std::sin(2.0 * r))));
    }
    ok = worst < 1e-5;
    return "max deviation " + sci(worst);
  }));

  return out;
}

}  // namespace berger
