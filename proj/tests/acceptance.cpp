// Acceptance run: one PASS/FAIL line per criterion. Optional argv[1] is the path of
// the CLI binary used by the determinism gate.

#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "berger/berger.hpp"
#include "berger/selftest.hpp"

using namespace berger;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& title, double time_limit, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o{false, ""};
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (time_limit > 0.0 && secs > time_limit) {
    o.pass = false;
    o.detail += "; exceeded " + io::sig(time_limit, 3) + " s";
  }
  if (!o.pass) ++failures;
  std::printf("%s %2d %s: %s (%.3f s)\n", o.pass ? "PASS" : "FAIL", id, title.c_str(), o.detail.c_str(), secs);
  std::fflush(stdout);
}

bool rounds_to(double v, double target, int decimals) {
  const double s = std::pow(10.0, decimals);
  return std::round(v * s) == std::round(target * s);
}

std::string read_file(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";

  criterion(1, "alpha0 reproduction", 1.0, [] {
    const double a = alpha0();
    const double r = std::sqrt(1.0 - a);
    const double residual = std::atanh(r) - 3.0 * r / (2.0 - 3.0 * a);
    return Outcome{rounds_to(a, 0.121, 3) && std::abs(residual) < 1e-10,
                   "alpha0 = " + io::sig(a, 12) + ", equation residual " + io::sig(residual, 2)};
  });

  criterion(2, "alpha1, t0 and 4/3 reproduction", 1.0, [] {
    const auto c = critical_constants();
    const bool ok = rounds_to(c.alpha1, 0.217, 3) && rounds_to(c.t0, 0.1292, 4) &&
                    std::abs(c.alpha_hyperbolic - 4.0 / 3.0) < 1e-10;
    return Outcome{ok, "alpha1 = " + io::sig(c.alpha1, 12) + ", t0 = " + io::sig(c.t0, 12) +
                           ", min of minus root = " + io::sig(c.alpha_hyperbolic, 15)};
  });

  criterion(3, "crossing alpha reproduction", 1.0, [] {
    const double a = crossing_alpha();
    return Outcome{rounds_to(a, 0.166, 3), "crossing alpha = " + io::sig(a, 12)};
  });

  criterion(4, "Clifford torus against minimal sphere at alpha = 1/3", 0.0, [] {
    const double a1 = 2.0 * kPi * kPi / std::sqrt(3.0);
    const double a2 = 2.0 * kPi * (1.0 + std::atanh(std::sqrt(2.0) / std::sqrt(3.0)) / std::sqrt(6.0));
    const double q = area_sphere(BergerParam(1.0 / 3.0), 0.0);
    const double rel = std::abs(q - a2) / a2;
    return Outcome{a1 > a2 && rel < 1e-6,
                   "A1 = " + io::sig(a1, 10) + ", A2 = " + io::sig(a2, 10) + ", quadrature rel. dev. " + io::sig(rel, 2)};
  });

  criterion(5, "universal Jacobi form, index 1 and nullity 3", 60.0, [] {
    std::mt19937_64 rng(20240501);
    std::uniform_real_distribution<double> la(std::log(0.03), std::log(5.0)), uh(0.0, 3.0);
    double worst = 0.0;
    int bad = 0;
    for (int s = 0; s < 20; ++s) {
      const double a = std::exp(la(rng)), H = uh(rng);
      const auto d = fundamental_data(BergerParam(a), H);
      for (int i = 0; i <= 400; ++i) {
        const double x = -20.0 + 0.1 * i;
        worst = std::max(worst, std::abs(jacobi_potential(d, x) - jacobi_potential_flat(x)));
      }
      const auto r = jacobi_spectrum(BergerParam(a), H);
      if (r.negatives != 1 || r.zeros != 3) ++bad;
    }
    return Outcome{worst < 1e-12 && bad == 0,
                   "max pointwise deviation " + io::sig(worst, 2) + ", samples with index/nullity != (1,3): " +
                       std::to_string(bad)};
  });

  criterion(6, "Koiso closed form against quadrature and stability regions", 0.0, [] {
    const double a0 = alpha0();
    double worst = 0.0;
    int sign_mismatch = 0;
    for (int i = 0; i < 20; ++i) {
      // alpha from 0.02 to 4 (geometric), both branches
      const double a = 0.02 * std::pow(200.0, i / 19.0);
      const BergerParam p(a);
      const double Hb = a < a0 ? stability_threshold_H(p, a0) : 0.0;
      for (int j = 0; j < 20; ++j) {
        const double H = 4.0 * j / 19.0;
        const double closed = koiso_integral(p, H);
        const double numeric = koiso_integral_quadrature(p, H);
        const double kappa = H * H + 1.0;
        worst = std::max(worst, std::abs(closed - numeric) / std::max(std::abs(closed), kPi / (2.0 * kappa * kappa)));
        const bool predicted_stable = a >= a0 || H >= Hb;
        if ((closed >= 0.0) != predicted_stable) ++sign_mismatch;
      }
    }
    int boundary_bad = 0;
    for (int i = 1; i <= 10; ++i) {
      const BergerParam p(a0 * i / 11.0);
      const double H = stability_threshold_H(p, a0);
      if (!(koiso_integral(p, H - 1e-6) < 0.0 && koiso_integral(p, H + 1e-6) > 0.0)) ++boundary_bad;
    }
    return Outcome{worst < 1e-6 && sign_mismatch == 0 && boundary_bad == 0,
                   "max relative deviation " + io::sig(worst, 2) + ", sign mismatches " + std::to_string(sign_mismatch) +
                       ", boundary flips missing " + std::to_string(boundary_bad)};
  });

  criterion(7, "flat torus spectrum and stability threshold", 0.0, [] {
    double worst = 0.0;
    int rule_bad = 0, points = 0;
    for (int i = 0; i < 30; ++i) {
      const double a = i == 29 ? 1.0 / 3.0 : 0.02 * std::pow(150.0, i / 28.0);
      const BergerParam p(a);
      std::vector<double> Hs;
      for (int j = 0; j < 29; ++j) Hs.push_back(4.0 * j / 28.0);
      if (a <= 1.0 / 3.0) Hs.push_back(torus_stability_threshold(p));
      else Hs.push_back(5.0);
      for (double H : Hs) {
        ++points;
        const double lam = torus_spectrum_auto(torus_data(p, H)).lambda1;
        worst = std::max(worst, std::abs(lam - lambda1_closed_form(p, H)));
        const bool expect_stable = a <= 1.0 / 3.0 && H <= torus_stability_threshold(p);
        if (classify_torus(p, H).stable != expect_stable) ++rule_bad;
      }
    }
    return Outcome{worst < 1e-10 && rule_bad == 0,
                   std::to_string(points) + " points, max |lambda1 - closed form| " + io::sig(worst, 2) +
                       ", verdicts off the threshold rule " + std::to_string(rule_bad)};
  });

  criterion(8, "integrability conditions and Gauss-Bonnet", 0.0, [] {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> la(std::log(0.05), std::log(4.0)), uh(0.0, 3.0);
    double ratio_lo = 1e300, ratio_hi = 0.0, gb = 0.0;
    for (int s = 0; s < 10; ++s) {
      const auto d = fundamental_data(BergerParam(std::exp(la(rng))), uh(rng));
      const auto c = integrability_residual(d, -5.0, 5.0, 401);
      const auto f = integrability_residual(d, -5.0, 5.0, 801);
      for (double r : {c.codazzi_p / f.codazzi_p, c.killing_A / f.killing_A, c.gradient_C / f.gradient_C}) {
        if (std::isnan(r)) continue;
        ratio_lo = std::min(ratio_lo, r);
        ratio_hi = std::max(ratio_hi, r);
      }
      const double total = 2.0 * kPi *
                           quad::integrate_line([&](double x) { return gauss_curvature(d, x) * d.conf(x); },
                                                kMeridianCutoff, {1e-12, 1e-300, 4000}, "gauss_bonnet");
      gb = std::max(gb, std::abs(total - 4.0 * kPi) / (4.0 * kPi));
    }
    return Outcome{ratio_lo > 3.8 && ratio_hi < 4.2 && gb < 1e-6,
                   "refinement ratios in [" + io::sig(ratio_lo, 4) + ", " + io::sig(ratio_hi, 4) +
                       "], Gauss-Bonnet rel. dev. " + io::sig(gb, 2)};
  });

  criterion(9, "meridian reconstruction and embeddedness", 0.0, [] {
    const double pairs[5][2] = {{0.5, 1.0}, {0.1, 0.0}, {2.0, 0.7}, {0.25, 2.0}, {1.0, 1.0}};
    double metric = 0.0, cres = 0.0;
    for (const auto& ah : pairs) {
      const auto m = reconstruct_meridian(BergerParam(ah[0]), ah[1], 8.0, 4096);
      metric = std::max(metric, m.max_metric_residual());
      cres = std::max(cres, m.max_c_residual());
    }
    double planar = 0.0;
    bool round_embedded = true;
    for (double H : {0.0, 1.0, 3.0}) {
      const auto m = reconstruct_meridian(BergerParam(1.0), H, 10.0, 4096);
      Eigen::MatrixXd P(m.points.size(), 4);
      for (std::size_t i = 0; i < m.points.size(); ++i) {
        const auto c = m.points[i].quaternion().components();
        for (int k = 0; k < 4; ++k) P(i, k) = c[k];
      }
      P.rowwise() -= P.colwise().mean();
      const Eigen::VectorXd s = Eigen::JacobiSVD<Eigen::MatrixXd>(P).singularValues();
      planar = std::max(planar, s(2) / s(0));
      round_embedded = round_embedded && is_embedded(m).embedded();
    }
    const auto small = sphere_embeddedness(BergerParam(0.03), 0.5);
    const auto minimal = sphere_embeddedness(BergerParam(0.05), 0.0);
    const bool ok = metric < 1e-4 && cres < 1e-4 && planar < 1e-6 && round_embedded &&
                    small.verdict == EmbeddingVerdict::NotEmbedded;
    return Outcome{ok, "metric residual " + io::sig(metric, 2) + ", C residual " + io::sig(cres, 2) +
                           ", round planarity " + io::sig(planar, 2) + ", round spheres " +
                           (round_embedded ? "embedded" : "NOT embedded") + ", (0.03, 0.5) " + to_string(small.verdict) +
                           " with " + std::to_string(small.crossings) + " crossings; info: (0.05, 0) " +
                           to_string(minimal.verdict)};
  });

  criterion(10, "isoperimetric oracle and sphere candidates", 0.0, [] {
    const auto prof = sphere_profile(BergerParam(1.0), 20.0, 200);
    double worst = 0.0;
    for (std::size_t i = 0; i < prof.H.size(); ++i) {
      const double r = std::atan2(1.0, prof.H[i]);
      worst = std::max(worst, std::abs(prof.area[i] - 4.0 * kPi * std::sin(r) * std::sin(r)));
      worst = std::max(worst, std::abs(prof.volume[i] - kPi * (2.0 * r - std::sin(2.0 * r))));
    }
    int not_sphere = 0, total = 0;
    for (double a : {1.0 / 3.0, 0.6, 0.95}) {
      const BergerParam p(a);
      const double half = 0.5 * total_volume(p);
      for (int k = 1; k <= 20; ++k) {
        ++total;
        if (isoperimetric_candidate(p, half * k / 20.0).family != Family::Sphere) ++not_sphere;
      }
    }
    return Outcome{worst < 1e-5 && not_sphere == 0,
                   "round profile max deviation " + io::sig(worst, 2) + ", non-sphere candidates " +
                       std::to_string(not_sphere) + " of " + std::to_string(total)};
  });

  criterion(11, "harmonic pair integrand sign", 0.0, [] {
    int points = 0, zeros = 0;
    double max_other = -1e300;
    bool zero_at_clifford = false;
    for (int i = 0; i <= 40; ++i) {
      const double a = 1.0 / 3.0 + (2.0 / 3.0) * i / 41.0;
      const BergerParam p(a);
      for (int j = 0; j <= 48; ++j) {
        const double H = 3.0 * j / 48.0;
        for (int k = 0; k <= 50; ++k) {
          const double c = -1.0 + 2.0 * k / 50.0;
          const double v = harmonic_pair_integrand(p, H, c);
          ++points;
          if (std::abs(v) <= 1e-12) {
            ++zeros;
            zero_at_clifford = i == 0 && j == 0 && k == 25;
          } else {
            max_other = std::max(max_other, v);
          }
        }
      }
    }
    return Outcome{zeros == 1 && zero_at_clifford && max_other < 0.0,
                   std::to_string(points) + " points, zeros " + std::to_string(zeros) +
                       (zero_at_clifford ? " at (1/3, 0, 0)" : "") + ", max elsewhere " + io::sig(max_other, 3)};
  });

  criterion(12, "determinism gate", 0.0, [&] {
    bool self_ok = true;
    for (const auto& c : run_selftest()) self_ok = self_ok && c.passed;
    if (cli.empty()) return Outcome{false, std::string("selftest ") + (self_ok ? "passed" : "FAILED") + "; no CLI path given"};
    const fs::path work = fs::temp_directory_path() / ("berger_acceptance_" + std::to_string(::getpid()));
    fs::remove_all(work);
    const std::vector<std::string> cmds = {"regions --n 40 --format csv+svg", "profiles --n 60 --format csv+svg",
                                           "torus --alpha 0.3 --H 0.2", "embeddedness --alpha-n 2 --H-n 2"};
    bool runs_ok = true;
    for (const char* run : {"a", "b"}) {
      for (const auto& c : cmds) {
        const std::string cmd = "\"" + cli + "\" " + c + " --out \"" + (work / run).string() + "\" > /dev/null";
        runs_ok = runs_ok && std::system(cmd.c_str()) == 0;
      }
    }
    int files = 0, differ = 0;
    if (runs_ok) {
      for (const auto& e : fs::directory_iterator(work / "a")) {
        ++files;
        if (read_file(e.path()) != read_file(work / "b" / e.path().filename())) ++differ;
      }
    }
    fs::remove_all(work);
    return Outcome{self_ok && runs_ok && files > 0 && differ == 0,
                   std::string("selftest ") + (self_ok ? "passed" : "FAILED") + ", " + std::to_string(files) +
                       " files compared, " + std::to_string(differ) + " differ"};
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAILED" : "ALL PASSED", failures);
  return failures ? 1 : 0;
}
