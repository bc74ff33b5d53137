#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "berger/berger.hpp"
#include "berger/selftest.hpp"

namespace fs = std::filesystem;
using namespace berger;

namespace {

struct Output {
  std::string dir;
  std::string format{"csv"};

  bool svg() const { return format == "csv+svg"; }

  void write(const std::string& name, const std::string& body) const {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw ContractError("cannot create output directory '" + dir + "': " + ec.message());
    const fs::path path = fs::path(dir) / name;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ContractError("cannot open '" + path.string() + "' for writing");
    f << body;
    std::cout << "wrote " << path.string() << "\n";
  }
};

std::string default_out_dir() {
  const char* env = std::getenv("BERGER_OUT_DIR");
  return env && *env ? env : "berger_out";
}

void print_verdict(const StabilityVerdict& v) {
  std::cout << "verdict = " << (v.stable ? "stable" : "unstable") << "\n"
            << "criterion = " << to_string(v.criterion) << "\n"
            << "margin = " << io::num(v.margin) << "\n";
}

int cmd_constants() {
  const CriticalConstants c = critical_constants();
  std::cout << "alpha0 = " << io::sig(alpha0(), 12) << "\n"
            << "alpha1 = " << io::sig(c.alpha1, 12) << "\n"
            << "t0 = " << io::sig(c.t0, 12) << "\n"
            << "alpha_hyperbolic = " << io::sig(c.alpha_hyperbolic, 12) << "\n"
            << "crossing_alpha = " << io::sig(crossing_alpha(), 12) << "\n"
            << "# area bound below 1/3 is stated with alpha1; sphere stability threshold is alpha0\n";
  return 0;
}

int cmd_sphere(double alpha, double H, int k_max, double X, int n, const Output& out, bool meridian) {
  const BergerParam p(alpha);
  std::cout << "alpha = " << io::num(alpha) << "\nH = " << io::num(H) << "\n";
  print_verdict(classify_sphere(p, H));
  std::cout << "area = " << io::num(area_sphere(p, H)) << "\n";
  const SpectrumResult r = jacobi_spectrum(p, H, k_max, X, n);
  std::cout << "index = " << r.negatives << "\nnullity = " << r.zeros << "\n"
            << "spectral_gap = " << io::num(r.gap) << "\n";
  const std::string tag = "sphere_a" + io::num(alpha) + "_H" + io::num(H);
  out.write(tag + "_spectrum.csv", spectrum_csv(r));
  if (meridian) {
    const MeridianProfile m = reconstruct_meridian(p, H, 10.0, 4096);
    out.write(tag + "_meridian.csv", meridian_csv(m));
    const EmbeddednessReport e = is_embedded(m);
    std::cout << "embeddedness = " << to_string(e.verdict) << "\n";
    if (out.svg()) {
      const auto curve = orbit_space_curve(m);
      io::Series s{"orbit space", {}, {}};
      for (const auto& pt : curve) {
        s.x.push_back(pt.x);
        s.y.push_back(pt.y);
      }
      out.write(tag + "_meridian.svg", io::svg_plot("meridian in orbit space", "x", "y", {s}));
    }
  }
  return 0;
}

int cmd_torus(double alpha, double H, const Output& out) {
  const BergerParam p(alpha);
  std::cout << "alpha = " << io::num(alpha) << "\nH = " << io::num(H) << "\n";
  print_verdict(classify_torus(p, H));
  const TorusData t = torus_data(p, H);
  const LatticeSpectrum s = torus_spectrum_auto(t);
  std::cout << "lambda1 = " << io::num(s.lambda1) << "\n"
            << "lambda1_closed_form = " << io::num(lambda1_closed_form(p, H)) << "\n"
            << "jacobi_constant = " << io::num(4.0 * (H * H + 1.0)) << "\n";
  const AreaVolume av = torus_area_volume(p, H);
  std::cout << "area = " << io::num(av.area) << "\nvolume = " << io::num(av.volume) << "\n";
  io::CsvTable csv({"lambda (1)", "multiplicity (1)"});
  for (const auto& [v, m] : s.distinct()) csv.add_row({v, static_cast<double>(m)});
  out.write("torus_a" + io::num(alpha) + "_H" + io::num(H) + "_spectrum.csv", csv.str());
  return 0;
}

int cmd_regions(int n, const Output& out) {
  const double a0 = alpha0();
  std::vector<double> alphas;
  for (int i = 1; i < n; ++i) alphas.push_back(a0 * i / n);
  io::CsvTable sphere({"alpha (1)", "H_of_alpha (1)"});
  io::Series s2{"H(alpha)", {}, {}};
  for (const auto& b : sphere_stability_boundary(alphas)) {
    sphere.add_row({b.alpha, b.H});
    s2.x.push_back(b.alpha);
    s2.y.push_back(b.H);
  }
  out.write("sphere_stability_boundary.csv", sphere.str());

  io::CsvTable torus({"alpha (1)", "H_threshold (1)"});
  io::Series s3{"H*(alpha)", {}, {}};
  for (int i = 1; i <= n; ++i) {
    const double a = (1.0 / 3.0) * i / n;
    const double h = torus_stability_threshold(BergerParam(a));
    torus.add_row({a, h});
    s3.x.push_back(a);
    s3.y.push_back(h);
  }
  out.write("torus_stability_threshold.csv", torus.str());
  out.write("alpha_roots.csv", alpha_root_csv(n));
  if (out.svg()) {
    out.write("sphere_stability_boundary.svg", io::svg_plot("stable CMC spheres lie above the curve", "alpha", "H", {s2}));
    out.write("torus_stability_threshold.svg", io::svg_plot("stable flat tori lie below the curve", "alpha", "H", {s3}));
  }
  return 0;
}

int cmd_embeddedness(double a_min, double a_max, int na, double H_max, int nH, double X, int n, const Output& out) {
  if (!(a_min > 0.0 && a_max >= a_min)) throw ContractError("embeddedness: need 0 < alpha-min <= alpha-max");
  if (na < 1 || nH < 1) throw ContractError("embeddedness: grid counts must be >= 1");
  io::CsvTable csv({"alpha (1)", "H (1)", "verdict", "margin (1)", "crossings (1)"});
  int counts[3] = {0, 0, 0};
  for (int i = 0; i < na; ++i) {
    const double a = na == 1 ? a_min : a_min + (a_max - a_min) * i / (na - 1);
    for (int j = 0; j < nH; ++j) {
      const double H = nH == 1 ? 0.0 : H_max * j / (nH - 1);
      const EmbeddednessReport r = sphere_embeddedness(BergerParam(a), H, X, n);
      ++counts[static_cast<int>(r.verdict)];
      csv.add_cells({io::num(a), io::num(H), to_string(r.verdict), io::num(r.margin), std::to_string(r.crossings)});
    }
  }
  out.write("embeddedness_scan.csv", csv.str());
  std::cout << "embedded = " << counts[0] << "\nnot_embedded = " << counts[1] << "\nundecided = " << counts[2] << "\n";
  return 0;
}

int cmd_profiles(double H_max, int n, const Output& out) {
  const std::vector<std::pair<std::string, double>> panels = {
      {"0.25", 0.25}, {"crossing", crossing_alpha()}, {"0.14", 0.14}, {"0.06", 0.06}};
  for (const auto& [name, a] : panels) {
    const BergerParam p(a);
    const auto sp = sphere_profile(p, H_max, n);
    const auto tp = torus_profile(p, H_max, n);
    out.write("profile_alpha_" + name + ".csv", profile_csv({sp, tp}));
    std::cout << "alpha = " << io::sig(a, 12) << " sphere_volume_monotone = " << (sp.volume_monotone ? "yes" : "no");
    if (!sp.volume_monotone) std::cout << " (first increase at H = " << io::num(sp.H[sp.first_increase]) << ")";
    std::cout << "\n";
    if (out.svg()) {
      out.write("profile_alpha_" + name + ".svg",
                io::svg_plot("area against volume, alpha = " + io::sig(a, 6), "volume", "area",
                             {{"spheres", sp.volume, sp.area}, {"flat tori", tp.volume, tp.area}}));
    }
  }
  return 0;
}

int cmd_selftest() {
  bool all = true;
  for (const auto& c : run_selftest()) {
    std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "\n";
    all = all && c.passed;
  }
  std::cout << (all ? "selftest passed" : "selftest FAILED") << "\n";
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CMC sphere and flat torus stability in Berger spheres"};
  app.require_subcommand(1);
  Output out;
  out.dir = default_out_dir();
  auto add_out = [&](CLI::App* sub) {
    sub->add_option("--out", out.dir, "output directory (default $BERGER_OUT_DIR or ./berger_out)");
    sub->add_option("--format", out.format, "csv or csv+svg")->check(CLI::IsMember({"csv", "csv+svg"}));
  };
  auto positive = CLI::PositiveNumber;

  auto* constants = app.add_subcommand("constants", "critical constants, one per line");

  double alpha = 1.0, H = 0.0, X = 15.0;
  int k_max = 2, n = 3000;
  bool meridian = false;
  auto* sphere = app.add_subcommand("sphere", "classify S_alpha(H), Jacobi spectrum and area");
  sphere->add_option("--alpha", alpha)->required()->check(positive);
  sphere->add_option("--H", H)->required()->check(CLI::NonNegativeNumber);
  sphere->add_option("--kmax", k_max, "highest Fourier mode")->check(CLI::NonNegativeNumber);
  sphere->add_option("--X", X, "truncation of the line")->check(positive);
  sphere->add_option("--n", n, "finite elements")->check(positive);
  sphere->add_flag("--meridian", meridian, "also reconstruct the meridian");
  add_out(sphere);

  auto* torus = app.add_subcommand("torus", "classify T_alpha(H) and dump its spectrum");
  torus->add_option("--alpha", alpha)->required()->check(positive);
  torus->add_option("--H", H)->required()->check(CLI::NonNegativeNumber);
  add_out(torus);

  int region_n = 200;
  auto* regions = app.add_subcommand("regions", "stability boundary curves and region roots");
  regions->add_option("--n", region_n, "samples per curve")->check(CLI::Range(2, 1000000));
  add_out(regions);

  double a_min = 0.02, a_max = 1.0, H_max = 3.0, ext = 10.0;
  int na = 10, nH = 7, npts = 4096;
  auto* embed = app.add_subcommand("embeddedness", "embeddedness scan over (alpha, H)");
  embed->add_option("--alpha-min", a_min)->check(positive);
  embed->add_option("--alpha-max", a_max)->check(positive);
  embed->add_option("--alpha-n", na);
  embed->add_option("--H-max", H_max)->check(CLI::NonNegativeNumber);
  embed->add_option("--H-n", nH);
  embed->add_option("--X", ext, "meridian half-length")->check(positive);
  embed->add_option("--n", npts, "meridian samples")->check(positive);
  add_out(embed);

  double prof_H = 8.0;
  int prof_n = 120;
  auto* profiles = app.add_subcommand("profiles", "area/volume profiles for the four reference alphas");
  profiles->add_option("--H-max", prof_H)->check(positive);
  profiles->add_option("--n", prof_n)->check(positive);
  add_out(profiles);

  auto* selftest = app.add_subcommand("selftest", "invariant suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*constants) return cmd_constants();
    if (*sphere) return cmd_sphere(alpha, H, k_max, X, n, out, meridian);
    if (*torus) return cmd_torus(alpha, H, out);
    if (*regions) return cmd_regions(region_n, out);
    if (*embed) return cmd_embeddedness(a_min, a_max, na, H_max, nH, ext, npts, out);
    if (*profiles) return cmd_profiles(prof_H, prof_n, out);
    if (*selftest) return cmd_selftest();
  } catch (const ContractError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "error: invariant " << e.invariant() << " failed: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
