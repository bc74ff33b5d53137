#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <vector>

#include "berger/stability.hpp"

using namespace berger;

namespace {

double quadratic(const std::vector<double>& d, const std::vector<double>& o, const std::vector<double>& v) {
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    s += d[i] * v[i] * v[i];
    if (i + 1 < v.size()) s += 2.0 * o[i] * v[i] * v[i + 1];
  }
  return s;
}

double lowest_mode_eigenvalue(const BergerParam& p, double H, int k, int n) {
  const auto pencil = assemble_jacobi_pencil(fundamental_data(p, H), k, 15.0, n);
  return smallest_eigenvalues(pencil, 1, -50.0, 50.0)[0];
}

}  // namespace

TEST(JacobiPotential, FlatExamples) {
  EXPECT_DOUBLE_EQ(jacobi_potential_flat(0.0), 2.0);
  EXPECT_NEAR(jacobi_potential_flat(1.0), 0.83995, 1e-5);
}

TEST(JacobiPotential, UniversalAcrossFamily) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> ux(-8.0, 8.0);
  const double pairs[3][2] = {{0.1, 0.0}, {1.0, 2.0}, {3.0, 0.5}};
  for (const auto& ah : pairs) {
    const auto d = fundamental_data(BergerParam(ah[0]), ah[1]);
    for (int i = 0; i < 100; ++i) {
      const double x = ux(rng);
      EXPECT_NEAR(jacobi_potential(d, x), jacobi_potential_flat(x), 1e-12);
    }
  }
}

TEST(KoisoSolution, Examples) {
  EXPECT_NEAR(koiso_solution(BergerParam(1.0), 0.7, 0.3), 1.0 / (2.0 * 1.49), 1e-15);
  EXPECT_NEAR(koiso_solution(BergerParam(1.0 / 3.0), 0.0, 0.0), 0.5, 1e-15);
}

TEST(KoisoSolution, SolvesJacobiEquation) {
  const BergerParam p(0.5);
  const double H = 1.0;
  const auto d = fundamental_data(p, H);
  const int n = 2000;
  const double h = 20.0 / n;
  double worst = 0.0;
  for (int i = 1; i < n; ++i) {
    const double x = -10.0 + i * h;
    const double f = koiso_solution(p, H, x);
    const double fpp = (koiso_solution(p, H, x + h) - 2.0 * f + koiso_solution(p, H, x - h)) / (h * h);
    worst = std::max(worst, std::abs(fpp + jacobi_potential_flat(x) * f - d.conf(x)));
  }
  EXPECT_LT(worst, 1e-5);
}

TEST(KoisoSolution, ContinuousAcrossRoundMetric) {
  for (double H : {0.0, 1.0})
    for (double x : {-2.0, 0.5}) {
      const double lo = koiso_solution(BergerParam(1.0 - 1e-7), H, x);
      const double hi = koiso_solution(BergerParam(1.0 + 1e-7), H, x);
      EXPECT_NEAR(lo, hi, 1e-7);
    }
}

TEST(KoisoIntegral, Examples) {
  const double r = std::sqrt(2.0 / 3.0);
  const double expect = kPi / 2.0 * (3.0 + (3.0 * (1.0 / 3.0) - 2.0) / r * std::atanh(r));
  EXPECT_NEAR(koiso_integral(BergerParam(1.0 / 3.0), 0.0), expect, 1e-12);
  EXPECT_NEAR(expect, 2.5073, 1e-4);
  EXPECT_NEAR(koiso_integral_quadrature(BergerParam(1.0 / 3.0), 0.0), expect, 1e-9);
  EXPECT_LT(koiso_integral(BergerParam(0.05), 0.0), 0.0);
}

TEST(KoisoIntegral, PositiveAboveRoundMetric) {
  for (double a : {1.0001, 1.5, 3.0, 10.0, 100.0})
    for (double H : {0.0, 0.1, 1.0, 5.0}) EXPECT_GT(koiso_integral(BergerParam(a), H), 0.0);
}

TEST(KoisoIntegral, RoundLimit) {
  for (double H : {0.0, 2.0}) {
    const double k = H * H + 1.0;
    EXPECT_NEAR(koiso_integral(BergerParam(1.0), H), 2.0 * kPi / (k * k), 1e-14);
    EXPECT_NEAR(koiso_integral(BergerParam(1.0 + 1e-9), H), 2.0 * kPi / (k * k), 1e-8);
    EXPECT_NEAR(koiso_integral(BergerParam(1.0 - 1e-9), H), 2.0 * kPi / (k * k), 1e-8);
  }
}

TEST(KoisoIntegral, CheckedAgreesWithQuadrature) {
  for (double a : {0.02, 0.121, 0.5, 0.999, 1.0, 1.001, 7.0})
    for (double H : {0.0, 0.05, 1.0, 4.0}) EXPECT_NO_THROW(koiso_integral_checked(BergerParam(a), H));
}

TEST(ClassifySphere, Examples) {
  EXPECT_TRUE(classify_sphere(BergerParam(2.0), 0.0).stable);
  const auto v = classify_sphere(BergerParam(0.05), 0.0);
  EXPECT_FALSE(v.stable);
  EXPECT_EQ(v.criterion, Criterion::KoisoIntegral);
  EXPECT_EQ(v.margin, koiso_integral(BergerParam(0.05), 0.0));
  EXPECT_TRUE(classify_sphere(BergerParam(0.05), 5.0).stable);
  EXPECT_THROW(classify_sphere(BergerParam(0.5), -1.0), ContractError);
}

TEST(Alpha0, RootOfMinimalSphereIntegral) {
  const double a0 = alpha0();
  EXPECT_NEAR(a0, 0.121, 5e-4);
  EXPECT_NEAR(koiso_integral(BergerParam(a0), 0.0), 0.0, 1e-9);
  EXPECT_GT(koiso_integral(BergerParam(a0 + 1e-3), 0.0), 0.0);
  EXPECT_LT(koiso_integral(BergerParam(a0 - 1e-3), 0.0), 0.0);
}

TEST(StabilityBoundary, MeetsAxisAtAlpha0) {
  const double a0 = alpha0();
  EXPECT_LT(stability_threshold_H(BergerParam(a0 - 1e-6), a0), 1e-2);
  EXPECT_THROW(stability_threshold_H(BergerParam(a0), a0), ContractError);
  EXPECT_THROW(stability_threshold_H(BergerParam(0.5), a0), ContractError);
}

TEST(StabilityBoundary, VerdictFlipsAcrossCurve) {
  const double H = stability_threshold_H(BergerParam(0.05), alpha0());
  EXPECT_GT(H, 0.0);
  EXPECT_FALSE(classify_sphere(BergerParam(0.05), H - 1e-6).stable);
  EXPECT_TRUE(classify_sphere(BergerParam(0.05), H + 1e-6).stable);
}

TEST(StabilityBoundary, DecreasingInAlpha) {
  std::vector<double> alphas;
  for (int i = 1; i < 40; ++i) alphas.push_back(alpha0() * i / 40.0);
  const auto b = sphere_stability_boundary(alphas);
  for (std::size_t i = 1; i < b.size(); ++i) EXPECT_LT(b[i].H, b[i - 1].H);
}

TEST(JacobiSpectrum, IndexOneNullityThree) {
  for (double a : {0.05, 0.3, 1.0, 2.0})
    for (double H : {0.0, 1.7}) {
      const auto r = jacobi_spectrum(BergerParam(a), H);
      EXPECT_EQ(r.negatives, 1) << a << " " << H;
      EXPECT_EQ(r.zeros, 3) << a << " " << H;
      EXPECT_LT(r.boundary_shift, 1e-4);
    }
}

TEST(JacobiSpectrum, SharedQuadraticForm) {
  const auto a = fundamental_data(BergerParam(0.3), 0.0);
  const auto b = fundamental_data(BergerParam(2.0), 1.7);
  for (int k : {0, 1, 2}) {
    const auto pa = assemble_jacobi_pencil(a, k, 12.0, 800);
    const auto pb = assemble_jacobi_pencil(b, k, 12.0, 800);
    EXPECT_EQ(pa.k_diag, pb.k_diag);
    EXPECT_EQ(pa.k_off, pb.k_off);
    EXPECT_NE(pa.m_diag, pb.m_diag);
  }
  const auto ra = jacobi_spectrum(BergerParam(0.3), 0.0);
  const auto rb = jacobi_spectrum(BergerParam(2.0), 1.7);
  EXPECT_EQ(ra.negatives, rb.negatives);
  EXPECT_EQ(ra.zeros, rb.zeros);
}

TEST(JacobiSpectrum, TanhIsZeroMode) {
  const auto d = fundamental_data(BergerParam(0.4), 0.9);
  const int n = 20000;
  const double X = 15.0;
  const auto p = assemble_jacobi_pencil(d, 0, X, n);
  std::vector<double> v(n + 1);
  for (int i = 0; i <= n; ++i) v[i] = std::tanh(-X + 2.0 * X * i / n);
  EXPECT_LT(std::abs(quadratic(p.k_diag, p.k_off, v) / quadratic(p.m_diag, p.m_off, v)), 1e-6);
}

TEST(JacobiSpectrum, SturmMatchesDenseSolver) {
  const auto d = fundamental_data(BergerParam(0.6), 0.4);
  for (int k : {0, 1}) {
    const auto p = assemble_jacobi_pencil(d, k, 4.0, 200);
    const int m = static_cast<int>(p.size());
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(m, m), M = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      K(i, i) = p.k_diag[i];
      M(i, i) = p.m_diag[i];
      if (i + 1 < m) {
        K(i, i + 1) = K(i + 1, i) = p.k_off[i];
        M(i, i + 1) = M(i + 1, i) = p.m_off[i];
      }
    }
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(K, M);
    const auto sturm = smallest_eigenvalues(p, 5, -100.0, 100.0);
    ASSERT_EQ(sturm.size(), 5u);
    for (int j = 0; j < 5; ++j) EXPECT_NEAR(sturm[j], es.eigenvalues()(j), 1e-8 * std::max(1.0, std::abs(sturm[j])));
  }
}

TEST(JacobiSpectrum, SecondOrderConvergence) {
  const BergerParam p(0.5);
  const double e1 = lowest_mode_eigenvalue(p, 1.0, 0, 750);
  const double e2 = lowest_mode_eigenvalue(p, 1.0, 0, 1500);
  const double e3 = lowest_mode_eigenvalue(p, 1.0, 0, 3000);
  EXPECT_NEAR((e1 - e2) / (e2 - e3), 4.0, 0.3);
}

TEST(JacobiSpectrum, ContractChecks) {
  EXPECT_THROW(jacobi_spectrum(BergerParam(0.5), 1.0, 2, 15.0, 10), ContractError);
  EXPECT_THROW(jacobi_spectrum(BergerParam(0.5), 1.0, 0), ContractError);
}

TEST(JacobiSpectrum, CsvHeader) {
  const auto csv = spectrum_csv(jacobi_spectrum(BergerParam(1.0), 0.0));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "k (1),lambda (1)");
}
