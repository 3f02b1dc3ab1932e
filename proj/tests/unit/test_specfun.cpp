#include <doctest.h>

#include <cmath>
#include <complex>

#include "../oracles.hpp"
#include "bertrand/error.hpp"
#include "bertrand/specfun.hpp"

using namespace bertrand;
using namespace bertrand::specfun;
using doctest::Approx;

TEST_SUITE("specfun") {

TEST_CASE("gegenbauer low degrees") {
  CHECK(gegenbauer(0, 1.5, 0.7) == 1.0);
  CHECK(gegenbauer(1, 2.0, 0.3) == Approx(1.2).epsilon(1e-15));
  CHECK(std::fabs(gegenbauer(2, 1.0, 0.5)) < 1e-15);
}

TEST_CASE("gegenbauer agrees with the explicit sum") {
  double worst = 0.0;
  for (double lambda : {0.5, 1.0, 1.5, 2.5, -0.25})
    for (int k = 0; k <= 20; ++k)
      for (int i = 0; i <= 40; ++i) {
        const double x = -1.0 + i * 0.05;
        double mag = 0.0;
        const double ref = oracle::gegenbauer_sum(k, lambda, x, &mag);
        worst = std::max(worst, std::fabs(gegenbauer(k, lambda, x) - ref) / std::max(1.0, mag));
      }
  CHECK(worst < 1e-13);
}

TEST_CASE("gegenbauer parity is exact") {
  for (double lambda : {0.5, 1.0, 1.5, 2.5})
    for (int k = 0; k <= 20; ++k)
      for (double x : {0.1, 0.37, 0.8, 1.0}) {
        const double sgn = k % 2 ? -1.0 : 1.0;
        CHECK(std::fabs(gegenbauer(k, lambda, -x) - sgn * gegenbauer(k, lambda, x)) <= 1e-12);
      }
}

TEST_CASE("gegenbauer satisfies its differential equation") {
  double worst = 0.0;
  for (double lambda : {0.5, 1.0, 1.5, 2.5})
    for (int k = 0; k <= 20; ++k)
      for (int i = 0; i <= 100; ++i) worst = std::max(worst, gegenbauer_ode_residual(k, lambda, -1.0 + 0.02 * i));
  CHECK(worst <= 1e-6);
}

TEST_CASE("gegenbauer rejects bad arguments") {
  CHECK_THROWS_AS(gegenbauer(-1, 1.0, 0.2), DomainError);
  CHECK_THROWS_AS(gegenbauer(2, 0.0, 0.2), DomainError);
  CHECK_THROWS_AS(gegenbauer(2, -0.5, 0.2), DomainError);
  CHECK_THROWS_AS(gegenbauer(2, 1.0, 1.5), DomainError);
}

TEST_CASE("addition formula") {
  CHECK(gegenbauer_addition_check(0, 1.0, 1.0, 0.4) == Approx(0.0));
  CHECK(gegenbauer_addition_check(1, 1.0, 2.0, 0.5) <= 1e-15);
  CHECK(gegenbauer_addition_check(5, 0.5, 1.5, -0.3) <= 1e-10);
  double worst = 0.0;
  for (int n = 0; n <= 20; ++n)
    for (double x : {-0.9, -0.3, 0.0, 0.45, 0.99})
      worst = std::max(worst, gegenbauer_addition_check(n, 0.75, 1.25, x) / std::max(1.0, std::fabs(gegenbauer(n, 2.0, x))));
  CHECK(worst <= 1e-10);
}

TEST_CASE("associated Legendre values") {
  CHECK(assoc_legendre(0, 0, 0.9) == 1.0);
  CHECK(assoc_legendre(1, 0, 0.4) == Approx(0.4).epsilon(1e-15));
  CHECK(assoc_legendre(2, 1, 0.5) == Approx(3.0 * 0.5 * std::sqrt(0.75)).epsilon(1e-14));
  CHECK_THROWS_AS(assoc_legendre(2, 3, 0.1), DomainError);
  CHECK_THROWS_AS(assoc_legendre(2, 1, 1.01), DomainError);
}

TEST_CASE("associated Legendre: recurrence, Gegenbauer route and Rodrigues agree") {
  double gap_routes = 0.0, gap_rodrigues = 0.0;
  for (int l = 0; l <= 10; ++l)
    for (int m = 0; m <= l; ++m)
      for (int i = 0; i <= 20; ++i) {
        const double x = -1.0 + 0.1 * i;
        const double a = assoc_legendre(l, m, x);
        const double scale = std::max(1.0, std::fabs(a));
        gap_routes = std::max(gap_routes, std::fabs(a - assoc_legendre_via_gegenbauer(l, m, x)) / scale);
        gap_rodrigues = std::max(gap_rodrigues, std::fabs(a - oracle::assoc_legendre_rodrigues(l, m, x)) / scale);
      }
  CHECK(gap_routes <= 1e-10);
  CHECK(gap_rodrigues <= 1e-9);
}

TEST_CASE("spherical harmonics") {
  CHECK(std::abs(spherical_harmonic(0, 0, 0.4, 1.1)) == Approx(1.0 / std::sqrt(4.0 * oracle::pi)).epsilon(1e-14));
  CHECK(spherical_harmonic(1, 0, 0.0, 0.0).real() == Approx(std::sqrt(3.0 / (4.0 * oracle::pi))).epsilon(1e-14));

  // product rule: Simpson in theta, trapezoid (exact for trigonometric polynomials) in phi
  auto inner = [](int l1, int m1, int l2, int m2) {
    std::complex<double> acc = 0.0;
    const int nphi = 64;
    for (int j = 0; j < nphi; ++j) {
      const double phi = 2.0 * oracle::pi * j / nphi;
      const double re = oracle::simpson(
          [&](double t) { return (std::conj(spherical_harmonic(l1, m1, t, phi)) * spherical_harmonic(l2, m2, t, phi)).real() * std::sin(t); },
          0.0, oracle::pi, 2000);
      const double im = oracle::simpson(
          [&](double t) { return (std::conj(spherical_harmonic(l1, m1, t, phi)) * spherical_harmonic(l2, m2, t, phi)).imag() * std::sin(t); },
          0.0, oracle::pi, 2000);
      acc += std::complex<double>(re, im);
    }
    return acc * (2.0 * oracle::pi / nphi);
  };
  CHECK(std::abs(inner(1, 0, 1, 1)) <= 1e-10);
  CHECK(std::abs(inner(2, 1, 2, 1) - 1.0) <= 1e-10);
  CHECK(std::abs(inner(3, -2, 3, -2) - 1.0) <= 1e-10);
  CHECK(std::abs(inner(2, 0, 4, 0)) <= 1e-10);
}

TEST_CASE("harmonic index validation") {
  CHECK_THROWS_AS(HarmonicIndex(0, 0, 0), DomainError);
  CHECK_THROWS_AS(HarmonicIndex(2, 2, 0), DomainError);
  CHECK_THROWS_AS(HarmonicIndex(3, 1, 2), DomainError);
  CHECK(harmonic_indices(4).size() == 30u);
}

TEST_CASE("hyperspherical harmonic ground state is constant") {
  const double c = 1.0 / (std::sqrt(2.0) * oracle::pi);
  for (double a : {0.0, 0.9, 2.5})
    CHECK(std::abs(hyperspherical_harmonic(HarmonicIndex(1, 0, 0), a, 0.3, 1.9)) == Approx(c).epsilon(1e-14));
}

TEST_CASE("hyperspherical norm by an independent rule") {
  // |Y_210|^2 has no phi dependence; Simpson in alpha and theta
  const HarmonicIndex idx(2, 1, 0);
  const double norm = 2.0 * oracle::pi * oracle::simpson(
                                             [&](double a) {
                                               return oracle::simpson(
                                                          [&](double t) {
                                                            return std::norm(hyperspherical_harmonic(idx, a, t, 0.0)) * std::sin(t);
                                                          },
                                                          0.0, oracle::pi, 400) *
                                                      std::sin(a) * std::sin(a);
                                             },
                                             0.0, oracle::pi, 400);
  CHECK(norm == Approx(1.0).epsilon(1e-8));
}

TEST_CASE("hyperspherical Gram matrix is the identity for n <= 4") {
  const auto gram = hyperspherical_gram(4);
  double worst = 0.0;
  for (std::size_t i = 0; i < gram.size(); ++i)
    for (std::size_t j = 0; j < gram.size(); ++j)
      worst = std::max(worst, std::abs(gram[i][j] - (i == j ? 1.0 : 0.0)));
  CHECK(worst <= 1e-6);
  // distinct m sectors vanish by the phi integral alone
  const auto idx = harmonic_indices(2);
  CHECK(idx[0] == HarmonicIndex(1, 0, 0));
}

TEST_CASE("momentum amplitude decay and Fock variable") {
  const HarmonicIndex g(1, 0, 0);
  CHECK(std::fabs(momentum_amplitude(g, 1e4)) < 1e-14);
  CHECK(std::fabs(fock_cos_alpha(1.0, 1.0)) < 1e-15);
  CHECK(fock_cos_alpha(2.0, 0.0) == 1.0);
  CHECK_THROWS_AS(momentum_amplitude(g, -0.1), DomainError);
}

TEST_CASE("momentum amplitude is proportional to the S^3 profile") {
  // F_nl(p) (p0 (p^2 + p0^2)^2 / 4) / (sin^l a C_{n-l-1}^{l+1}(cos a)) is constant in p, p0 = 1/n
  for (auto [n, l] : {std::pair{1, 0}, {2, 0}, {2, 1}, {3, 1}, {4, 2}}) {
    const double p0 = 1.0 / n;
    double lo = 1e300, hi = -1e300;
    for (int i = 1; i <= 40; ++i) {
      const double p = 0.037 * i + 0.01;
      const double ca = fock_cos_alpha(n, p);
      const double sa = std::sqrt(std::max(0.0, 1.0 - ca * ca));
      const double profile = std::pow(sa, l) * oracle::gegenbauer_sum(n - l - 1, l + 1.0, ca);
      if (std::fabs(profile) < 1e-3) continue;
      const double ratio = momentum_amplitude(HarmonicIndex(n, l, 0), p) * p0 * std::pow(p * p + p0 * p0, 2) / 4.0 / profile;
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
    CHECK((hi - lo) <= 1e-8 * std::fabs(hi));
  }
}

TEST_CASE("Gegenbauer normalisation integral") {
  CHECK(gegenbauer_norm_integral(0, 1.0) == Approx(oracle::pi / 2).epsilon(1e-12));
  CHECK(gegenbauer_norm_integral(1, 1.0) == Approx(oracle::pi / 2).epsilon(1e-12));
  auto closed = [](int l, double p) {
    return oracle::pi * std::tgamma(2 * p + l) / (std::pow(2.0, 2 * p - 1) * std::tgamma(l + 1.0) * (l + p) * std::tgamma(p) * std::tgamma(p));
  };
  CHECK(gegenbauer_norm_integral(3, 2.5) == Approx(closed(3, 2.5)).epsilon(1e-8));
  for (int l = 0; l <= 8; ++l)
    for (double p : {0.5, 1.0, 1.5, 2.0, 3.0, 5.0}) {
      CHECK(gegenbauer_norm_closed_form(l, p) == Approx(closed(l, p)).epsilon(1e-13));
      CHECK(gegenbauer_norm_integral(l, p) == Approx(closed(l, p)).epsilon(1e-8));
    }
}

TEST_CASE("Gauss-Legendre grid invariants") {
  const auto g = gauss_legendre(64, 0.0, oracle::pi);
  double sum = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(g.weights[i] > 0.0);
    if (i) CHECK(g.nodes[i] > g.nodes[i - 1]);
    sum += g.weights[i];
  }
  CHECK(sum == Approx(oracle::pi).epsilon(1e-12));
  CHECK(g.apply([](double x) { return std::sin(x); }) == Approx(2.0).epsilon(1e-14));
  CHECK(integrate([](double x) { return std::exp(-x * x); }, -6.0, 6.0) == Approx(std::sqrt(oracle::pi)).epsilon(1e-12));
}

}  // TEST_SUITE
