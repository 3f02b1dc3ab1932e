#include <doctest.h>

#include <cmath>
#include <functional>

#include "../oracles.hpp"
#include "bertrand/error.hpp"
#include "bertrand/spectra.hpp"
#include "bertrand/sturm.hpp"

using namespace bertrand;
using namespace bertrand::sturm;
using doctest::Approx;

namespace {

RadialProblem fisheye(double gamma, int l, int mesh = 20000) {
  RadialProblem p;
  p.gamma = gamma;
  p.l = l;
  p.mesh = mesh;
  return p;
}

int sign_changes(const SturmianSolution& s) {
  int n = 0;
  double prev = 0.0;
  for (double v : s.u) {
    if (std::fabs(v) < 1e-12) continue;
    if (prev != 0.0 && (v > 0) != (prev > 0)) ++n;
    prev = v;
  }
  return n;
}

// Fit u = c f on [lo, hi] by least squares; deviation relative to the largest |c f|.
double profile_deviation(const SturmianSolution& s, const std::function<double(double)>& f, double lo, double hi) {
  double uf = 0.0, ff = 0.0;
  for (std::size_t i = 0; i < s.r.size(); ++i)
    if (s.r[i] >= lo && s.r[i] <= hi) {
      uf += s.u[i] * f(s.r[i]);
      ff += f(s.r[i]) * f(s.r[i]);
    }
  const double c = uf / ff;
  double dev = 0.0, peak = 0.0;
  for (std::size_t i = 0; i < s.r.size(); ++i)
    if (s.r[i] >= lo && s.r[i] <= hi) {
      dev = std::max(dev, std::fabs(s.u[i] - c * f(s.r[i])));
      peak = std::max(peak, std::fabs(c * f(s.r[i])));
    }
  return dev / peak;
}

}  // namespace

TEST_SUITE("sturm") {

TEST_CASE("lowest fish-eye couplings") {
  CHECK(solve_fisheye_coupling(fisheye(1.0, 0), 0) == Approx(3.0).epsilon(1e-6));
  CHECK(solve_fisheye_coupling(fisheye(0.5, 0), 0) == Approx(2.0).epsilon(1e-6));
  CHECK(solve_fisheye_coupling(fisheye(0.5, 1), 0) == Approx(12.0).epsilon(1e-6));
  const auto s = solve_fisheye_couplings(fisheye(1.0, 0), 3);
  REQUIRE(s.entries.size() == 3u);
  CHECK(s.entries[0].beta == Approx(3.0).epsilon(1e-8));
  CHECK(s.entries[1].beta == Approx(15.0).epsilon(1e-8));
  CHECK(s.entries[2].beta == Approx(35.0).epsilon(1e-8));
}

TEST_CASE("couplings agree with the substitution oracle and the degeneracy law") {
  for (double gamma : {1.0, 0.5})
    for (int l = 0; l <= 3; ++l) {
      const auto s = solve_fisheye_couplings(fisheye(gamma, l), 5);
      for (std::size_t k = 0; k < s.entries.size(); ++k) {
        const auto& e = s.entries[k];
        CHECK(e.nodes == static_cast<int>(k));
        const double ref = gamma == 1.0 ? oracle::fisheye_beta_gamma1(e.nodes, l) : oracle::fisheye_beta_gamma_half(e.nodes, l);
        CHECK(e.beta == Approx(ref).epsilon(1e-8));
        CHECK(e.beta == Approx(spectra::fisheye_coupling_law(gamma, spectra::LevelIndex(e.nodes, l))).epsilon(1e-6));
        if (k) CHECK(e.beta > s.entries[k - 1].beta);
      }
    }
}

TEST_CASE("degenerate pairs from independent solves") {
  // gamma = 1 pairs share n_r + l, gamma = 1/2 pairs share n_r + 2 l
  for (int key = 1; key <= 6; ++key)
    for (int l = 1; l <= key; ++l) {
      const double a = solve_fisheye_coupling(fisheye(1.0, 0), key);
      const double b = solve_fisheye_coupling(fisheye(1.0, l), key - l);
      CHECK(std::fabs(a - b) <= 1e-5 * a);
    }
  for (int key = 2; key <= 6; ++key)
    for (int l = 1; 2 * l <= key; ++l) {
      const double a = solve_fisheye_coupling(fisheye(0.5, 0), key);
      const double b = solve_fisheye_coupling(fisheye(0.5, l), key - 2 * l);
      CHECK(std::fabs(a - b) <= 1e-5 * a);
    }
}

TEST_CASE("mesh halving moves couplings by at most 1e-8") {
  for (double gamma : {1.0, 0.5})
    for (int l : {0, 2}) {
      const auto coarse = solve_fisheye_couplings(fisheye(gamma, l, 20000), 3);
      const auto fine = solve_fisheye_couplings(fisheye(gamma, l, 40000), 3);
      for (int k = 0; k < 3; ++k)
        CHECK(std::fabs(coarse.entries[k].beta - fine.entries[k].beta) <= 1e-8 * fine.entries[k].beta);
    }
}

TEST_CASE("node theorem") {
  for (double gamma : {1.0, 0.5})
    for (int l = 0; l <= 3; ++l) {
      const auto p = fisheye(gamma, l);
      const auto s = solve_fisheye_couplings(p, 6);
      for (const auto& e : s.entries) {
        const auto sol = eigenfunction(p, e.beta);
        CHECK(sol.node_count == e.nodes);
        CHECK(sign_changes(sol) == e.nodes);
      }
    }
}

TEST_CASE("eigenfunctions match the closed forms") {
  const auto p1 = fisheye(1.0, 0);
  const auto g = eigenfunction(p1, solve_fisheye_coupling(p1, 0));
  CHECK(profile_deviation(g, [](double r) { return r / std::sqrt(1.0 + r * r); }, 0.01, 10.0) <= 1e-6);
  const auto e1 = eigenfunction(p1, solve_fisheye_coupling(p1, 1));
  CHECK(e1.node_count == 1);
  CHECK(profile_deviation(e1, [](double r) { return oracle::fisheye_u_gamma1(1, 0, r); }, 0.01, 10.0) <= 1e-6);

  const auto ph = fisheye(0.5, 0);
  const auto h = eigenfunction(ph, solve_fisheye_coupling(ph, 0));
  CHECK(profile_deviation(h, [](double r) { return r / (1.0 + r); }, 0.01, 10.0) <= 1e-6);

  for (int l = 0; l <= 3; ++l)
    for (int n_r = 0; n_r <= 3; ++n_r) {
      const auto p = fisheye(1.0, l);
      const auto s = eigenfunction(p, solve_fisheye_coupling(p, n_r));
      CHECK(profile_deviation(s, [&](double r) { return oracle::fisheye_u_gamma1(n_r, l, r); }, 0.01, 10.0) <= 1e-6);
    }
}

TEST_CASE("a non-eigenvalue is rejected") {
  CHECK_THROWS_AS(eigenfunction(fisheye(1.0, 0), 4.0), NotAnEigenvalueError);
  CHECK_THROWS_AS(eigenfunction(fisheye(1.0, 0), 3.01), NotAnEigenvalueError);
}

TEST_CASE("fish-eye weighted orthogonality") {
  const auto p = fisheye(1.0, 0);
  const auto a = eigenfunction(p, 3.0);
  const auto b = eigenfunction(p, solve_fisheye_coupling(p, 1));
  CHECK(std::fabs(weighted_overlap(p, a, b)) <= 1e-6);
  CHECK(weighted_overlap(p, a, a) == Approx(1.0).epsilon(1e-9));
  const auto q = fisheye(0.5, 1);
  const auto s = solve_fisheye_couplings(q, 3);
  const auto u0 = eigenfunction(q, s.entries[0].beta);
  const auto u2 = eigenfunction(q, s.entries[2].beta);
  CHECK(std::fabs(weighted_overlap(q, u0, u2)) <= 1e-6);
}

TEST_CASE("Coulomb Sturmians") {
  const auto s = solve_coulomb_sturmian(1.0, 0, 3);
  for (int i = 0; i < 3; ++i) CHECK(s.entries[i].beta == Approx(i + 1.0).epsilon(1e-8));
  const auto h = solve_coulomb_sturmian(0.5, 1, 2);
  CHECK(h.entries[0].beta == Approx(1.0).epsilon(1e-8));
  CHECK(h.entries[1].beta == Approx(1.5).epsilon(1e-8));
  for (double k : {0.5, 1.0, 2.0})
    for (int l = 0; l <= 2; ++l) {
      const auto c = solve_coulomb_sturmian(k, l, 6 - l);
      for (const auto& e : c.entries) CHECK(e.beta == Approx((e.nodes + l + 1) * k).epsilon(1e-8));
    }
}

TEST_CASE("Coulomb eigenfunctions: nodes and orthogonality") {
  CoulombProblem p;
  p.k = 1.0;
  p.l = 0;
  const auto s = solve_coulomb_sturmian(p, 3);
  const auto u1 = coulomb_eigenfunction(p, s.entries[0].beta);
  const auto u2 = coulomb_eigenfunction(p, s.entries[1].beta);
  const auto u3 = coulomb_eigenfunction(p, s.entries[2].beta);
  CHECK(u1.node_count == 0);
  CHECK(u2.node_count == 1);
  CHECK(u3.node_count == 2);
  CHECK(std::fabs(weighted_overlap(p, u1, u2)) <= 1e-6);
  CHECK(std::fabs(weighted_overlap(p, u1, u3)) <= 1e-6);
  CHECK(std::fabs(weighted_overlap(p, u2, u3)) <= 1e-6);
  CHECK(weighted_overlap(p, u2, u2) == Approx(1.0).epsilon(1e-9));
  // n = 1 Sturmian is r exp(-k r)
  CHECK(profile_deviation(u1, [](double r) { return r * std::exp(-r); }, 0.01, 10.0) <= 1e-6);
}

TEST_CASE("problem validation") {
  CHECK_THROWS_AS(fisheye(0.7, 0).validate(), UnsupportedModelError);
  auto p = fisheye(1.0, 0);
  p.mesh = 500;
  CHECK_THROWS_AS(p.validate(), DomainError);
  p = fisheye(1.0, 0);
  p.match_r = 500.0;
  CHECK_THROWS_AS(p.validate(), DomainError);
  CHECK_THROWS_AS(solve_fisheye_couplings(fisheye(1.0, 0), 0), DomainError);
  CHECK_THROWS_AS(solve_coulomb_sturmian(-1.0, 0, 2), DomainError);
}

TEST_CASE("shooting function changes sign across an eigenvalue") {
  const auto p = fisheye(1.0, 1);
  const double lo = fisheye_shooting_function(p, 14.5);
  const double hi = fisheye_shooting_function(p, 15.5);
  CHECK(lo * hi < 0.0);
  CHECK(fisheye_shooting_function(p, 35.0) == Approx(oracle::pi).epsilon(1e-7));
}

}  // TEST_SUITE
