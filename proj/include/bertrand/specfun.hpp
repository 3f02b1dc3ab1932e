#pragma once

// Special functions on [-1, 1] and on the spheres S^2 and S^3.
//
// Phase conventions: associated Legendre functions carry no Condon-Shortley
// factor and complex harmonics use exp(i m phi). Negative m reuses the |m|
// Legendre function.

#include <complex>
#include <functional>
#include <vector>

namespace bertrand::specfun {

/// (n, l, m) labelling of hyperspherical harmonics on S^3.
class HarmonicIndex {
 public:
  /// Throws DomainError unless n >= 1, 0 <= l <= n-1, |m| <= l.
  HarmonicIndex(int n, int l, int m);

  int n() const { return n_; }
  int l() const { return l_; }
  int m() const { return m_; }

  friend bool operator==(const HarmonicIndex&, const HarmonicIndex&) = default;

 private:
  int n_;
  int l_;
  int m_;
};

/// All indices with n <= n_max, ordered by (n, l, m).
std::vector<HarmonicIndex> harmonic_indices(int n_max);

/// Nodes and weights of a fixed quadrature rule on [lower, upper].
struct QuadratureGrid {
  std::vector<double> nodes;
  std::vector<double> weights;
  double lower = -1.0;
  double upper = 1.0;

  std::size_t size() const { return nodes.size(); }
  double apply(const std::function<double(double)>& f) const;
};

/// n-point Gauss-Legendre rule mapped to [lower, upper].
QuadratureGrid gauss_legendre(int n, double lower = -1.0, double upper = 1.0);

/// Adaptive integral: 64-point Gauss-Legendre compared with the two-panel
/// estimate, bisecting panels whose difference exceeds the tolerance.
double integrate(const std::function<double(double)>& f, double lower, double upper,
                 double rel_tol = 1e-12);

/// C_k^lambda(x) by the three-term recurrence. lambda > -1/2, lambda != 0.
double gegenbauer(int k, double lambda, double x);

/// Scaled residual of (1-x^2) y'' - (2 lambda + 1) x y' + k (k + 2 lambda) y
/// with y = C_k^lambda and derivatives from five-point central differences of step h.
/// Divided by 1 + k (k + 2 lambda) max|C_k^lambda| so that it is comparable
/// across degrees. The stencil may leave [-1, 1]; the polynomial is
/// continued there.
double gegenbauer_ode_residual(int k, double lambda, double x, double h = 1e-4);

/// |C_n^{alpha+beta}(x) - sum_m C_m^alpha(x) C_{n-m}^beta(x)|.
double gegenbauer_addition_check(int n, double alpha, double beta, double x);

/// P_l^m(x) without Condon-Shortley phase, by the standard recurrence in l.
double assoc_legendre(int l, int m, double x);

/// The same function built as (2m-1)!! (1-x^2)^{m/2} C_{l-m}^{m+1/2}(x).
double assoc_legendre_via_gegenbauer(int l, int m, double x);

/// Orthonormal Y_lm on S^2.
std::complex<double> spherical_harmonic(int l, int m, double theta, double phi);

/// Orthonormal Y_nlm on S^3 with measure sin^2(alpha) sin(theta).
std::complex<double> hyperspherical_harmonic(const HarmonicIndex& idx, double alpha,
                                             double theta, double phi);

/// Radial momentum-space hydrogen amplitude F_nl(p) (atomic units).
double momentum_amplitude(const HarmonicIndex& idx, double p);

/// Fock variable cos(alpha) = (1 - (n p)^2) / (1 + (n p)^2).
double fock_cos_alpha(double n_scale, double p);

/// int_0^pi sin^{2p}(a) [C_l^p(cos a)]^2 da by adaptive quadrature.
double gegenbauer_norm_integral(int l, double p);

/// pi Gamma(2p + l) / (2^{2p-1} l! (l + p) Gamma(p)^2).
double gegenbauer_norm_closed_form(int l, double p);

/// Gram matrix <Y_a, Y_b> over S^3 for all indices with n <= n_max, using
/// an n_nodes Gauss-Legendre product rule in (alpha, theta, phi).
std::vector<std::vector<std::complex<double>>> hyperspherical_gram(int n_max, int n_nodes = 64);

}  // namespace bertrand::specfun
