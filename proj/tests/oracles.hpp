#pragma once

// Reference formulas used only by the tests. Nothing here calls the library,
// so a test that compares against these is a genuine second route.

#include <cmath>
#include <functional>
#include <numbers>
#include <utility>
#include <vector>

namespace oracle {

inline constexpr double pi = std::numbers::pi;

// C_k^lambda(x) from the explicit hypergeometric sum
//   sum_j (-1)^j Gamma(k - j + lambda) / (Gamma(lambda) j! (k - 2j)!) (2x)^(k - 2j).
// `magnitude` receives sum |term|, the scale of the cancellation error.
inline double gegenbauer_sum(int k, double lambda, double x, double* magnitude = nullptr) {
  double s = 0.0, mag = 0.0;
  for (int j = 0; 2 * j <= k; ++j) {
    const double lg = std::lgamma(k - j + lambda) - std::lgamma(lambda) - std::lgamma(j + 1.0) -
                      std::lgamma(k - 2 * j + 1.0);
    const double sign = (j % 2 ? -1.0 : 1.0) * (std::tgamma(k - j + lambda) < 0 ? -1.0 : 1.0) *
                        (std::tgamma(lambda) < 0 ? -1.0 : 1.0);
    const double term = sign * std::exp(lg) * std::pow(2.0 * x, k - 2 * j);
    s += term;
    mag += std::fabs(term);
  }
  if (magnitude) *magnitude = mag;
  return s;
}

// Monomial coefficients of the Legendre polynomial P_l.
inline std::vector<double> legendre_coeffs(int l) {
  std::vector<double> c(l + 1, 0.0);
  for (int k = 0; 2 * k <= l; ++k) {
    const double v = std::exp(std::lgamma(2.0 * l - 2 * k + 1) - std::lgamma(k + 1.0) -
                              std::lgamma(l - k + 1.0) - std::lgamma(l - 2.0 * k + 1)) /
                     std::pow(2.0, l);
    c[l - 2 * k] = (k % 2 ? -v : v);
  }
  return c;
}

// P_l^m(x) = (1 - x^2)^(m/2) d^m/dx^m P_l(x), no Condon-Shortley sign.
inline double assoc_legendre_rodrigues(int l, int m, double x) {
  auto c = legendre_coeffs(l);
  for (int d = 0; d < m; ++d) {
    std::vector<double> dc(c.size() > 1 ? c.size() - 1 : 1, 0.0);
    for (std::size_t i = 1; i < c.size(); ++i) dc[i - 1] = c[i] * static_cast<double>(i);
    c = dc;
  }
  double p = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) p = p * x + c[i];
  return std::pow(1.0 - x * x, 0.5 * m) * p;
}

// Composite Simpson rule with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

// Fish-eye couplings from the substitution ansatz.
inline double fisheye_beta_gamma1(int n_r, int l) {
  const int N = n_r + l;
  return (2.0 * N + 1.0) * (2.0 * N + 3.0);
}
inline double fisheye_beta_gamma_half(int n_r, int l) {
  const int M = n_r + 2 * l;
  return (M + 1.0) * (M + 2.0);
}

// Unnormalised gamma = 1 eigenfunction r^{l+1} (1+r^2)^{-(2l+1)/2} C_{n_r}^{l+1}(xi).
inline double fisheye_u_gamma1(int n_r, int l, double r) {
  const double xi = (1.0 - r * r) / (1.0 + r * r);
  return std::pow(r, l + 1) * std::pow(1.0 + r * r, -(2.0 * l + 1.0) / 2.0) *
         gegenbauer_sum(n_r, l + 1.0, xi);
}

// Tietz zero-energy orbit x(phi) from x + 1/x = (D+1) + (D-1) cos(phi), launched at
// perihelion: the small root on [0, pi] and [3 pi, 4 pi], the large root between.
inline double tietz_orbit_x(double delta, double phi) {
  const double c = (delta + 1.0) + (delta - 1.0) * std::cos(phi);
  const double disc = std::sqrt(std::max(0.0, c * c - 4.0));
  const double ph = std::fmod(phi, 4.0 * pi);
  const bool outer = ph > pi && ph < 3.0 * pi;
  return outer ? 0.5 * (c + disc) : 0.5 * (c - disc);
}

// Time for phi to advance by 4 pi along the closed-form orbit: int r^2 / L dphi.
inline double tietz_orbit_time(double delta, double Z = 1.0, double a = 1.0) {
  const double L = std::sqrt(Z * a / (delta + 1.0));
  auto f = [&](double phi) {
    const double r = a * tietz_orbit_x(delta, phi);
    return r * r / L;
  };
  // the large root has a kink at pi and 3 pi; integrate panel by panel
  return simpson(f, 0.0, pi, 20000) + simpson(f, pi, 3.0 * pi, 40000) +
         simpson(f, 3.0 * pi, 4.0 * pi, 20000);
}

// Thomas-Fermi values frozen from an independent scipy shooting run
// (solve_ivp, rtol 1e-12, 60 bisections on the slope, x_max = 50).
inline constexpr double tf_slope0 = -1.58807103;
inline constexpr double tf_phi_at_1 = 0.42400804;
inline constexpr double tf_phi_at_5 = 0.07880753;
inline constexpr double tf_tietz_max_dev = 0.02262032;  // attained near x = 0.21

// Madelung order built by walking N = n + l upward and n upward inside N.
inline std::vector<std::pair<int, int>> madelung_walk(int count) {
  std::vector<std::pair<int, int>> out;
  for (int N = 1; static_cast<int>(out.size()) < count; ++N)
    for (int n = 1; n <= N && static_cast<int>(out.size()) < count; ++n)
      if (N - n < n) out.emplace_back(n, N - n);
  return out;
}

}  // namespace oracle
