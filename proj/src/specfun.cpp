#include "bertrand/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bertrand/error.hpp"

namespace bertrand::specfun {

namespace {

constexpr double kPi = std::numbers::pi;

void check_order(double lambda) {
  detail::require(lambda > -0.5 && lambda != 0.0,
                  "gegenbauer: order must satisfy lambda > -1/2 and lambda != 0");
}

void check_unit_interval(double x, const char* who) {
  detail::require(std::isfinite(x) && std::fabs(x) <= 1.0,
                  std::string(who) + ": argument must lie in [-1, 1]");
}

// Polynomial continuation; no domain checks.
double gegenbauer_raw(int k, double lambda, double x) {
  if (k == 0) return 1.0;
  double prev = 1.0;
  double curr = 2.0 * lambda * x;
  for (int j = 2; j <= k; ++j) {
    const double next = (2.0 * x * (j + lambda - 1.0) * curr - (j + 2.0 * lambda - 2.0) * prev) / j;
    prev = curr;
    curr = next;
  }
  return curr;
}

double double_factorial_odd(int m) {
  // (2m-1)!!, with (-1)!! = 1
  double r = 1.0;
  for (int j = 2 * m - 1; j > 1; j -= 2) r *= j;
  return r;
}

double log_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

double legendre_norm(int l, int m) {
  const int am = std::abs(m);
  return std::sqrt((2.0 * l + 1.0) / (4.0 * kPi) *
                   std::exp(log_factorial(l - am) - log_factorial(l + am)));
}

double integrate_panel(const QuadratureGrid& unit, const std::function<double(double)>& f,
                       double a, double b) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (b + a);
  double s = 0.0;
  for (std::size_t i = 0; i < unit.size(); ++i) s += unit.weights[i] * f(mid + half * unit.nodes[i]);
  return s * half;
}

double integrate_adaptive(const QuadratureGrid& unit, const std::function<double(double)>& f,
                          double a, double b, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double left = integrate_panel(unit, f, a, m);
  const double right = integrate_panel(unit, f, m, b);
  const double both = left + right;
  if (depth >= 40 || std::fabs(both - whole) <= tol) return both;
  return integrate_adaptive(unit, f, a, m, left, 0.5 * tol, depth + 1) +
         integrate_adaptive(unit, f, m, b, right, 0.5 * tol, depth + 1);
}

}  // namespace

HarmonicIndex::HarmonicIndex(int n, int l, int m) : n_(n), l_(l), m_(m) {
  detail::require(n >= 1, "HarmonicIndex: n must be >= 1");
  detail::require(l >= 0 && l <= n - 1, "HarmonicIndex: l must satisfy 0 <= l <= n-1");
  detail::require(m >= -l && m <= l, "HarmonicIndex: m must satisfy |m| <= l");
}

std::vector<HarmonicIndex> harmonic_indices(int n_max) {
  std::vector<HarmonicIndex> out;
  for (int n = 1; n <= n_max; ++n)
    for (int l = 0; l < n; ++l)
      for (int m = -l; m <= l; ++m) out.emplace_back(n, l, m);
  return out;
}

double QuadratureGrid::apply(const std::function<double(double)>& f) const {
  double s = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
  return s;
}

QuadratureGrid gauss_legendre(int n, double lower, double upper) {
  detail::require(n >= 1, "gauss_legendre: need at least one node");
  detail::require(upper > lower, "gauss_legendre: empty interval");
  QuadratureGrid g;
  g.lower = lower;
  g.upper = upper;
  g.nodes.resize(n);
  g.weights.resize(n);
  const double half = 0.5 * (upper - lower);
  const double mid = 0.5 * (upper + lower);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = z;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::fabs(dz) < 1e-16) break;
    }
    // recompute derivative at the converged root
    {
      double p0 = 1.0, p1 = z;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (z * p1 - p0) / (z * z - 1.0);
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    g.nodes[i] = mid - half * z;
    g.nodes[n - 1 - i] = mid + half * z;
    g.weights[i] = half * w;
    g.weights[n - 1 - i] = half * w;
  }
  return g;
}

double integrate(const std::function<double(double)>& f, double lower, double upper,
                 double rel_tol) {
  static const QuadratureGrid unit = gauss_legendre(64);
  const double whole = integrate_panel(unit, f, lower, upper);
  const double tol = rel_tol * std::max(std::fabs(whole), 1e-300);
  return integrate_adaptive(unit, f, lower, upper, whole, tol, 0);
}

double gegenbauer(int k, double lambda, double x) {
  detail::require(k >= 0, "gegenbauer: degree must be non-negative");
  check_order(lambda);
  check_unit_interval(x, "gegenbauer");
  return gegenbauer_raw(k, lambda, x);
}

double gegenbauer_ode_residual(int k, double lambda, double x, double h) {
  detail::require(k >= 0, "gegenbauer_ode_residual: degree must be non-negative");
  check_order(lambda);
  check_unit_interval(x, "gegenbauer_ode_residual");
  // five-point stencils: the three-point pair leaves O(h^2 k^6) truncation near |x| = 1
  const double ym2 = gegenbauer_raw(k, lambda, x - 2.0 * h);
  const double ym = gegenbauer_raw(k, lambda, x - h);
  const double y0 = gegenbauer_raw(k, lambda, x);
  const double yp = gegenbauer_raw(k, lambda, x + h);
  const double yp2 = gegenbauer_raw(k, lambda, x + 2.0 * h);
  const double d1 = (ym2 - 8.0 * ym + 8.0 * yp - yp2) / (12.0 * h);
  const double d2 = (-ym2 + 16.0 * ym - 30.0 * y0 + 16.0 * yp - yp2) / (12.0 * h * h);
  const double eig = k * (k + 2.0 * lambda);
  const double res = (1.0 - x * x) * d2 - (2.0 * lambda + 1.0) * x * d1 + eig * y0;
  const double peak = std::max({std::fabs(gegenbauer_raw(k, lambda, 1.0)), std::fabs(y0), 1.0});
  return std::fabs(res) / (1.0 + eig * peak);
}

double gegenbauer_addition_check(int n, double alpha, double beta, double x) {
  detail::require(n >= 0, "gegenbauer_addition_check: degree must be non-negative");
  check_order(alpha);
  check_order(beta);
  check_order(alpha + beta);
  check_unit_interval(x, "gegenbauer_addition_check");
  double sum = 0.0;
  for (int m = 0; m <= n; ++m) sum += gegenbauer_raw(m, alpha, x) * gegenbauer_raw(n - m, beta, x);
  return std::fabs(gegenbauer_raw(n, alpha + beta, x) - sum);
}

double assoc_legendre(int l, int m, double x) {
  detail::require(l >= 0 && m >= 0 && m <= l, "assoc_legendre: need 0 <= m <= l");
  check_unit_interval(x, "assoc_legendre");
  double pmm = double_factorial_odd(m) * std::pow(std::sqrt((1.0 - x) * (1.0 + x)), m);
  if (l == m) return pmm;
  double pm1 = x * (2.0 * m + 1.0) * pmm;
  for (int j = m + 2; j <= l; ++j) {
    const double pj = (x * (2.0 * j - 1.0) * pm1 - (j + m - 1.0) * pmm) / (j - m);
    pmm = pm1;
    pm1 = pj;
  }
  return pm1;
}

double assoc_legendre_via_gegenbauer(int l, int m, double x) {
  detail::require(l >= 0 && m >= 0 && m <= l, "assoc_legendre: need 0 <= m <= l");
  check_unit_interval(x, "assoc_legendre");
  return double_factorial_odd(m) * std::pow(std::sqrt((1.0 - x) * (1.0 + x)), m) *
         gegenbauer_raw(l - m, m + 0.5, x);
}

std::complex<double> spherical_harmonic(int l, int m, double theta, double phi) {
  detail::require(l >= 0 && std::abs(m) <= l, "spherical_harmonic: need |m| <= l");
  detail::require(std::isfinite(theta) && std::isfinite(phi), "spherical_harmonic: angles must be finite");
  const double radial = legendre_norm(l, m) * assoc_legendre(l, std::abs(m), std::cos(theta));
  return std::polar(radial, m * phi);
}

std::complex<double> hyperspherical_harmonic(const HarmonicIndex& idx, double alpha,
                                             double theta, double phi) {
  const int n = idx.n();
  const int l = idx.l();
  const double log_norm = (l + 1) * std::log(2.0) + log_factorial(l) +
                          0.5 * (std::log(static_cast<double>(n)) + log_factorial(n - l - 1) -
                                 std::log(2.0 * kPi) - log_factorial(n + l));
  const double ca = std::clamp(std::cos(alpha), -1.0, 1.0);
  const double radial =
      std::exp(log_norm) * std::pow(std::sin(alpha), l) * gegenbauer_raw(n - l - 1, l + 1.0, ca);
  return radial * spherical_harmonic(l, idx.m(), theta, phi);
}

double fock_cos_alpha(double n_scale, double p) {
  detail::require(n_scale > 0.0, "fock_cos_alpha: scale must be positive");
  detail::require(p >= 0.0, "fock_cos_alpha: momentum must be non-negative");
  if (std::isinf(p)) return -1.0;
  const double q2 = (n_scale * p) * (n_scale * p);
  return (1.0 - q2) / (1.0 + q2);
}

double momentum_amplitude(const HarmonicIndex& idx, double p) {
  detail::require(p >= 0.0 && !std::isnan(p), "momentum_amplitude: momentum must be non-negative");
  const int n = idx.n();
  const int l = idx.l();
  if (std::isinf(p)) return 0.0;
  const double np = n * p;
  const double q2 = np * np;
  const double pref = std::sqrt(2.0 / kPi) *
                      std::exp(0.5 * (log_factorial(n - l - 1) - log_factorial(n + l))) *
                      static_cast<double>(n) * n * std::ldexp(1.0, 2 * l + 2) *
                      std::exp(log_factorial(l));
  const double shape = std::pow(np, l) / std::pow(q2 + 1.0, l + 2);
  return pref * shape * gegenbauer_raw(n - l - 1, l + 1.0, (1.0 - q2) / (1.0 + q2));
}

double gegenbauer_norm_integral(int l, double p) {
  detail::require(l >= 0, "gegenbauer_norm_integral: degree must be non-negative");
  detail::require(p > 0.0, "gegenbauer_norm_integral: order must be positive");
  return integrate(
      [l, p](double a) {
        const double c = gegenbauer_raw(l, p, std::cos(a));
        return std::pow(std::sin(a), 2.0 * p) * c * c;
      },
      0.0, kPi, 1e-13);
}

double gegenbauer_norm_closed_form(int l, double p) {
  detail::require(l >= 0, "gegenbauer_norm_closed_form: degree must be non-negative");
  detail::require(p > 0.0, "gegenbauer_norm_closed_form: order must be positive");
  const double log_val = std::lgamma(2.0 * p + l) - (2.0 * p - 1.0) * std::log(2.0) -
                         log_factorial(l) - std::log(l + p) - 2.0 * std::lgamma(p);
  return kPi * std::exp(log_val);
}

std::vector<std::vector<std::complex<double>>> hyperspherical_gram(int n_max, int n_nodes) {
  const auto idx = harmonic_indices(n_max);
  const std::size_t dim = idx.size();
  const auto qa = gauss_legendre(n_nodes, 0.0, kPi);
  const auto qt = gauss_legendre(n_nodes, 0.0, kPi);
  const auto qp = gauss_legendre(n_nodes, 0.0, 2.0 * kPi);
  std::vector<std::vector<std::complex<double>>> gram(dim, std::vector<std::complex<double>>(dim));
  std::vector<std::complex<double>> vals(dim);
  for (std::size_t i = 0; i < qa.size(); ++i) {
    const double sa = std::sin(qa.nodes[i]);
    for (std::size_t j = 0; j < qt.size(); ++j) {
      const double w_ij = qa.weights[i] * qt.weights[j] * sa * sa * std::sin(qt.nodes[j]);
      for (std::size_t k = 0; k < qp.size(); ++k) {
        const double w = w_ij * qp.weights[k];
        for (std::size_t a = 0; a < dim; ++a)
          vals[a] = hyperspherical_harmonic(idx[a], qa.nodes[i], qt.nodes[j], qp.nodes[k]);
        for (std::size_t a = 0; a < dim; ++a) {
          const auto ca = std::conj(vals[a]) * w;
          for (std::size_t b = 0; b < dim; ++b) gram[a][b] += ca * vals[b];
        }
      }
    }
  }
  return gram;
}

}  // namespace bertrand::specfun
