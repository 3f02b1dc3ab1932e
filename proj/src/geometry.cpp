#include "bertrand/geometry.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "bertrand/error.hpp"

namespace bertrand::geometry {

namespace {

double dot3(const Point3& a, const Point3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

void require_finite(std::span<const double> v, const char* who) {
  for (double c : v)
    detail::require(std::isfinite(c), std::string(who) + ": coordinates must be finite");
}

Point4 project(const Point3& x, ConformalConvention conv) {
  if (conv == ConformalConvention::unit) return stereo_r3_to_s3(x);
  return stereo_r3_to_s3({0.5 * x[0], 0.5 * x[1], 0.5 * x[2]});
}

So4Matrix unit_rotation(int i, int j) {
  // -e_ij + e_ji
  So4Matrix m{};
  m[i][j] = -1;
  m[j][i] = 1;
  return m;
}

}  // namespace

Point4 stereo_r3_to_s3(const Point3& x) {
  require_finite(x, "stereo_r3_to_s3");
  const double r2 = dot3(x, x);
  const double d = 1.0 + r2;
  return {2.0 * x[0] / d, 2.0 * x[1] / d, 2.0 * x[2] / d, (1.0 - r2) / d};
}

Point3 stereo_s3_to_r3(const Point4& s) {
  require_finite(s, "stereo_s3_to_r3");
  const double norm2 = s[0] * s[0] + s[1] * s[1] + s[2] * s[2] + s[3] * s[3];
  detail::require(std::fabs(norm2 - 1.0) <= 1e-10, "stereo_s3_to_r3: point is not on the unit sphere");
  const double d = 1.0 + s[3];
  if (d == 0.0) throw SingularityError("stereo_s3_to_r3: projection pole s4 = -1");
  return {s[0] / d, s[1] / d, s[2] / d};
}

double stereo_polar_angle(const Point3& x) { return std::acos(stereo_r3_to_s3(x)[3]); }

Point4 stereo_scaled(const Point3& x, double a, double b) {
  require_finite(x, "stereo_scaled");
  detail::require(a > 0.0 && b > 0.0, "stereo_scaled: a and b must be positive");
  const double r2 = dot3(x, x);
  const double d = b * b + r2;
  const double k = 2.0 * a * b / d;
  return {k * x[0], k * x[1], k * x[2], a * (b * b - r2) / d};
}

Point3 stereo_scaled_inverse(const Point4& s, double a, double b) {
  require_finite(s, "stereo_scaled_inverse");
  detail::require(a > 0.0 && b > 0.0, "stereo_scaled_inverse: a and b must be positive");
  const double d = a + s[3];
  if (d == 0.0) throw SingularityError("stereo_scaled_inverse: projection pole tau = -a");
  return {b * s[0] / d, b * s[1] / d, b * s[2] / d};
}

Point3 antipodal_image(const Point3& x, double b) {
  const double r2 = dot3(x, x);
  if (r2 == 0.0) throw SingularityError("antipodal_image: origin maps to infinity");
  const double k = -b * b / r2;
  return {k * x[0], k * x[1], k * x[2]};
}

double conformal_factor_sphere(std::span<const double> x, ConformalConvention conv) {
  detail::require(x.size() == 2 || x.size() == 3, "conformal_factor_sphere: need 2 or 3 coordinates");
  require_finite(x, "conformal_factor_sphere");
  double r2 = 0.0;
  for (double c : x) r2 += c * c;
  if (conv == ConformalConvention::unit) {
    const double d = 1.0 + r2;
    return 4.0 / (d * d);
  }
  const double f = 1.0 / (1.0 + 0.25 * r2);
  return f * f;
}

std::array<std::array<double, 3>, 3> metric_pullback(const Point3& x, ConformalConvention conv,
                                                     double h) {
  std::array<Point4, 3> jac{};
  for (int a = 0; a < 3; ++a) {
    Point3 xp = x, xm = x;
    xp[a] += h;
    xm[a] -= h;
    const Point4 sp = project(xp, conv);
    const Point4 sm = project(xm, conv);
    for (int k = 0; k < 4; ++k) jac[a][k] = (sp[k] - sm[k]) / (2.0 * h);
  }
  std::array<std::array<double, 3>, 3> g{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 4; ++k) g[i][j] += jac[i][k] * jac[j][k];
  return g;
}

double refractive_index(double r, double gamma, double n0, double a) {
  detail::require(std::isfinite(r) && r >= 0.0, "refractive_index: radius must be non-negative");
  detail::require(gamma > 0.0, "refractive_index: gamma must be positive");
  detail::require(a > 0.0, "refractive_index: length scale must be positive");
  const double q = r / a;
  if (q == 0.0) {
    if (gamma == 1.0) return n0;
    if (gamma > 1.0) return 0.0;
    throw SingularityError("refractive_index: index diverges at r = 0 for gamma < 1");
  }
  // (a/r) / (q^-g + q^g) rewritten as q^(g-1) / (1 + q^2g)
  if (gamma == 1.0) return n0 / (1.0 + q * q);
  return n0 * std::pow(q, gamma - 1.0) / (1.0 + std::pow(q, 2.0 * gamma));
}

Point3 hopf_map(const Point4& s) {
  require_finite(s, "hopf_map");
  const double a = s[0] * s[0] + s[1] * s[1];
  const double b = s[2] * s[2] + s[3] * s[3];
  detail::require(std::fabs(a + b - 1.0) <= 1e-10, "hopf_map: point is not on the unit 3-sphere");
  // z1 conj(z2)
  const double re = s[0] * s[2] + s[1] * s[3];
  const double im = s[1] * s[2] - s[0] * s[3];
  const double n = a + b;
  return {2.0 * re / n, 2.0 * im / n, (a - b) / n};
}

Point3 inversion(const Point3& x) {
  require_finite(x, "inversion");
  const double r2 = dot3(x, x);
  if (r2 == 0.0) throw SingularityError("inversion: centre of inversion");
  return {x[0] / r2, x[1] / r2, x[2] / r2};
}

Point3 inversion_momentum(const Point3& x, const Point3& p) {
  require_finite(x, "inversion_momentum");
  require_finite(p, "inversion_momentum");
  const double r2 = dot3(x, x);
  if (r2 == 0.0) throw SingularityError("inversion_momentum: centre of inversion");
  const double xp = dot3(x, p);
  return {r2 * p[0] - 2.0 * x[0] * xp, r2 * p[1] - 2.0 * x[1] * xp, r2 * p[2] - 2.0 * x[2] * xp};
}

Matrix6 inversion_jacobian(const Point3& x, const Point3& p, double h) {
  auto image = [](const std::array<double, 6>& z) {
    const Point3 xx{z[0], z[1], z[2]};
    const Point3 pp{z[3], z[4], z[5]};
    const Point3 xi = inversion(xx);
    const Point3 pi = inversion_momentum(xx, pp);
    return std::array<double, 6>{xi[0], xi[1], xi[2], pi[0], pi[1], pi[2]};
  };
  const std::array<double, 6> z0{x[0], x[1], x[2], p[0], p[1], p[2]};
  Matrix6 jac{};
  for (int c = 0; c < 6; ++c) {
    auto zp = z0, zm = z0;
    zp[c] += h;
    zm[c] -= h;
    const auto fp = image(zp);
    const auto fm = image(zm);
    for (int r = 0; r < 6; ++r) jac[r][c] = (fp[r] - fm[r]) / (2.0 * h);
  }
  return jac;
}

double symplectic_defect(const Matrix6& jac) {
  Matrix6 omega{};
  for (int i = 0; i < 3; ++i) {
    omega[i][i + 3] = 1.0;
    omega[i + 3][i] = -1.0;
  }
  double worst = 0.0;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      double s = 0.0;
      for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) s += jac[a][i] * omega[a][b] * jac[b][j];
      worst = std::max(worst, std::fabs(s - omega[i][j]));
    }
  return worst;
}

PerlickParams::PerlickParams(int beta_num, int beta_den, double K, double G)
    : num_(beta_num), den_(beta_den), K_(K), G_(G) {
  detail::require(beta_num > 0 && beta_den > 0, "PerlickParams: beta must be a positive rational");
  detail::require(std::isfinite(K) && std::isfinite(G), "PerlickParams: K and G must be finite");
}

double PerlickParams::power(double q) const {
  detail::require(q > 0.0, "PerlickParams::power: base must be positive");
  if (num_ == den_) return q;
  return std::exp(std::log(q) * num_ / den_);
}

double PerlickParams::root(double q) const {
  detail::require(q > 0.0, "PerlickParams::root: base must be positive");
  if (num_ == den_) return q;
  return std::exp(std::log(q) * den_ / num_);
}

RadialMap perlick_radial_map(const PerlickParams& params, double r) {
  detail::require(r > 0.0 && std::isfinite(r), "perlick_radial_map: radius must be positive");
  const double s2 = 1.0 + params.K() * r * r;
  detail::require(s2 > 0.0, "perlick_radial_map: requires 1 + K r^2 > 0");
  const double q = r / (1.0 + std::sqrt(s2));
  const double rt = params.root(q);
  return {rt, perlick_f_squared(params, rt)};
}

double perlick_f_squared(const PerlickParams& params, double rtilde) {
  detail::require(rtilde > 0.0, "perlick_f_squared: radius must be positive");
  const double q = params.power(rtilde);
  const double d = 1.0 / q - params.K() * q;
  if (d == 0.0) throw SingularityError("perlick_f_squared: conformal factor is singular");
  return 4.0 / (rtilde * rtilde * d * d);
}

double perlick_radial_inverse(const PerlickParams& params, double rtilde) {
  detail::require(rtilde > 0.0, "perlick_radial_inverse: radius must be positive");
  const double q = params.power(rtilde);
  const double d = 1.0 - params.K() * q * q;
  detail::require(d > 0.0, "perlick_radial_inverse: rtilde outside the image of the map");
  return 2.0 * q / d;
}

PluckerLine plucker_from_points(const Point3& x, const Point3& y) {
  require_finite(x, "plucker_from_points");
  require_finite(y, "plucker_from_points");
  detail::require(x != y, "plucker_from_points: the two points coincide");
  PluckerLine l;
  l.p01 = y[0] - x[0];
  l.p02 = y[1] - x[1];
  l.p03 = y[2] - x[2];
  l.p23 = x[1] * y[2] - x[2] * y[1];
  l.p31 = x[2] * y[0] - x[0] * y[2];
  l.p12 = x[0] * y[1] - x[1] * y[0];
  return l;
}

Point4 plucker_incidence(const PluckerLine& l, const Point4& q) {
  // homogeneous index 0 is the weight
  const double q0 = q[3], q1 = q[0], q2 = q[1], q3 = q[2];
  const double p13 = -l.p31;
  return {
      l.p23 * q1 - p13 * q2 + l.p12 * q3,
      -l.p23 * q0 + l.p03 * q2 - l.p02 * q3,
      p13 * q0 - l.p03 * q1 + l.p01 * q3,
      -l.p12 * q0 + l.p02 * q1 - l.p01 * q2,
  };
}

std::array<So4Matrix, 6> so4_basis() {
  return {unit_rotation(1, 2), unit_rotation(2, 0), unit_rotation(0, 1),
          unit_rotation(0, 3), unit_rotation(1, 3), unit_rotation(2, 3)};
}

So4Matrix so4_commutator(const So4Matrix& a, const So4Matrix& b) {
  So4Matrix c{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) c[i][j] += a[i][k] * b[k][j] - b[i][k] * a[k][j];
  return c;
}

So4Matrix so4_add(const So4Matrix& a, const So4Matrix& b) {
  So4Matrix c{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) c[i][j] = a[i][j] + b[i][j];
  return c;
}

So4Matrix so4_sub(const So4Matrix& a, const So4Matrix& b) {
  So4Matrix c{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) c[i][j] = a[i][j] - b[i][j];
  return c;
}

std::array<int, 6> so4_decompose(const So4Matrix& m) {
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      detail::require(m[i][j] == -m[j][i], "so4_decompose: matrix is not antisymmetric");
  // each basis element owns one (i, j) slot with entry +1 below the diagonal
  // or above it; read the coefficient from the slot where the basis has +1
  const auto basis = so4_basis();
  std::array<int, 6> c{};
  for (int k = 0; k < 6; ++k)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        if (basis[k][i][j] == 1) c[k] = m[i][j];
  return c;
}

double conformal_christoffel_check(const ScalarField& rho, std::span<const double> point, int d,
                                   double h) {
  detail::require(d >= 2 && d <= 4, "conformal_christoffel_check: dimension must be 2, 3 or 4");
  detail::require(static_cast<int>(point.size()) == d,
                  "conformal_christoffel_check: point dimension mismatch");
  detail::require(h > 0.0, "conformal_christoffel_check: step must be positive");
  std::vector<double> x(point.begin(), point.end());
  auto eval = [&](const std::vector<double>& y) {
    const double v = rho(y);
    detail::require(std::isfinite(v) && v > 0.0, "conformal_christoffel_check: rho must be positive");
    return v;
  };
  const double rho0 = eval(x);

  // dg[a][b][c] = d_a g_bc ; drho[a] = d_a rho
  std::vector<double> dg(static_cast<std::size_t>(d * d * d), 0.0);
  std::vector<double> drho(d, 0.0);
  for (int a = 0; a < d; ++a) {
    auto xp = x, xm = x;
    xp[a] += h;
    xm[a] -= h;
    const double rp = eval(xp);
    const double rm = eval(xm);
    drho[a] = (rp - rm) / (2.0 * h);
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c) {
        const double gp = (b == c) ? 1.0 / rp : 0.0;
        const double gm = (b == c) ? 1.0 / rm : 0.0;
        dg[(a * d + b) * d + c] = (gp - gm) / (2.0 * h);
      }
  }
  auto dG = [&](int a, int b, int c) { return dg[(a * d + b) * d + c]; };
  // inverse metric rho delta
  double residual = 0.0;
  for (int i = 0; i < d; ++i) {
    double contraction = 0.0;
    for (int k = 0; k < d; ++k)
      for (int l = 0; l < d; ++l) {
        if (k != l) continue;  // g^kl diagonal
        double gamma = 0.0;
        for (int m = 0; m < d; ++m) {
          if (m != i) continue;  // g^im diagonal
          gamma += 0.5 * rho0 * (dG(k, m, l) + dG(l, m, k) - dG(m, k, l));
        }
        contraction += rho0 * gamma;
      }
    residual += std::fabs(contraction - 0.5 * (d - 2) * drho[i]);
  }
  return residual;
}

}  // namespace bertrand::geometry
