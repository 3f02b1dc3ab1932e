#pragma once

// Maps between flat space and spheres, and the small algebraic facts the
// fish-eye / Kepler correspondence rests on. Unit sphere, north-pole projection.

#include <array>
#include <functional>
#include <span>
#include <vector>

namespace bertrand::geometry {

using Point2 = std::array<double, 2>;
using Point3 = std::array<double, 3>;
using Point4 = std::array<double, 4>;

// ---------------------------------------------------------------------------
// Stereographic projection

/// s_i = 2 x_i / (r^2 + 1), s_4 = (1 - r^2) / (1 + r^2).
Point4 stereo_r3_to_s3(const Point3& x);

/// x_i = s_i / (1 + s_4). Throws SingularityError at s_4 = -1 and
/// DomainError when |s| differs from 1 by more than 1e-10.
Point3 stereo_s3_to_r3(const Point4& s);

/// Polar angle alpha on S^3 of the image of x, with cos(alpha) = s_4.
double stereo_polar_angle(const Point3& x);

/// Projection onto the sphere of radius a seen from distance b:
/// (xi, eta, zeta, tau) = (2abx, 2aby, 2abz, a(b^2 - r^2)) / (b^2 + r^2).
Point4 stereo_scaled(const Point3& x, double a, double b);

/// Inverse of stereo_scaled: x = b (xi, eta, zeta) / (a + tau).
Point3 stereo_scaled_inverse(const Point4& s, double a, double b);

/// Image of the antipode of stereo_scaled(x): -b^2 x / r^2.
Point3 antipodal_image(const Point3& x, double b);

// ---------------------------------------------------------------------------
// Conformal factors

enum class ConformalConvention {
  quarter,  ///< (1 / (1 + |x|^2 / 4))^2, projection of x / 2
  unit,     ///< 4 / (1 + |x|^2)^2, projection of x
};

/// Conformal factor of the round metric in stereographic coordinates.
/// Accepts 2 or 3 coordinates.
double conformal_factor_sphere(std::span<const double> x,
                               ConformalConvention conv = ConformalConvention::quarter);

/// Pullback of the Euclidean R^4 metric through the projection (in the given
/// convention) at x, by central differences of step h.
std::array<std::array<double, 3>, 3> metric_pullback(const Point3& x, ConformalConvention conv,
                                                     double h = 1e-4);

/// n(r) = (a/r) n0 / ((r/a)^-gamma + (r/a)^gamma). At r = 0 the limit is used:
/// n0 for gamma = 1, 0 for gamma > 1; gamma < 1 diverges (SingularityError).
double refractive_index(double r, double gamma, double n0 = 1.0, double a = 1.0);

// ---------------------------------------------------------------------------
// Hopf map

/// S^3 -> S^2 through the ratio z1 / z2 with z1 = s1 + i s2, z2 = s3 + i s4.
/// z1 = 0 lands on (0, 0, -1) and z2 = 0 on (0, 0, 1).
Point3 hopf_map(const Point4& s);

// ---------------------------------------------------------------------------
// Inversion in the unit sphere

/// x / |x|^2. Throws SingularityError at the origin.
Point3 inversion(const Point3& x);

/// |x|^2 p - 2 x (x . p): the momentum that makes the inversion canonical.
Point3 inversion_momentum(const Point3& x, const Point3& p);

using Matrix6 = std::array<std::array<double, 6>, 6>;

/// Jacobian of (x, p) -> (inversion(x), inversion_momentum(x, p)) by central
/// differences of step h.
Matrix6 inversion_jacobian(const Point3& x, const Point3& p, double h = 1e-5);

/// max |J^T Omega J - Omega| with Omega the standard symplectic form.
double symplectic_defect(const Matrix6& jac);

// ---------------------------------------------------------------------------
// Perlick type-I radial map

/// Exponent beta = num / den kept as an exact pair, with curvature K and
/// potential offset G.
class PerlickParams {
 public:
  /// Throws DomainError unless num > 0 and den > 0.
  PerlickParams(int beta_num, int beta_den, double K, double G = 0.0);

  int beta_num() const { return num_; }
  int beta_den() const { return den_; }
  double beta() const { return static_cast<double>(num_) / den_; }
  double K() const { return K_; }
  double G() const { return G_; }

  /// q^beta for q > 0, via exp/log with the exact rational exponent.
  double power(double q) const;
  /// q^(1/beta) for q > 0.
  double root(double q) const;

 private:
  int num_;
  int den_;
  double K_;
  double G_;
};

struct RadialMap {
  double rtilde;
  double f_squared;
};

/// rtilde with rtilde^beta = r / (1 + sqrt(1 + K r^2)) and the conformal
/// factor f^2(rtilde). Requires r > 0 and 1 + K r^2 > 0.
RadialMap perlick_radial_map(const PerlickParams& params, double r);

/// f^2(rtilde) = (4 / rtilde^2) / (rtilde^-beta - K rtilde^beta)^2.
double perlick_f_squared(const PerlickParams& params, double rtilde);

/// r recovered from rtilde: r = 2 q / (1 - K q^2) with q = rtilde^beta.
double perlick_radial_inverse(const PerlickParams& params, double rtilde);

// ---------------------------------------------------------------------------
// Line geometry

struct PluckerLine {
  double p01 = 0, p02 = 0, p03 = 0, p23 = 0, p31 = 0, p12 = 0;

  /// p01 p23 + p02 p31 + p03 p12; zero for every genuine line.
  double relation() const { return p01 * p23 + p02 * p31 + p03 * p12; }
};

/// Line through x and y. Throws DomainError when x == y.
PluckerLine plucker_from_points(const Point3& x, const Point3& y);

/// Antisymmetric 4x4 incidence matrix of the line applied to the homogeneous
/// point q = (x, y, z, w). All four components vanish iff q lies on the line.
Point4 plucker_incidence(const PluckerLine& line, const Point4& q);

// ---------------------------------------------------------------------------
// so(4)

using So4Matrix = std::array<std::array<int, 4>, 4>;

/// A1, A2, A3 (rotations of the first three axes) followed by B1, B2, B3
/// (rotations mixing axis i with the fourth).
std::array<So4Matrix, 6> so4_basis();

So4Matrix so4_commutator(const So4Matrix& a, const So4Matrix& b);
So4Matrix so4_add(const So4Matrix& a, const So4Matrix& b);
So4Matrix so4_sub(const So4Matrix& a, const So4Matrix& b);

/// Coefficients of m in so4_basis(). Throws DomainError if m is not
/// antisymmetric.
std::array<int, 6> so4_decompose(const So4Matrix& m);

// ---------------------------------------------------------------------------
// Conformally flat Christoffel identity

using ScalarField = std::function<double(std::span<const double>)>;

/// For g_ij = delta_ij / rho in d dimensions (2 <= d <= 4), evaluates
/// sum_i |g^kl Gamma^i_kl - ((d - 2) / 2) d_i rho| with every derivative taken
/// by central differences of step h. Throws DomainError if rho <= 0 anywhere
/// on the stencil.
double conformal_christoffel_check(const ScalarField& rho, std::span<const double> point, int d,
                                   double h = 1e-4);

}  // namespace bertrand::geometry
