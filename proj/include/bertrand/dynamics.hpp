#pragma once

// Planar orbits of the screened-Coulomb (Tietz) and Perlick type-I systems,
// with the closure / self-intersection / period analysis.

#include <optional>
#include <string_view>
#include <vector>

#include "bertrand/geometry.hpp"

namespace bertrand::dynamics {

enum class OrbitModel { tietz_newtonian, perlick_I };

std::string_view orbit_model_name(OrbitModel m);

struct OrbitParams {
  OrbitModel model = OrbitModel::tietz_newtonian;
  double Z = 1.0;
  double a = 1.0;
  double L = 1.0;
  geometry::PerlickParams perlick{1, 1, 0.0, 0.0};  ///< used by perlick_I only

  /// Z a / L^2 - 1.
  double delta() const { return Z * a / (L * L) - 1.0; }

  /// Tietz parameters with L chosen so that delta() == delta.
  static OrbitParams tietz(double delta, double Z = 1.0, double a = 1.0);

  /// Throws DomainError unless Z, a, L > 0.
  void validate() const;
};

/// Perihelion x = delta - sqrt(delta^2 - 1) of the zero-energy Tietz orbit.
/// Requires delta >= 1.
double perihelion_x(double delta);

/// pi (delta + 1)(3 delta - 1) a^2 / L.
double tietz_period_formula(const OrbitParams& params);

struct OrbitState {
  double r;
  double phi;
  double p_r;
};

/// Energy of the reduced planar system at the given state.
double orbit_energy(const OrbitParams& params, double r, double p_r);

struct Sample {
  double t;
  double r;
  double phi;
  double p_r;
};

enum class TrajectoryStatus { completed, collision, escape };

struct Trajectory {
  std::vector<Sample> samples;  ///< accepted integrator nodes, first = launch
  double energy0 = 0.0;
  double tol = 1e-10;
  TrajectoryStatus status = TrajectoryStatus::completed;
};

/// Launch at r = a x0, phi = 0, p_r = 0 and integrate for t_max. Adaptive
/// Dormand-Prince 5(4) with PI step control; the local tolerance is set so
/// that |H(t) - H(0)| stays below tol (1 + |H(0)|). Collision (r -> 0) and
/// escape (r > 1e6 a) end the run early with the matching status.
Trajectory integrate_orbit(const OrbitParams& params, double x0, double t_max, double tol = 1e-10);

/// Same flow from an arbitrary state; a negative duration runs backwards.
Trajectory integrate_from(const OrbitParams& params, const OrbitState& start, double duration,
                          double tol = 1e-10);

/// State at time t by one Dormand-Prince step from the nearest earlier node.
OrbitState state_at(const OrbitParams& params, const Trajectory& traj, double t);

struct OrbitAnalysis {
  bool closed = false;
  std::optional<double> period;
  int self_intersections = 0;
  double orbit_residual = 0.0;
  double energy_drift = 0.0;
  double closure_error = 0.0;  ///< |(r, p_r) - (r0, p_r0)| at the accepted return
};

/// Closure: the first crossing of phi0 + 2 pi k at which (r, p_r) returns to
/// the launch values within 1e-6 defines the period. Self-intersections are
/// counted on a 4096-point resampling of one period (or of the whole run if
/// the orbit did not close). The orbit residual assumes an apsidal launch.
OrbitAnalysis analyze(const Trajectory& traj, const OrbitParams& params);

/// Residual of the closed-orbit equation at one state:
/// Tietz: |x + 1/x - (delta + 1) - (delta - 1) cos phi|, x = r / a.
/// Perlick: |sqrt(r^-2 + K) - (1 + e cos(beta phi)) / (2 L^2)| with e fixed
/// by the launch state.
double orbit_equation_residual(const OrbitParams& params, const OrbitState& launch,
                               const OrbitState& state);

/// Polyline self-intersections: pairs of non-adjacent segments that cross
/// properly. `closed` joins the last point to the first.
int count_self_intersections(const std::vector<std::array<double, 2>>& pts, bool closed);

// ---------------------------------------------------------------------------
// Perlick type-I Hamiltonians

/// beta^2 (1 + K r^2) p_r^2 + L^2 / r^2 - sqrt(r^-2 + K) + G.
double perlick_hamiltonian(const geometry::PerlickParams& p, double r, double p_r, double L);

/// Momentum conjugate to rtilde: p_rtilde = p_r beta r sqrt(1 + K r^2) / rtilde.
double perlick_reduced_momentum(const geometry::PerlickParams& p, double r, double p_r);

/// (1/4) rt^2 (rt^-beta - K rt^beta)^2 (p_rt^2 + L^2 / rt^2)
///   - (1/2)(rt^-beta + K rt^beta) + G.
double perlick_reduced_hamiltonian(const geometry::PerlickParams& p, double rtilde,
                                   double p_rtilde, double L);

/// rt^2 (rt^-beta - K rt^beta)^2.
double perlick_null_kinetic_factor(const geometry::PerlickParams& p, double rtilde);

/// perlick_null_kinetic_factor * |p|^2 + alpha.
double perlick_null_hamiltonian(const geometry::PerlickParams& p, double rtilde, double p_squared,
                                double alpha);

/// -(1/2)(r^-beta + K r^beta) + G.
double stackel_factor(const geometry::PerlickParams& p, double rtilde);

/// Null Hamiltonian divided by stackel_factor. Throws SingularityError where
/// the factor vanishes.
double stackel_type2(const geometry::PerlickParams& p, double rtilde, double p_squared,
                     double alpha);

}  // namespace bertrand::dynamics
