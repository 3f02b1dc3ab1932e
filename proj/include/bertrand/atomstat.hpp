#pragma once

// Thomas-Fermi statistical atom and the Tietz closed-form approximation.
// Lengths in units of a0 unless stated.

#include <vector>

namespace bertrand::atomstat {

struct TfSolution {
  std::vector<double> grid;  ///< x = r / a, increasing from 0
  std::vector<double> phi;
  std::vector<double> dphi;  ///< phi'(x)
  double slope0 = 0.0;       ///< phi'(0)
  double x_max = 0.0;
  double boundary_value = 0.0;  ///< phi(x_max)
};

/// phi'' = phi^{3/2} / sqrt(x), phi(0) = 1, phi(x_max) = 0, by shooting on
/// phi'(0). Integrates in t = sqrt(x), where the equation is regular:
/// dphi/dt = 2 t psi, dpsi/dt = 2 phi^{3/2}, with `mesh` fixed RK4 steps.
/// Throws DomainError for x_max <= 10 and NumericError if the slope window
/// [-2, -1] does not bracket or |phi(x_max)| ends above tol.
TfSolution solve_tf(double x_max = 50.0, double tol = 1e-6, int mesh = 20000);

/// phi at any x in [0, x_max] by cubic Hermite interpolation.
double tf_phi_at(const TfSolution& sol, double x);

struct TietzModel {
  double alpha = 0.53625;
  double a0 = 1.0;
};

/// 1 / (1 + alpha x)^2.
double tietz_phi(double x, const TietzModel& model = {});

/// 0.8853 a0 Z^{-1/3}.
double screening_length(double Z, double a0 = 1.0);

/// -(Z e / r) tietz_phi(r / a) with a = screening_length(Z).
double tietz_potential(double r, double Z, const TietzModel& model = {}, double e = 1.0);

/// Z^2 / screening_length(Z); grows as Z^{7/3}.
double energy_scale(double Z, double a0 = 1.0);

/// max |tietz_phi - phi_TF| over grid points with x in [x_lo, x_hi].
double max_tietz_deviation(const TfSolution& sol, double x_lo, double x_hi,
                           const TietzModel& model = {});

/// 2 (2l + 1)(6 Z)^{1/3} - 2 (2l + 1)^2; negative means no electrons of this l.
double n_l_count(double Z, int l);

/// 0.169 (2l + 1)^3 before rounding.
double first_z_raw(int l);

/// max(1, round-half-up(first_z_raw(l))).
int first_z_for_l(int l);

}  // namespace bertrand::atomstat
