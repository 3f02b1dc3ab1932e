#pragma once

// Radial Sturmian eigensolver. The energy is fixed and the coupling beta is
// quantized:
//
//   fish-eye family (E = 0):  u'' - l(l+1) u / r^2 + beta W(r) u = 0
//       W = 1 / (1 + r^2)^2          (gamma = 1)
//       W = 1 / (r (1 + r)^2)        (gamma = 1/2)
//   Coulomb Sturmian:         u'' - l(l+1) u / r^2 - k^2 u + 2 beta u / r = 0
//
// Both sides are shot towards a matching radius on a log-uniform mesh with
// fixed-step RK4. The boundary data come from convergent Frobenius series at
// r_min and, for the fish-eye family, from the series of the inverted problem
// at r_max (both weights are invariant under r -> 1/r, u -> r u(1/r)). The
// mismatch is measured by Pruefer angles, which makes the shooting function
// monotone in beta and ties the k-th root to k interior nodes.

#include <vector>

namespace bertrand::sturm {

struct RadialProblem {
  double gamma = 1.0;  ///< 1 or 1/2
  int l = 0;
  double a = 1.0;  ///< length scale; the couplings do not depend on it
  double r_min = 1e-6;
  double r_max = 200.0;
  int mesh = 20000;  ///< RK4 steps across [r_min, r_max]; rounded up to even
  double match_r = 1.0;
  double beta_max = 1e4;

  /// Throws UnsupportedModelError for gamma not in {1, 1/2} and DomainError
  /// for inconsistent radii or mesh < 1000.
  void validate() const;
};

struct CoulombProblem {
  double k = 1.0;
  int l = 0;
  double r_min = 1e-6;
  double r_max = 0.0;  ///< 0 selects (2 max(n, l + 12) + 40) / k, n the highest state
  int mesh = 40000;
  double match_r = 0.0;  ///< 0 selects (l + 1) / k
  double beta_max = 1e4;

  void validate() const;
};

struct CouplingEntry {
  int nodes;
  double beta;
};

struct CouplingSpectrum {
  std::vector<CouplingEntry> entries;
};

struct SturmianSolution {
  double beta = 0.0;
  std::vector<double> r;
  std::vector<double> u;  ///< unit norm under the problem's weight
  int node_count = 0;
};

/// The `count` lowest couplings; entry k has k interior nodes.
/// Throws NumericError when a root cannot be bracketed below beta_max.
CouplingSpectrum solve_fisheye_couplings(const RadialProblem& problem, int count);

/// The coupling with exactly `nodes` interior nodes.
double solve_fisheye_coupling(const RadialProblem& problem, int nodes);

/// Couplings of the Coulomb Sturmian problem for n = l+1, ..., l+count.
CouplingSpectrum solve_coulomb_sturmian(double k, int l, int count);
CouplingSpectrum solve_coulomb_sturmian(const CoulombProblem& problem, int count);

/// Matched two-sided solution at beta, normalized with weight W. Throws
/// NotAnEigenvalueError if the Pruefer angles at the match point disagree by
/// more than `tol` modulo pi.
SturmianSolution eigenfunction(const RadialProblem& problem, double beta, double tol = 1e-6);
SturmianSolution coulomb_eigenfunction(const CoulombProblem& problem, double beta,
                                       double tol = 1e-6);

/// int u_a u_b W dr, including the analytic r^-l tail beyond r_max.
/// Throws DomainError if the solutions were sampled on different meshes.
double weighted_overlap(const RadialProblem& problem, const SturmianSolution& a,
                        const SturmianSolution& b);

/// int u_a u_b / r dr.
double weighted_overlap(const CoulombProblem& problem, const SturmianSolution& a,
                        const SturmianSolution& b);

/// Prufer mismatch F(beta) = theta_left(match) - theta_right(match), increasing
/// in beta; the coupling with k nodes solves F = k pi. Exposed for diagnostics.
double fisheye_shooting_function(const RadialProblem& problem, double beta);

}  // namespace bertrand::sturm
