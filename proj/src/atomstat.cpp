#include "bertrand/atomstat.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bertrand/error.hpp"

namespace bertrand::atomstat {

namespace {

enum class Outcome { crossed, positive };

struct Shot {
  Outcome outcome;
  std::vector<double> t, phi, psi;
};

double pow32(double v) { return v > 0.0 ? v * std::sqrt(v) : 0.0; }

// RK4 in t = sqrt(x) from (phi, psi) = (1, s). Stops at the first sign change
// of phi or once phi exceeds the blow-up cap.
Shot shoot(double slope, double t_max, int mesh, bool keep) {
  const double h = t_max / mesh;
  double phi = 1.0, psi = slope;
  Shot out{Outcome::positive, {}, {}, {}};
  if (keep) {
    out.t.reserve(mesh + 1);
    out.phi.reserve(mesh + 1);
    out.psi.reserve(mesh + 1);
    out.t.push_back(0.0);
    out.phi.push_back(phi);
    out.psi.push_back(psi);
  }
  for (int i = 0; i < mesh; ++i) {
    const double t = i * h;
    const double k1p = 2.0 * t * psi, k1s = 2.0 * pow32(phi);
    const double tm = t + 0.5 * h;
    const double p2 = phi + 0.5 * h * k1p, s2 = psi + 0.5 * h * k1s;
    const double k2p = 2.0 * tm * s2, k2s = 2.0 * pow32(p2);
    const double p3 = phi + 0.5 * h * k2p, s3 = psi + 0.5 * h * k2s;
    const double k3p = 2.0 * tm * s3, k3s = 2.0 * pow32(p3);
    const double p4 = phi + h * k3p, s4 = psi + h * k3s;
    const double k4p = 2.0 * (t + h) * s4, k4s = 2.0 * pow32(p4);
    phi += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
    psi += h / 6.0 * (k1s + 2.0 * k2s + 2.0 * k3s + k4s);
    if (phi < 0.0) {
      out.outcome = Outcome::crossed;
      return out;
    }
    if (phi > 10.0) return out;
    if (keep) {
      out.t.push_back(t + h);
      out.phi.push_back(phi);
      out.psi.push_back(psi);
    }
  }
  return out;
}

}  // namespace

TfSolution solve_tf(double x_max, double tol, int mesh) {
  detail::require(x_max > 10.0 && std::isfinite(x_max), "solve_tf: x_max must exceed 10");
  detail::require(tol > 0.0, "solve_tf: tolerance must be positive");
  detail::require(mesh >= 100, "solve_tf: mesh must be >= 100");
  const double t_max = std::sqrt(x_max);

  double lo = -2.0, hi = -1.0;
  if (shoot(lo, t_max, mesh, false).outcome != Outcome::crossed ||
      shoot(hi, t_max, mesh, false).outcome != Outcome::positive) {
    throw NumericError("solve_tf: slope window [-2, -1] does not bracket the solution");
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (shoot(mid, t_max, mesh, false).outcome == Outcome::crossed)
      lo = mid;
    else
      hi = mid;
  }

  // the upper end of the bracket keeps phi positive on the whole range
  Shot best = shoot(hi, t_max, mesh, true);
  if (best.t.size() != static_cast<std::size_t>(mesh) + 1) {
    std::ostringstream msg;
    msg << "solve_tf: converged slope " << hi << " does not reach x_max";
    throw NumericError(msg.str());
  }
  TfSolution sol;
  sol.slope0 = hi;
  sol.x_max = x_max;
  sol.grid.resize(best.t.size());
  for (std::size_t i = 0; i < best.t.size(); ++i) sol.grid[i] = best.t[i] * best.t[i];
  sol.grid.back() = x_max;
  sol.phi = std::move(best.phi);
  sol.dphi = std::move(best.psi);
  sol.boundary_value = sol.phi.back();
  if (!(std::fabs(sol.boundary_value) <= tol)) {
    std::ostringstream msg;
    msg << "solve_tf: boundary value " << sol.boundary_value << " exceeds tolerance " << tol;
    throw NumericError(msg.str());
  }
  return sol;
}

double tf_phi_at(const TfSolution& sol, double x) {
  detail::require(!sol.grid.empty(), "tf_phi_at: empty solution");
  detail::require(x >= 0.0 && x <= sol.x_max, "tf_phi_at: x outside [0, x_max]");
  auto it = std::upper_bound(sol.grid.begin(), sol.grid.end(), x);
  std::size_t i = (it == sol.grid.begin()) ? 0 : static_cast<std::size_t>(it - sol.grid.begin()) - 1;
  if (i + 1 >= sol.grid.size()) return sol.phi.back();
  const double x0 = sol.grid[i], x1 = sol.grid[i + 1];
  const double h = x1 - x0;
  const double s = (x - x0) / h;
  const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
  const double h10 = s * (1 - s) * (1 - s);
  const double h01 = s * s * (3 - 2 * s);
  const double h11 = s * s * (s - 1);
  return h00 * sol.phi[i] + h10 * h * sol.dphi[i] + h01 * sol.phi[i + 1] + h11 * h * sol.dphi[i + 1];
}

double tietz_phi(double x, const TietzModel& model) {
  detail::require(x >= 0.0 && std::isfinite(x), "tietz_phi: x must be non-negative");
  const double d = 1.0 + model.alpha * x;
  return 1.0 / (d * d);
}

double screening_length(double Z, double a0) {
  detail::require(Z > 0.0 && std::isfinite(Z), "screening_length: Z must be positive");
  detail::require(a0 > 0.0, "screening_length: a0 must be positive");
  return 0.8853 * a0 / std::cbrt(Z);
}

double tietz_potential(double r, double Z, const TietzModel& model, double e) {
  detail::require(r > 0.0 && std::isfinite(r), "tietz_potential: radius must be positive");
  const double a = screening_length(Z, model.a0);
  return -(Z * e / r) * tietz_phi(r / a, model);
}

double energy_scale(double Z, double a0) { return Z * Z / screening_length(Z, a0); }

double max_tietz_deviation(const TfSolution& sol, double x_lo, double x_hi,
                           const TietzModel& model) {
  detail::require(x_lo <= x_hi, "max_tietz_deviation: empty range");
  double worst = 0.0;
  for (std::size_t i = 0; i < sol.grid.size(); ++i) {
    const double x = sol.grid[i];
    if (x < x_lo || x > x_hi) continue;
    worst = std::max(worst, std::fabs(tietz_phi(x, model) - sol.phi[i]));
  }
  return worst;
}

double n_l_count(double Z, int l) {
  detail::require(Z > 0.0, "n_l_count: Z must be positive");
  detail::require(l >= 0, "n_l_count: l must be non-negative");
  const double g = 2.0 * l + 1.0;
  return 2.0 * g * std::cbrt(6.0 * Z) - 2.0 * g * g;
}

double first_z_raw(int l) {
  detail::require(l >= 0, "first_z_for_l: l must be non-negative");
  const double g = 2.0 * l + 1.0;
  return 0.169 * g * g * g;
}

int first_z_for_l(int l) {
  return std::max(1, static_cast<int>(std::floor(first_z_raw(l) + 0.5)));
}

}  // namespace bertrand::atomstat
