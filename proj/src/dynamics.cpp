#include "bertrand/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "bertrand/error.hpp"

namespace bertrand::dynamics {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kClosureTol = 1e-6;
constexpr int kResample = 4096;

using Vec = std::array<double, 3>;  // r, phi, p_r

Vec field(const OrbitParams& p, const Vec& y) {
  const double r = y[0];
  const double pr = y[2];
  const double L = p.L;
  if (p.model == OrbitModel::tietz_newtonian) {
    const double x = r / p.a;
    // dV/dr for V = -Z / (a x (1 + x)^2)
    const double dV = p.Z / (p.a * p.a) * (1.0 + 3.0 * x) / (x * x * std::pow(1.0 + x, 3));
    return {pr, L / (r * r), L * L / (r * r * r) - dV};
  }
  const auto& pp = p.perlick;
  const double b2 = pp.beta() * pp.beta();
  const double K = pp.K();
  const double w = std::sqrt(1.0 / (r * r) + K);
  return {2.0 * b2 * (1.0 + K * r * r) * pr, 2.0 * L / (r * r),
          -2.0 * b2 * K * r * pr * pr + 2.0 * L * L / (r * r * r) - 1.0 / (r * r * r * w)};
}

struct Step {
  Vec y;
  Vec err;
};

// One Dormand-Prince 5(4) step.
Step dopri_step(const OrbitParams& p, const Vec& y, double h) {
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                          a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                          a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                          e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
  auto add = [](const Vec& base, std::initializer_list<std::pair<double, const Vec*>> terms) {
    Vec out = base;
    for (const auto& [c, v] : terms)
      for (int i = 0; i < 3; ++i) out[i] += c * (*v)[i];
    return out;
  };
  const Vec k1 = field(p, y);
  const Vec k2 = field(p, add(y, {{h * a21, &k1}}));
  const Vec k3 = field(p, add(y, {{h * a31, &k1}, {h * a32, &k2}}));
  const Vec k4 = field(p, add(y, {{h * a41, &k1}, {h * a42, &k2}, {h * a43, &k3}}));
  const Vec k5 = field(p, add(y, {{h * a51, &k1}, {h * a52, &k2}, {h * a53, &k3}, {h * a54, &k4}}));
  const Vec k6 = field(
      p, add(y, {{h * a61, &k1}, {h * a62, &k2}, {h * a63, &k3}, {h * a64, &k4}, {h * a65, &k5}}));
  const Vec y5 =
      add(y, {{h * b1, &k1}, {h * b3, &k3}, {h * b4, &k4}, {h * b5, &k5}, {h * b6, &k6}});
  const Vec k7 = field(p, y5);
  Vec err{};
  for (int i = 0; i < 3; ++i)
    err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
  return {y5, err};
}

Vec to_vec(const Sample& s) { return {s.r, s.phi, s.p_r}; }

// Index of the last node at or before t in the direction of integration.
std::size_t node_before(const Trajectory& traj, double t) {
  const auto& s = traj.samples;
  const bool forward = s.size() < 2 || s.back().t >= s.front().t;
  std::size_t lo = 0, hi = s.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi + 1) / 2;
    const bool before = forward ? (s[mid].t <= t) : (s[mid].t >= t);
    if (before)
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

// Time in [s_i.t, s_{i+1}.t] at which phi reaches `target`.
double locate_phi(const OrbitParams& p, const Trajectory& traj, std::size_t i, double target) {
  const Sample& s0 = traj.samples[i];
  double lo = 0.0;
  double hi = traj.samples[i + 1].t - s0.t;
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (dopri_step(p, to_vec(s0), mid).y[1] < target)
      lo = mid;
    else
      hi = mid;
  }
  return s0.t + 0.5 * (lo + hi);
}

double cross2(double ax, double ay, double bx, double by) { return ax * by - ay * bx; }

bool proper_cross(const std::array<double, 2>& p1, const std::array<double, 2>& p2,
                  const std::array<double, 2>& q1, const std::array<double, 2>& q2) {
  const double d1 = cross2(q2[0] - q1[0], q2[1] - q1[1], p1[0] - q1[0], p1[1] - q1[1]);
  const double d2 = cross2(q2[0] - q1[0], q2[1] - q1[1], p2[0] - q1[0], p2[1] - q1[1]);
  const double d3 = cross2(p2[0] - p1[0], p2[1] - p1[1], q1[0] - p1[0], q1[1] - p1[1]);
  const double d4 = cross2(p2[0] - p1[0], p2[1] - p1[1], q2[0] - p1[0], q2[1] - p1[1]);
  return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

}  // namespace

std::string_view orbit_model_name(OrbitModel m) {
  return m == OrbitModel::tietz_newtonian ? "tietz_newtonian" : "perlick_I";
}

OrbitParams OrbitParams::tietz(double delta, double Z, double a) {
  detail::require(delta > -1.0, "OrbitParams::tietz: delta must exceed -1");
  OrbitParams p;
  p.Z = Z;
  p.a = a;
  p.L = std::sqrt(Z * a / (delta + 1.0));
  p.validate();
  return p;
}

void OrbitParams::validate() const {
  detail::require(Z > 0.0 && std::isfinite(Z), "OrbitParams: Z must be positive");
  detail::require(a > 0.0 && std::isfinite(a), "OrbitParams: a must be positive");
  detail::require(L > 0.0 && std::isfinite(L), "OrbitParams: L must be positive");
}

double perihelion_x(double delta) {
  // tolerate the rounding of delta recovered from L = sqrt(Z a / (delta + 1))
  detail::require(delta >= 1.0 - 1e-12, "perihelion_x: closed zero-energy orbits need delta >= 1");
  return delta - std::sqrt(std::max(0.0, delta * delta - 1.0));
}

double tietz_period_formula(const OrbitParams& p) {
  p.validate();
  const double d = p.delta();
  return kPi * (d + 1.0) * (3.0 * d - 1.0) * p.a * p.a / p.L;
}

double orbit_energy(const OrbitParams& p, double r, double p_r) {
  p.validate();
  detail::require(r > 0.0, "orbit_energy: radius must be positive");
  if (p.model == OrbitModel::tietz_newtonian) {
    const double x = r / p.a;
    const double V = -p.Z / (p.a * x * (1.0 + x) * (1.0 + x));
    return 0.5 * p_r * p_r + p.L * p.L / (2.0 * r * r) + V;
  }
  return perlick_hamiltonian(p.perlick, r, p_r, p.L);
}

Trajectory integrate_orbit(const OrbitParams& params, double x0, double t_max, double tol) {
  detail::require(x0 > 0.0 && std::isfinite(x0), "integrate_orbit: x0 must be positive");
  detail::require(t_max > 0.0, "integrate_orbit: t_max must be positive");
  return integrate_from(params, {params.a * x0, 0.0, 0.0}, t_max, tol);
}

Trajectory integrate_from(const OrbitParams& params, const OrbitState& start, double duration,
                          double tol) {
  params.validate();
  detail::require(start.r > 0.0 && std::isfinite(start.r), "integrate_from: radius must be positive");
  detail::require(std::isfinite(duration) && duration != 0.0, "integrate_from: duration must be nonzero");
  detail::require(tol > 0.0 && tol < 1e-2, "integrate_from: tolerance out of range");

  Trajectory traj;
  traj.tol = tol;
  traj.energy0 = orbit_energy(params, start.r, start.p_r);
  traj.samples.push_back({0.0, start.r, start.phi, start.p_r});

  // The local tolerance sits well below the requested energy tolerance so that
  // the accumulated error stays inside it.
  const double rtol = std::max(tol * 1e-3, 1e-15);
  const double atol = rtol;
  const double dir = duration > 0.0 ? 1.0 : -1.0;
  const double t_end = duration;
  Vec y{start.r, start.phi, start.p_r};
  double t = 0.0;
  double h = dir * std::min(std::fabs(duration), 1e-3 * std::max(params.a, start.r));
  double err_old = 1e-4;
  const double r_escape = 1e6 * params.a;
  const double r_collide = 1e-9 * params.a;

  for (long iter = 0; iter < 50'000'000; ++iter) {
    if (dir * (t_end - t) <= 0.0) break;
    if (dir * (t + h - t_end) > 0.0) h = t_end - t;
    Step st = dopri_step(params, y, h);
    double err = 0.0;
    bool finite = true;
    for (int i = 0; i < 3; ++i) {
      if (!std::isfinite(st.y[i])) finite = false;
      const double sc = atol + rtol * std::max(std::fabs(y[i]), std::fabs(st.y[i]));
      err += (st.err[i] / sc) * (st.err[i] / sc);
    }
    err = finite ? std::sqrt(err / 3.0) : 1e10;
    if (finite && st.y[0] <= 0.0) err = std::max(err, 10.0);
    if (err <= 1.0) {
      t += h;
      y = st.y;
      traj.samples.push_back({t, y[0], y[1], y[2]});
      if (y[0] > r_escape) {
        traj.status = TrajectoryStatus::escape;
        return traj;
      }
      if (y[0] < r_collide) {
        traj.status = TrajectoryStatus::collision;
        return traj;
      }
      const double fac = std::clamp(std::pow(err, 0.17) / std::pow(err_old, 0.04) / 0.9, 0.1, 5.0);
      h /= fac;
      err_old = std::max(err, 1e-4);
    } else {
      h /= std::min(5.0, std::pow(err, 0.17) / 0.9);
    }
    if (std::fabs(h) < 1e-14 * std::max(1.0, std::fabs(t))) {
      traj.status = TrajectoryStatus::collision;
      return traj;
    }
  }
  return traj;
}

OrbitState state_at(const OrbitParams& params, const Trajectory& traj, double t) {
  detail::require(!traj.samples.empty(), "state_at: empty trajectory");
  const std::size_t i = node_before(traj, t);
  const Sample& s = traj.samples[i];
  if (t == s.t) return {s.r, s.phi, s.p_r};
  const Vec y = dopri_step(params, to_vec(s), t - s.t).y;
  return {y[0], y[1], y[2]};
}

double orbit_equation_residual(const OrbitParams& p, const OrbitState& launch,
                               const OrbitState& state) {
  const double dphi = state.phi - launch.phi;
  if (p.model == OrbitModel::tietz_newtonian) {
    const double d = p.delta();
    const double x = state.r / p.a;
    return std::fabs(x + 1.0 / x - (d + 1.0) - (d - 1.0) * std::cos(dphi));
  }
  const auto& pp = p.perlick;
  const double L2 = p.L * p.L;
  const double w0 = std::sqrt(1.0 / (launch.r * launch.r) + pp.K());
  const double e = 2.0 * L2 * w0 - 1.0;
  const double w = std::sqrt(1.0 / (state.r * state.r) + pp.K());
  return std::fabs(w - (1.0 + e * std::cos(pp.beta() * dphi)) / (2.0 * L2));
}

int count_self_intersections(const std::vector<std::array<double, 2>>& pts, bool closed) {
  const std::size_t n = pts.size();
  if (n < 4) return 0;
  const std::size_t segs = closed ? n : n - 1;
  auto seg = [&](std::size_t i) { return std::pair{pts[i], pts[(i + 1) % n]}; };
  int count = 0;
  for (std::size_t i = 0; i < segs; ++i) {
    const auto [a1, a2] = seg(i);
    for (std::size_t j = i + 2; j < segs; ++j) {
      if (closed && i == 0 && j == segs - 1) continue;  // adjacent through the seam
      const auto [b1, b2] = seg(j);
      if (proper_cross(a1, a2, b1, b2)) ++count;
    }
  }
  return count;
}

OrbitAnalysis analyze(const Trajectory& traj, const OrbitParams& params) {
  params.validate();
  detail::require(traj.samples.size() >= 2, "analyze: trajectory has fewer than two samples");
  detail::require(traj.samples.back().t > traj.samples.front().t,
                  "analyze: trajectory must run forward in time");
  const auto& s = traj.samples;
  const Sample& s0 = s.front();
  const OrbitState launch{s0.r, s0.phi, s0.p_r};

  OrbitAnalysis out;
  for (const auto& q : s) {
    out.energy_drift = std::max(out.energy_drift, std::fabs(orbit_energy(params, q.r, q.p_r) - traj.energy0));
    out.orbit_residual = std::max(out.orbit_residual, orbit_equation_residual(params, launch, {q.r, q.phi, q.p_r}));
  }

  // phi grows monotonically (L > 0); test each full turn for a return
  int turn = 1;
  double best = 0.0;
  for (std::size_t i = 0; i + 1 < s.size() && !out.closed; ++i) {
    while (s[i + 1].phi >= s0.phi + 2.0 * kPi * turn) {
      const double target = s0.phi + 2.0 * kPi * turn;
      if (s[i].phi > target) {
        ++turn;
        continue;
      }
      const double tc = locate_phi(params, traj, i, target);
      const OrbitState q = state_at(params, traj, tc);
      const double dist = std::hypot(q.r - s0.r, q.p_r - s0.p_r);
      if (dist <= kClosureTol) {
        out.closed = true;
        out.period = tc - s0.t;
        out.closure_error = dist;
        break;
      }
      best = (turn == 1) ? dist : std::min(best, dist);
      ++turn;
    }
  }
  if (!out.closed) out.closure_error = best;

  const double t_span = out.closed ? *out.period : (s.back().t - s0.t);
  std::vector<std::array<double, 2>> pts;
  pts.reserve(kResample);
  for (int i = 0; i < kResample; ++i) {
    const double t = s0.t + t_span * static_cast<double>(i) / kResample;
    const OrbitState q = state_at(params, traj, t);
    pts.push_back({q.r * std::cos(q.phi), q.r * std::sin(q.phi)});
  }
  if (!out.closed) {
    const Sample& e = s.back();
    pts.push_back({e.r * std::cos(e.phi), e.r * std::sin(e.phi)});
  }
  out.self_intersections = count_self_intersections(pts, out.closed);
  return out;
}

double perlick_hamiltonian(const geometry::PerlickParams& p, double r, double p_r, double L) {
  detail::require(r > 0.0, "perlick_hamiltonian: radius must be positive");
  const double s2 = 1.0 + p.K() * r * r;
  detail::require(s2 > 0.0, "perlick_hamiltonian: requires 1 + K r^2 > 0");
  const double b2 = p.beta() * p.beta();
  return b2 * s2 * p_r * p_r + L * L / (r * r) - std::sqrt(1.0 / (r * r) + p.K()) + p.G();
}

double perlick_reduced_momentum(const geometry::PerlickParams& p, double r, double p_r) {
  const auto map = geometry::perlick_radial_map(p, r);
  return p_r * p.beta() * r * std::sqrt(1.0 + p.K() * r * r) / map.rtilde;
}

double perlick_null_kinetic_factor(const geometry::PerlickParams& p, double rtilde) {
  detail::require(rtilde > 0.0, "perlick_null_kinetic_factor: radius must be positive");
  const double q = p.power(rtilde);
  const double d = 1.0 / q - p.K() * q;
  return rtilde * rtilde * d * d;
}

double perlick_reduced_hamiltonian(const geometry::PerlickParams& p, double rtilde,
                                   double p_rtilde, double L) {
  const double q = p.power(rtilde);
  const double p2 = p_rtilde * p_rtilde + L * L / (rtilde * rtilde);
  return 0.25 * perlick_null_kinetic_factor(p, rtilde) * p2 - 0.5 * (1.0 / q + p.K() * q) + p.G();
}

double perlick_null_hamiltonian(const geometry::PerlickParams& p, double rtilde, double p_squared,
                                double alpha) {
  detail::require(p_squared >= 0.0, "perlick_null_hamiltonian: |p|^2 must be non-negative");
  return perlick_null_kinetic_factor(p, rtilde) * p_squared + alpha;
}

double stackel_factor(const geometry::PerlickParams& p, double rtilde) {
  detail::require(rtilde > 0.0, "stackel_factor: radius must be positive");
  const double q = p.power(rtilde);
  return -0.5 * (1.0 / q + p.K() * q) + p.G();
}

double stackel_type2(const geometry::PerlickParams& p, double rtilde, double p_squared,
                     double alpha) {
  const double U = stackel_factor(p, rtilde);
  if (U == 0.0) throw SingularityError("stackel_type2: Staeckel factor vanishes at this radius");
  return perlick_null_hamiltonian(p, rtilde, p_squared, alpha) / U;
}

}  // namespace bertrand::dynamics
