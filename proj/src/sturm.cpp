#include "bertrand/sturm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "bertrand/error.hpp"

namespace bertrand::sturm {

namespace {

constexpr double kPi = std::numbers::pi;

enum class Kind { half, one, coulomb };

// Log-uniform mesh with the beta-independent parts of r^2 Q = A - beta B
// tabulated at nodes (even slots) and midpoints (odd slots).
struct Setup {
  Kind kind;
  int l;
  double a = 1.0;
  double k = 0.0;
  int steps = 0;
  int match = 0;
  double h = 0.0;
  double beta_max = 1e4;
  std::vector<double> r;
  std::vector<double> A;
  std::vector<double> B;
};

double fisheye_weight(Kind kind, double x) {
  if (kind == Kind::one) {
    const double d = 1.0 + x * x;
    return 1.0 / (d * d);
  }
  const double d = 1.0 + x;
  return 1.0 / (x * d * d);
}

// Weight of the orthogonality relation at radius r.
double overlap_weight(const Setup& s, double r) {
  if (s.kind == Kind::coulomb) return 1.0 / r;
  return fisheye_weight(s.kind, r / s.a) / (s.a * s.a);
}

void build_mesh(Setup& s, double r_min, double r_max, int mesh, double match_r) {
  s.steps = mesh + (mesh % 2);
  const double t0 = std::log(r_min);
  const double t1 = std::log(r_max);
  s.h = (t1 - t0) / s.steps;
  s.match = static_cast<int>(std::lround((std::log(match_r) - t0) / s.h));
  s.match = std::clamp(s.match, 1, s.steps - 1);
  const std::size_t slots = 2 * static_cast<std::size_t>(s.steps) + 1;
  s.r.resize(slots);
  s.A.resize(slots);
  s.B.resize(slots);
  const double ll = static_cast<double>(s.l) * (s.l + 1);
  for (std::size_t i = 0; i < slots; ++i) {
    const double r = std::exp(t0 + 0.5 * s.h * static_cast<double>(i));
    s.r[i] = r;
    if (s.kind == Kind::coulomb) {
      s.A[i] = ll + s.k * s.k * r * r;
      s.B[i] = 2.0 * r;
    } else {
      s.A[i] = ll;
      s.B[i] = r * r * fisheye_weight(s.kind, r / s.a) / (s.a * s.a);
    }
  }
}

// Frobenius coefficients c_0..c_K of u = x^{l+1} sum c_j x^j about the origin.
// The same coefficients describe u = sum c_j x^{-(j+l)} about infinity for the
// fish-eye weights.
std::vector<double> series_coefficients(const Setup& s, double beta, double x, int max_terms) {
  std::vector<double> c{1.0};
  double xp = 1.0;
  int small = 0;
  for (int j = 1; j < max_terms; ++j) {
    double rhs = 0.0;
    switch (s.kind) {
      case Kind::half:
        for (int i = 0; i <= j - 1; ++i) {
          const int w = j - 1 - i;
          rhs += ((w % 2) ? -1.0 : 1.0) * (w + 1) * c[i];
        }
        rhs *= -beta;
        break;
      case Kind::one:
        for (int w = 0; 2 * w <= j - 2; ++w) rhs += ((w % 2) ? -1.0 : 1.0) * (w + 1) * c[j - 2 - 2 * w];
        rhs *= -beta;
        break;
      case Kind::coulomb:
        rhs = -2.0 * beta * c[j - 1] + (j >= 2 ? s.k * s.k * c[j - 2] : 0.0);
        break;
    }
    c.push_back(rhs / (static_cast<double>(j) * (j + 2 * s.l + 1)));
    xp *= x;
    if (std::fabs(c.back()) * xp < 1e-19) {
      if (++small >= 4) return c;
    } else {
      small = 0;
    }
  }
  throw NumericError("sturm: boundary series did not converge; move r_min/r_max towards the boundary");
}

struct State {
  double u;
  double y;  // r u'
};

State left_start(const Setup& s, double beta) {
  const double x = (s.kind == Kind::coulomb) ? s.r.front() : s.r.front() / s.a;
  const auto c = series_coefficients(s, beta, x, 4000);
  double u = 0.0, y = 0.0, xp = 1.0;
  for (std::size_t j = 0; j < c.size(); ++j) {
    u += c[j] * xp;
    y += c[j] * (static_cast<double>(j) + s.l + 1) * xp;
    xp *= x;
  }
  return {u, y};
}

State right_start(const Setup& s, double beta) {
  const double r = s.r.back();
  if (s.kind == Kind::coulomb) return {1.0, -s.k * r + beta / s.k};
  const double x = s.a / r;
  const auto c = series_coefficients(s, beta, x, 4000);
  double u = 0.0, y = 0.0, xp = 1.0;
  for (std::size_t j = 0; j < c.size(); ++j) {
    const double term = c[j] * xp;
    u += term;
    y -= term * (static_cast<double>(j) + s.l);
    xp *= x;
  }
  return {u, y};
}

struct Segment {
  State end;
  int sign_changes = 0;
};

// RK4 from node `from` to node `to` (either direction). Optionally records u
// at every visited node into out[node].
Segment integrate(const Setup& s, double beta, int from, int to, State y0, std::vector<double>* out) {
  const int dir = (to > from) ? 1 : -1;
  const double h = dir * s.h;
  State st = y0;
  double last_sign = (st.u != 0.0) ? st.u : 0.0;
  int changes = 0;
  if (out) (*out)[from] = st.u;
  auto rhs = [&](std::size_t slot, double u, double y) {
    return State{y, y + (s.A[slot] - beta * s.B[slot]) * u};
  };
  for (int i = from; i != to; i += dir) {
    const std::size_t n0 = 2 * static_cast<std::size_t>(i);
    const std::size_t mid = n0 + dir;
    const std::size_t n1 = n0 + 2 * dir;
    const State k1 = rhs(n0, st.u, st.y);
    const State k2 = rhs(mid, st.u + 0.5 * h * k1.u, st.y + 0.5 * h * k1.y);
    const State k3 = rhs(mid, st.u + 0.5 * h * k2.u, st.y + 0.5 * h * k2.y);
    const State k4 = rhs(n1, st.u + h * k3.u, st.y + h * k3.y);
    st.u += h / 6.0 * (k1.u + 2.0 * k2.u + 2.0 * k3.u + k4.u);
    st.y += h / 6.0 * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y);
    if (st.u != 0.0) {
      if (last_sign != 0.0 && (st.u > 0.0) != (last_sign > 0.0)) ++changes;
      last_sign = st.u;
    }
    const double big = std::max(std::fabs(st.u), std::fabs(st.y));
    if (big > 1e150) {
      st.u *= 1e-150;
      st.y *= 1e-150;
      if (out)
        for (int j = from; j != i + dir; j += dir) (*out)[j] *= 1e-150;
    }
    if (out) (*out)[i + dir] = st.u;
  }
  return {st, changes};
}

double line_angle(const State& st) {
  double t = std::atan2(st.u, st.y);
  if (t < 0.0) t += kPi;
  if (t >= kPi) t -= kPi;
  return t;
}

double shooting_function(const Setup& s, double beta) {
  const Segment left = integrate(s, beta, 0, s.match, left_start(s, beta), nullptr);
  const Segment right = integrate(s, beta, s.steps, s.match, right_start(s, beta), nullptr);
  const double theta_l = left.sign_changes * kPi + line_angle(left.end);
  const double theta_r = line_angle(right.end) - right.sign_changes * kPi;
  return theta_l - theta_r;
}

double find_coupling(const Setup& s, int nodes, double lo) {
  const double target = nodes * kPi;
  double hi = std::max(2.0 * lo, 1.0);
  while (shooting_function(s, hi) < target) {
    lo = hi;
    hi *= 2.0;
    if (hi > s.beta_max) {
      std::ostringstream msg;
      msg << "sturm: no coupling with " << nodes << " nodes found in (0, " << s.beta_max
          << "); last window [" << lo << ", " << hi << "]";
      throw NumericError(msg.str());
    }
  }
  for (int it = 0; it < 200 && hi - lo > 4e-16 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (shooting_function(s, mid) < target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

Setup make_setup(const RadialProblem& p) {
  p.validate();
  Setup s;
  s.kind = (p.gamma == 1.0) ? Kind::one : Kind::half;
  s.l = p.l;
  s.a = p.a;
  s.beta_max = p.beta_max;
  build_mesh(s, p.r_min, p.r_max, p.mesh, p.match_r);
  return s;
}

Setup make_setup(const CoulombProblem& p, int highest_n) {
  p.validate();
  Setup s;
  s.kind = Kind::coulomb;
  s.l = p.l;
  s.k = p.k;
  s.beta_max = p.beta_max;
  // the default outer radius only grows past n = l + 12, so eigenfunctions of
  // the lower states share one mesh
  const int n_cap = std::max(highest_n, p.l + 12);
  const double r_max = p.r_max > 0.0 ? p.r_max : (2.0 * n_cap + 40.0) / p.k;
  const double match = p.match_r > 0.0 ? p.match_r : (p.l + 1.0) / p.k;
  detail::require(p.r_min < match && match < r_max, "CoulombProblem: need r_min < match_r < r_max");
  build_mesh(s, p.r_min, r_max, p.mesh, match);
  return s;
}

double simpson_overlap(const Setup& s, const std::vector<double>& ua, const std::vector<double>& ub) {
  // int f dr = int f r dt on the uniform t-mesh
  double sum = 0.0;
  for (int i = 0; i <= s.steps; ++i) {
    const double r = s.r[2 * static_cast<std::size_t>(i)];
    const double f = ua[i] * ub[i] * overlap_weight(s, r) * r;
    const double c = (i == 0 || i == s.steps) ? 1.0 : ((i % 2) ? 4.0 : 2.0);
    sum += c * f;
  }
  sum *= s.h / 3.0;
  if (s.kind != Kind::coulomb) {
    // u ~ C r^-l and W ~ a^{p-2} r^-p beyond r_max
    const int p = (s.kind == Kind::one) ? 4 : 3;
    const double R = s.r.back();
    sum += ua.back() * ub.back() * std::pow(s.a, p - 2) * std::pow(R, 1 - p) / (2.0 * s.l + p - 1);
  }
  return sum;
}

SturmianSolution matched_solution(const Setup& s, double beta, double tol) {
  std::vector<double> u(static_cast<std::size_t>(s.steps) + 1, 0.0);
  std::vector<double> ur(u.size(), 0.0);
  const Segment left = integrate(s, beta, 0, s.match, left_start(s, beta), &u);
  const Segment right = integrate(s, beta, s.steps, s.match, right_start(s, beta), &ur);
  const State L = left.end;
  const State R = right.end;
  const double nl = std::hypot(L.u, L.y);
  const double nr = std::hypot(R.u, R.y);
  const double mismatch = std::fabs(L.u * R.y - L.y * R.u) / (nl * nr);
  if (!(mismatch <= tol)) {
    std::ostringstream msg;
    msg << "sturm: beta = " << beta << " is not an eigenvalue (angle mismatch " << mismatch << ")";
    throw NotAnEigenvalueError(msg.str());
  }
  const double factor = (L.u * R.u + L.y * R.y) / (nr * nr);
  for (int i = s.match + 1; i <= s.steps; ++i) u[i] = factor * ur[i];

  SturmianSolution sol;
  sol.beta = beta;
  const double norm = std::sqrt(simpson_overlap(s, u, u));
  sol.r.resize(u.size());
  sol.u.resize(u.size());
  double last = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    sol.r[i] = s.r[2 * i];
    sol.u[i] = u[i] / norm;
    if (sol.u[i] != 0.0) {
      if (last != 0.0 && (sol.u[i] > 0.0) != (last > 0.0)) ++sol.node_count;
      last = sol.u[i];
    }
  }
  return sol;
}

void require_same_mesh(const Setup& s, const SturmianSolution& a, const SturmianSolution& b) {
  const std::size_t n = static_cast<std::size_t>(s.steps) + 1;
  const bool ok = a.u.size() == n && b.u.size() == n && a.r.size() == n && b.r.size() == n &&
                  a.r.front() == s.r.front() && b.r.front() == s.r.front() &&
                  a.r.back() == s.r.back() && b.r.back() == s.r.back();
  detail::require(ok, "weighted_overlap: solutions do not share the problem's mesh");
}

int coulomb_highest_n(const CoulombProblem& p, double beta) {
  return std::max(p.l + 1, static_cast<int>(std::ceil(beta / p.k)));
}

}  // namespace

void RadialProblem::validate() const {
  if (gamma != 1.0 && gamma != 0.5)
    throw UnsupportedModelError("RadialProblem: gamma must be 1 or 1/2");
  detail::require(l >= 0, "RadialProblem: l must be non-negative");
  detail::require(a > 0.0, "RadialProblem: a must be positive");
  detail::require(r_min > 0.0 && r_min < match_r && match_r < r_max,
                  "RadialProblem: need 0 < r_min < match_r < r_max");
  detail::require(a / r_max < 0.5, "RadialProblem: r_max must exceed 2a for the outer series");
  detail::require(r_min / a < 0.5, "RadialProblem: r_min must be below a/2 for the inner series");
  detail::require(mesh >= 1000, "RadialProblem: mesh must be >= 1000");
  detail::require(beta_max > 0.0, "RadialProblem: beta_max must be positive");
}

void CoulombProblem::validate() const {
  detail::require(k > 0.0 && std::isfinite(k), "CoulombProblem: k must be positive");
  detail::require(l >= 0, "CoulombProblem: l must be non-negative");
  detail::require(r_min > 0.0, "CoulombProblem: r_min must be positive");
  detail::require(mesh >= 1000, "CoulombProblem: mesh must be >= 1000");
  detail::require(beta_max > 0.0, "CoulombProblem: beta_max must be positive");
}

double fisheye_shooting_function(const RadialProblem& problem, double beta) {
  return shooting_function(make_setup(problem), beta);
}

CouplingSpectrum solve_fisheye_couplings(const RadialProblem& problem, int count) {
  detail::require(count >= 1, "solve_fisheye_couplings: count must be >= 1");
  const Setup s = make_setup(problem);
  CouplingSpectrum out;
  double lo = 0.0;
  for (int k = 0; k < count; ++k) {
    const double beta = find_coupling(s, k, lo);
    out.entries.push_back({k, beta});
    lo = beta;
  }
  return out;
}

double solve_fisheye_coupling(const RadialProblem& problem, int nodes) {
  detail::require(nodes >= 0, "solve_fisheye_coupling: node count must be non-negative");
  return find_coupling(make_setup(problem), nodes, 0.0);
}

CouplingSpectrum solve_coulomb_sturmian(double k, int l, int count) {
  CoulombProblem p;
  p.k = k;
  p.l = l;
  return solve_coulomb_sturmian(p, count);
}

CouplingSpectrum solve_coulomb_sturmian(const CoulombProblem& problem, int count) {
  detail::require(count >= 1, "solve_coulomb_sturmian: count must be >= 1");
  const Setup s = make_setup(problem, problem.l + count);
  CouplingSpectrum out;
  double lo = 0.0;
  for (int j = 0; j < count; ++j) {
    const double beta = find_coupling(s, j, lo);
    out.entries.push_back({j, beta});
    lo = beta;
  }
  return out;
}

SturmianSolution eigenfunction(const RadialProblem& problem, double beta, double tol) {
  detail::require(beta > 0.0, "eigenfunction: coupling must be positive");
  return matched_solution(make_setup(problem), beta, tol);
}

SturmianSolution coulomb_eigenfunction(const CoulombProblem& problem, double beta, double tol) {
  detail::require(beta > 0.0, "coulomb_eigenfunction: coupling must be positive");
  return matched_solution(make_setup(problem, coulomb_highest_n(problem, beta)), beta, tol);
}

double weighted_overlap(const RadialProblem& problem, const SturmianSolution& a,
                        const SturmianSolution& b) {
  const Setup s = make_setup(problem);
  require_same_mesh(s, a, b);
  return simpson_overlap(s, a.u, b.u);
}

double weighted_overlap(const CoulombProblem& problem, const SturmianSolution& a,
                        const SturmianSolution& b) {
  detail::require(!a.r.empty() && !b.r.empty(), "weighted_overlap: empty solution");
  const int n = std::max(coulomb_highest_n(problem, a.beta), coulomb_highest_n(problem, b.beta));
  const Setup s = make_setup(problem, n);
  require_same_mesh(s, a, b);
  return simpson_overlap(s, a.u, b.u);
}

}  // namespace bertrand::sturm
