// bertrand-atoms: command-line front end.
//
// Exit status: 0 success, 1 numeric failure, 2 usage error.

#include <CLI11.hpp>

#include <array>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bertrand/atomstat.hpp"
#include "bertrand/dynamics.hpp"
#include "bertrand/error.hpp"
#include "bertrand/geometry.hpp"
#include "bertrand/ptable.hpp"
#include "bertrand/spectra.hpp"
#include "bertrand/sturm.hpp"
#include "cli_support.hpp"

namespace {

using bertrand::cli::format_number;
using json = nlohmann::ordered_json;

constexpr double kPi = std::numbers::pi;

struct Output {
  std::string format = "csv";
  std::string path;
};

void add_output_options(CLI::App* sub, Output& out) {
  sub->add_option("--format", out.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sub->add_option("--output,-o", out.path, "Write to this file instead of stdout");
}

// Writes `text` to the configured destination.
void emit(const Output& out, const std::string& text) {
  if (out.path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(out.path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file '" + out.path + "'");
  f << text;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file '" + path + "'");
  f << text;
}

std::string dump_json(const json& config, const json& results, const json& checks) {
  json doc;
  doc["config"] = config;
  doc["results"] = results;
  doc["checks"] = checks;
  return bertrand::cli::rounded(doc).dump(2) + "\n";
}

json check(const std::string& name, double value, double tolerance, bool pass) {
  return json{{"name", name}, {"value", value}, {"tolerance", tolerance}, {"pass", pass}};
}

std::string table_text(const std::vector<std::string>& header,
                       const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream os;
  bertrand::cli::CsvWriter w(os);
  w.header(header);
  for (const auto& r : rows) w.row(r);
  return os.str();
}

// ---------------------------------------------------------------------------
// spectrum

struct SpectrumOpts {
  Output out;
  std::string model = "tietz";
  int Z = 1;
  double e = 1.0;
  double w = 1.0;
  int count = 10;
  std::optional<int> n;
  std::optional<int> l;
};

int run_spectrum(const SpectrumOpts& o) {
  namespace sp = bertrand::spectra;
  sp::SpectrumParams p;
  p.Z = o.Z;
  p.e = o.e;
  p.w = o.w;
  p.model = sp::parse_model(o.model);
  p.validate();

  std::vector<sp::Level> levels;
  if (o.n && p.model == sp::Model::hydrogen3d) {
    levels.push_back({sp::LevelIndex(*o.n - 1, 0), sp::hydrogen_level_3d(p, *o.n), *o.n});
  } else if (o.l && p.model == sp::Model::hydrogen2d) {
    levels.push_back({sp::LevelIndex(0, *o.l), sp::hydrogen_level_2d(p, *o.l), *o.l + 1});
  } else {
    if (o.n || o.l)
      throw bertrand::DomainError("--n applies to hydrogen3d and --l to hydrogen2d");
    levels = sp::level_ordering(p, o.count);
  }

  const std::string name(sp::model_name(p.model));
  if (o.out.format == "csv") {
    std::vector<std::vector<std::string>> rows;
    for (const auto& lv : levels)
      rows.push_back({name, std::to_string(p.Z), std::to_string(lv.index.n_hat()),
                      std::to_string(lv.index.l()), std::to_string(lv.group_key),
                      format_number(lv.energy)});
    emit(o.out, table_text({"model", "Z", "n_hat", "l", "group_key", "energy"}, rows));
    return 0;
  }
  json results = json::array();
  for (const auto& lv : levels)
    results.push_back({{"model", name}, {"Z", p.Z}, {"n_hat", lv.index.n_hat()}, {"l", lv.index.l()},
                       {"group_key", lv.group_key}, {"energy", lv.energy}});
  bool monotone = true;
  for (std::size_t i = 1; i < levels.size(); ++i) monotone = monotone && levels[i].energy >= levels[i - 1].energy;
  json checks = json::array({check("ascending_energy", monotone ? 1.0 : 0.0, 0.0, monotone)});
  json config{{"subcommand", "spectrum"}, {"model", name}, {"Z", p.Z}, {"e", p.e}, {"w", p.w},
              {"count", static_cast<int>(levels.size())}};
  emit(o.out, dump_json(config, results, checks));
  return 0;
}

// ---------------------------------------------------------------------------
// sturm

struct SturmOpts {
  Output out;
  double gamma = 1.0;
  int l = 0;
  std::optional<int> l_max;
  int count = 3;
  int mesh = 20000;
  double r_min = 1e-6;
  double r_max = 200.0;
  std::string eigenfunction_path;
  int eig_index = 0;
  int eig_stride = 20;
};

struct SturmRow {
  int l = 0;
  int k = 0;
  double beta = 0.0;
  double analytic = 0.0;
  double rel_err = 0.0;
};

int run_sturm(const SturmOpts& o) {
  namespace st = bertrand::sturm;
  const int l_hi = o.l_max.value_or(o.l);
  if (l_hi < o.l) throw bertrand::DomainError("--l-max must not be below --l");
  auto problem_for = [&](int l) {
    st::RadialProblem p;
    p.gamma = o.gamma;
    p.l = l;
    p.mesh = o.mesh;
    p.r_min = o.r_min;
    p.r_max = o.r_max;
    p.validate();
    return p;
  };
  problem_for(o.l);

  using Block = std::vector<SturmRow>;
  const auto blocks = bertrand::cli::parallel_map<Block>(
      static_cast<std::size_t>(l_hi - o.l + 1), [&](std::size_t i) {
        const int l = o.l + static_cast<int>(i);
        const auto spec = st::solve_fisheye_couplings(problem_for(l), o.count);
        Block rows;
        for (const auto& e : spec.entries) {
          const double an = bertrand::spectra::fisheye_coupling_law(o.gamma, bertrand::spectra::LevelIndex(e.nodes, l));
          rows.push_back({l, e.nodes, e.beta, an, std::fabs(e.beta - an) / an});
        }
        return rows;
      });

  if (!o.eigenfunction_path.empty()) {
    if (o.eig_index < 0 || o.eig_index >= o.count)
      throw bertrand::DomainError("--eig-index must lie in [0, count)");
    if (o.eig_stride < 1) throw bertrand::DomainError("--eig-stride must be >= 1");
    const auto& row = blocks.front()[o.eig_index];
    const auto sol = st::eigenfunction(problem_for(o.l), row.beta);
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < sol.r.size(); i += o.eig_stride)
      rows.push_back({format_number(sol.r[i]), format_number(sol.u[i])});
    write_file(o.eigenfunction_path, table_text({"r", "u"}, rows));
  }

  const std::string g = format_number(o.gamma);
  if (o.out.format == "csv") {
    std::vector<std::vector<std::string>> rows;
    for (const auto& b : blocks)
      for (const auto& r : b)
        rows.push_back({g, std::to_string(r.l), std::to_string(r.k), format_number(r.beta),
                        format_number(r.analytic), format_number(r.rel_err)});
    emit(o.out, table_text({"gamma", "l", "k", "beta", "analytic_beta", "rel_err"}, rows));
    return 0;
  }
  json results = json::array();
  double worst = 0.0;
  for (const auto& b : blocks)
    for (const auto& r : b) {
      results.push_back({{"gamma", o.gamma}, {"l", r.l}, {"k", r.k}, {"beta", r.beta},
                         {"analytic_beta", r.analytic}, {"rel_err", r.rel_err}});
      worst = std::max(worst, r.rel_err);
    }
  json checks = json::array({check("max_rel_err", worst, 1e-6, worst <= 1e-6)});
  json config{{"subcommand", "sturm"}, {"gamma", o.gamma}, {"l", o.l}, {"l_max", l_hi},
              {"count", o.count}, {"mesh", o.mesh}, {"r_min", o.r_min}, {"r_max", o.r_max}};
  emit(o.out, dump_json(config, results, checks));
  return 0;
}

// ---------------------------------------------------------------------------
// orbit

struct OrbitOpts {
  Output out;
  std::string model = "tietz";
  double delta = 2.0;
  double Z = 1.0;
  double a = 1.0;
  std::optional<double> L;
  std::optional<double> x0;
  std::string beta = "1/2";
  double K = 0.0;
  double G = 0.0;
  std::optional<double> t_max;
  double tol = 1e-10;
  std::string svg_path;
};

std::pair<int, int> parse_rational(const std::string& s) {
  const auto slash = s.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      const int v = std::stoi(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return {v, 1};
    }
    const int num = std::stoi(s.substr(0, slash), &used);
    if (used != slash) throw std::invalid_argument(s);
    const std::string den_s = s.substr(slash + 1);
    const int den = std::stoi(den_s, &used);
    if (used != den_s.size()) throw std::invalid_argument(s);
    return {num, den};
  } catch (const std::logic_error&) {
    throw bertrand::DomainError("--beta must be an integer or a ratio p/q, got '" + s + "'");
  }
}

int run_orbit(const OrbitOpts& o) {
  namespace dy = bertrand::dynamics;
  dy::OrbitParams p;
  double x0 = 0.0;
  double t_max = 0.0;
  std::optional<double> period_formula;
  if (o.model == "tietz") {
    p = o.L ? dy::OrbitParams{} : dy::OrbitParams::tietz(o.delta, o.Z, o.a);
    if (o.L) {
      p.Z = o.Z;
      p.a = o.a;
      p.L = *o.L;
      p.validate();
    }
    const double delta = o.L ? p.delta() : o.delta;
    x0 = o.x0 ? *o.x0 : dy::perihelion_x(delta);
    if (delta >= 1.0) period_formula = dy::tietz_period_formula(p);
    t_max = o.t_max ? *o.t_max : (period_formula ? 1.05 * *period_formula : 100.0 * p.a * p.a / p.L);
  } else if (o.model == "perlick") {
    const auto [num, den] = parse_rational(o.beta);
    p.model = dy::OrbitModel::perlick_I;
    p.perlick = bertrand::geometry::PerlickParams(num, den, o.K, o.G);
    p.Z = o.Z;
    p.a = o.a;
    p.L = o.L.value_or(0.4);
    p.validate();
    x0 = o.x0.value_or(o.K < 0.0 ? 0.5 / std::sqrt(-o.K) : 1.0);
    t_max = o.t_max.value_or(200.0);
  } else {
    throw bertrand::UnsupportedModelError("unknown orbit model '" + o.model + "'");
  }

  const auto traj = dy::integrate_orbit(p, x0, t_max, o.tol);
  const auto an = dy::analyze(traj, p);
  const char* status = traj.status == dy::TrajectoryStatus::completed ? "completed"
                       : traj.status == dy::TrajectoryStatus::collision ? "collision"
                                                                        : "escape";

  if (!o.svg_path.empty()) {
    bertrand::cli::SvgCurve curve;
    curve.closed = an.closed;
    const double span = an.closed ? *an.period : traj.samples.back().t;
    constexpr int kPoints = 4096;
    for (int i = 0; i < kPoints; ++i) {
      const auto q = dy::state_at(p, traj, span * i / kPoints);
      curve.points.emplace_back(q.r * std::cos(q.phi), q.r * std::sin(q.phi));
    }
    if (!an.closed) {
      const auto& e = traj.samples.back();
      curve.points.emplace_back(e.r * std::cos(e.phi), e.r * std::sin(e.phi));
    }
    std::vector<std::string> meta{
        "bertrand-atoms orbit",
        std::string("model: ") + std::string(dy::orbit_model_name(p.model)),
        "L: " + format_number(p.L),
        "closed: " + std::string(an.closed ? "true" : "false"),
        "period: " + (an.period ? format_number(*an.period) : std::string("none")),
        "self_intersections: " + std::to_string(an.self_intersections),
        "orbit_residual: " + format_number(an.orbit_residual),
        "energy_drift: " + format_number(an.energy_drift),
    };
    write_file(o.svg_path, bertrand::cli::render_svg({curve}, meta, true));
  }

  if (o.out.format == "csv") {
    std::vector<std::vector<std::string>> rows;
    rows.reserve(traj.samples.size());
    for (const auto& s : traj.samples)
      rows.push_back({format_number(s.t), format_number(s.r), format_number(s.phi), format_number(s.p_r),
                      format_number(s.r * std::cos(s.phi)), format_number(s.r * std::sin(s.phi))});
    emit(o.out, table_text({"t", "r", "phi", "p_r", "x", "y"}, rows));
    return 0;
  }
  json summary{{"model", dy::orbit_model_name(p.model)},
               {"delta", p.model == dy::OrbitModel::tietz_newtonian ? json(p.delta()) : json(nullptr)},
               {"L", p.L},
               {"x0", x0},
               {"status", status},
               {"closed", an.closed},
               {"period", an.period ? json(*an.period) : json(nullptr)},
               {"period_formula", period_formula ? json(*period_formula) : json(nullptr)},
               {"self_intersections", an.self_intersections},
               {"orbit_residual", an.orbit_residual},
               {"energy_drift", an.energy_drift},
               {"closure_error", an.closure_error},
               {"samples", traj.samples.size()}};
  json checks = json::array();
  checks.push_back(check("closed", an.closed ? 1.0 : 0.0, 0.0, an.closed));
  {
    // drift normalised to one period (or to the whole run when the orbit did not close)
    const double span = traj.samples.back().t;
    const double per = an.period && span > 0.0 ? an.energy_drift * std::min(1.0, *an.period / span) : an.energy_drift;
    checks.push_back(check("energy_drift_per_period", per, 1e-9, per <= 1e-9));
  }
  if (period_formula && an.period) {
    const double rel = std::fabs(*an.period / *period_formula - 1.0);
    checks.push_back(check("period_vs_formula", rel, 5e-3, rel <= 5e-3));
  }
  if (p.model == dy::OrbitModel::tietz_newtonian)
    checks.push_back(check("orbit_residual", an.orbit_residual, 1e-3, an.orbit_residual <= 1e-3));
  const bool tietz = p.model == dy::OrbitModel::tietz_newtonian;
  json config{{"subcommand", "orbit"}, {"model", o.model}, {"delta", tietz ? json(p.delta()) : json(nullptr)},
              {"Z", p.Z}, {"a", p.a}, {"L", p.L}, {"x0", x0}, {"t_max", t_max}, {"tol", o.tol}};
  if (p.model == dy::OrbitModel::perlick_I) {
    config["beta"] = o.beta;
    config["K"] = o.K;
    config["G"] = o.G;
  }
  emit(o.out, dump_json(config, json::array({summary}), checks));
  return 0;
}

// ---------------------------------------------------------------------------
// tf

struct TfOpts {
  Output out;
  double x_max = 50.0;
  double tol = 1e-6;
  int mesh = 20000;
  double step = 0.1;
  std::string svg_path;
};

int run_tf(const TfOpts& o) {
  namespace as = bertrand::atomstat;
  if (!(o.step > 0.0)) throw bertrand::DomainError("--step must be positive");
  const auto sol = as::solve_tf(o.x_max, o.tol, o.mesh);
  const long n = static_cast<long>(std::floor(o.x_max / o.step + 1e-9));
  struct Row {
    double x, tf, tz;
  };
  std::vector<Row> rows;
  for (long i = 0; i <= n; ++i) {
    const double x = std::min(i * o.step, o.x_max);
    rows.push_back({x, as::tf_phi_at(sol, x), as::tietz_phi(x)});
  }
  const double dev10 = as::max_tietz_deviation(sol, 0.0, std::min(10.0, o.x_max));
  const double dev2 = as::max_tietz_deviation(sol, 0.0, 2.0);

  if (!o.svg_path.empty()) {
    bertrand::cli::SvgCurve tf, tz;
    tz.stroke = "#b0413e";
    for (const auto& r : rows) {
      tf.points.emplace_back(r.x, r.tf);
      tz.points.emplace_back(r.x, r.tz);
    }
    std::vector<std::string> meta{"bertrand-atoms tf", "curves: phi_tf (blue), phi_tietz (red)",
                                  "x_max: " + format_number(o.x_max),
                                  "slope0: " + format_number(sol.slope0),
                                  "max_abs_diff_0_10: " + format_number(dev10),
                                  "max_abs_diff_0_2: " + format_number(dev2)};
    write_file(o.svg_path, bertrand::cli::render_svg({tf, tz}, meta, false));
  }

  if (o.out.format == "csv") {
    std::vector<std::vector<std::string>> text;
    for (const auto& r : rows)
      text.push_back({format_number(r.x), format_number(r.tf), format_number(r.tz), format_number(std::fabs(r.tf - r.tz))});
    emit(o.out, table_text({"x", "phi_tf", "phi_tietz", "abs_diff"}, text));
    return 0;
  }
  json results = json::array();
  for (const auto& r : rows)
    results.push_back({{"x", r.x}, {"phi_tf", r.tf}, {"phi_tietz", r.tz}, {"abs_diff", std::fabs(r.tf - r.tz)}});
  json checks = json::array({
      check("boundary_value", std::fabs(sol.boundary_value), o.tol, std::fabs(sol.boundary_value) <= o.tol),
      check("max_abs_diff_0_10", dev10, 0.05, dev10 <= 0.05),
      check("max_abs_diff_0_2", dev2, 0.02, dev2 <= 0.02),
  });
  json config{{"subcommand", "tf"}, {"x_max", o.x_max}, {"tol", o.tol}, {"mesh", o.mesh},
              {"step", o.step}, {"slope0", sol.slope0}};
  emit(o.out, dump_json(config, results, checks));
  return 0;
}

// ---------------------------------------------------------------------------
// table

struct TableOpts {
  Output out;
  std::string rule = "madelung";
  std::string periods;
  std::optional<int> n_periods;
  std::optional<int> order;
  int z_min = 1;
  int z_max = 36;
};

int run_table(const TableOpts& o) {
  namespace pt = bertrand::ptable;
  const auto rule = pt::parse_rule(o.rule);

  if (!o.periods.empty()) {
    const auto style = pt::parse_style(o.periods);
    const int n = o.n_periods.value_or(style == pt::PeriodStyle::janet ? 8 : 7);
    const auto table = pt::period_lengths(style, n);
    if (table.extrapolated) std::cerr << "note: periods beyond the observed table are extrapolated\n";
    if (o.out.format == "csv") {
      std::vector<std::string> header, row;
      for (int i = 0; i < n; ++i) {
        header.push_back("period_" + std::to_string(i + 1));
        row.push_back(std::to_string(table.lengths[i]));
      }
      emit(o.out, table_text(header, {row}));
      return 0;
    }
    json config{{"subcommand", "table"}, {"rule", o.rule}, {"periods", o.periods}, {"n_periods", n}};
    json results = json::array({json{{"style", o.periods}, {"lengths", table.lengths},
                                     {"extrapolated", table.extrapolated}}});
    emit(o.out, dump_json(config, results, json::array()));
    return 0;
  }

  if (o.order) {
    const auto orbs = pt::filling_order(rule, *o.order);
    if (o.out.format == "csv") {
      std::vector<std::vector<std::string>> rows;
      for (std::size_t i = 0; i < orbs.size(); ++i)
        rows.push_back({std::to_string(i + 1), orbs[i].label(), std::to_string(orbs[i].n()),
                        std::to_string(orbs[i].l()), std::to_string(pt::group_key(orbs[i], rule)),
                        std::to_string(orbs[i].capacity())});
      emit(o.out, table_text({"position", "orbital", "n", "l", "group_key", "capacity"}, rows));
      return 0;
    }
    json results = json::array();
    for (std::size_t i = 0; i < orbs.size(); ++i)
      results.push_back({{"position", i + 1}, {"orbital", orbs[i].label()}, {"n", orbs[i].n()},
                         {"l", orbs[i].l()}, {"group_key", pt::group_key(orbs[i], rule)},
                         {"capacity", orbs[i].capacity()}});
    json config{{"subcommand", "table"}, {"rule", o.rule}, {"order", *o.order}};
    emit(o.out, dump_json(config, results, json::array()));
    return 0;
  }

  if (o.z_min < 1 || o.z_max < o.z_min) throw bertrand::DomainError("need 1 <= --z-min <= --z-max");
  const auto configs = bertrand::cli::parallel_map<pt::Configuration>(
      static_cast<std::size_t>(o.z_max - o.z_min + 1),
      [&](std::size_t i) { return pt::configuration(o.z_min + static_cast<int>(i), rule); });
  bool conserved = true;
  for (const auto& c : configs) conserved = conserved && c.electrons() == c.Z;
  if (o.out.format == "csv") {
    std::vector<std::vector<std::string>> rows;
    for (const auto& c : configs)
      rows.push_back({std::to_string(c.Z), o.rule, c.to_string(), std::to_string(c.electrons())});
    emit(o.out, table_text({"Z", "rule", "configuration", "electrons"}, rows));
    return 0;
  }
  json results = json::array();
  for (const auto& c : configs)
    results.push_back({{"Z", c.Z}, {"rule", o.rule}, {"configuration", c.to_string()}, {"electrons", c.electrons()}});
  json config{{"subcommand", "table"}, {"rule", o.rule}, {"z_min", o.z_min}, {"z_max", o.z_max}};
  emit(o.out, dump_json(config, results,
                        json::array({check("electron_count", conserved ? 1.0 : 0.0, 0.0, conserved)})));
  return 0;
}

// ---------------------------------------------------------------------------
// geomcheck

struct GeomOpts {
  Output out;
  int points = 1000;
  unsigned long long seed = 20240601ULL;
};

struct Invariant {
  std::string name;
  double value;
  double tolerance;
  bool pass() const { return value <= tolerance; }
};

std::vector<Invariant> geometry_battery(int points, unsigned long long seed) {
  namespace g = bertrand::geometry;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-3.0, 3.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  std::vector<Invariant> out;

  double rt = 0.0, norm = 0.0, inv = 0.0;
  for (int i = 0; i < points; ++i) {
    const g::Point3 x{coord(rng), coord(rng), coord(rng)};
    const auto s = g::stereo_r3_to_s3(x);
    const auto back = g::stereo_s3_to_r3(s);
    const double xn = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    for (int k = 0; k < 3; ++k) rt = std::max(rt, std::fabs(back[k] - x[k]) / std::max(1.0, xn));
    norm = std::max(norm, std::fabs(std::sqrt(s[0] * s[0] + s[1] * s[1] + s[2] * s[2] + s[3] * s[3]) - 1.0));
    const auto twice = g::inversion(g::inversion(x));
    for (int k = 0; k < 3; ++k) inv = std::max(inv, std::fabs(twice[k] - x[k]) / xn);
  }
  out.push_back({"stereo_round_trip", rt, 1e-12});
  out.push_back({"stereo_unit_norm", norm, 1e-14});
  out.push_back({"inversion_involution", inv, 1e-12});

  double symp = g::symplectic_defect(g::inversion_jacobian({1, 1, 0}, {0.2, -0.3, 0.1}));
  for (int i = 0; i < 20; ++i) {
    const g::Point3 x{coord(rng), coord(rng), coord(rng)};
    const g::Point3 p{coord(rng), coord(rng), coord(rng)};
    if (x[0] * x[0] + x[1] * x[1] + x[2] * x[2] < 0.25) continue;
    symp = std::max(symp, g::symplectic_defect(g::inversion_jacobian(x, p)));
  }
  out.push_back({"inversion_symplectic", symp, 1e-8});

  double fiber = 0.0, hopf_norm = 0.0;
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    g::Point4 s{gauss(rng), gauss(rng), gauss(rng), gauss(rng)};
    const double n = std::sqrt(s[0] * s[0] + s[1] * s[1] + s[2] * s[2] + s[3] * s[3]);
    for (auto& c : s) c /= n;
    const auto base = g::hopf_map(s);
    hopf_norm = std::max(hopf_norm, std::fabs(std::hypot(base[0], base[1], base[2]) - 1.0));
    for (int k = 0; k < 8; ++k) {
      const double t = angle(rng);
      const double c = std::cos(t), sn = std::sin(t);
      const g::Point4 r{c * s[0] - sn * s[1], sn * s[0] + c * s[1], c * s[2] - sn * s[3], sn * s[2] + c * s[3]};
      const auto img = g::hopf_map(r);
      for (int j = 0; j < 3; ++j) fiber = std::max(fiber, std::fabs(img[j] - base[j]));
    }
  }
  out.push_back({"hopf_fiber_invariance", fiber, 1e-10});
  out.push_back({"hopf_unit_image", hopf_norm, 1e-12});

  double pull = 0.0;
  for (auto conv : {g::ConformalConvention::quarter, g::ConformalConvention::unit}) {
    const g::Point3 x{0.3, 0.4, 0.0};
    const auto metric = g::metric_pullback(x, conv);
    const double rho = g::conformal_factor_sphere(x, conv);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) pull = std::max(pull, std::fabs(metric[i][j] - (i == j ? rho : 0.0)));
  }
  out.push_back({"conformal_pullback", pull, 1e-6});

  double fish = 0.0;
  const g::PerlickParams fe(1, 1, -1.0);
  for (int i = 1; i <= 100; ++i) {
    const double rt = g::perlick_radial_map(fe, 0.0099 * i).rtilde;  // K = -1 needs r < 1
    const double expect = 4.0 / ((1.0 + rt * rt) * (1.0 + rt * rt));
    const double pt2[2] = {rt, 0.0};
    fish = std::max(fish, std::fabs(g::perlick_f_squared(fe, rt) - g::conformal_factor_sphere(pt2, g::ConformalConvention::unit)));
    fish = std::max(fish, std::fabs(g::perlick_f_squared(fe, rt) - expect));
  }
  out.push_back({"perlick_fisheye_factor", fish, 1e-12});

  double rel = 0.0, inc = 0.0;
  for (int i = 0; i < points; ++i) {
    const g::Point3 x{coord(rng), coord(rng), coord(rng)};
    const g::Point3 y{coord(rng), coord(rng), coord(rng)};
    const auto line = g::plucker_from_points(x, y);
    rel = std::max(rel, std::fabs(line.relation()));
    const double t = coord(rng);
    const g::Point4 q{x[0] + t * (y[0] - x[0]), x[1] + t * (y[1] - x[1]), x[2] + t * (y[2] - x[2]), 1.0};
    const auto res = g::plucker_incidence(line, q);
    for (double v : res) inc = std::max(inc, std::fabs(v));
  }
  out.push_back({"plucker_relation", rel, 1e-12});
  out.push_back({"plucker_incidence", inc, 1e-12});

  // so(4): [A_i, A_j] = eps A_k, [A_i, B_j] = eps B_k, [B_i, B_j] = eps A_k
  const auto basis = g::so4_basis();
  int so4_bad = 0;
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    if (g::so4_commutator(basis[i], basis[j]) != basis[k]) ++so4_bad;
    if (g::so4_commutator(basis[3 + i], basis[3 + j]) != basis[k]) ++so4_bad;
    if (g::so4_commutator(basis[i], basis[3 + j]) != basis[3 + k]) ++so4_bad;
  }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const auto jp = g::so4_add(basis[i], basis[3 + i]);
      const auto jm = g::so4_sub(basis[j], basis[3 + j]);
      if (g::so4_commutator(jp, jm) != g::So4Matrix{}) ++so4_bad;
    }
  out.push_back({"so4_commutators", static_cast<double>(so4_bad), 0.0});

  double chr = 0.0;
  const auto rho = [](std::span<const double> x) {
    double r2 = 0.0;
    for (double c : x) r2 += c * c;
    const double f = 1.0 / (1.0 + 0.25 * r2);
    return f * f;
  };
  const double p2[2] = {0.2, 0.1}, p3[3] = {0.2, 0.1, 0.3}, p4[4] = {0.2, 0.1, 0.3, -0.4};
  chr = std::max({chr, g::conformal_christoffel_check(rho, p2, 2), g::conformal_christoffel_check(rho, p3, 3),
                  g::conformal_christoffel_check(rho, p4, 4)});
  out.push_back({"christoffel_identity", chr, 1e-5});
  return out;
}

int run_geomcheck(const GeomOpts& o) {
  if (o.points < 1) throw bertrand::DomainError("--points must be >= 1");
  const auto inv = geometry_battery(o.points, o.seed);
  bool all = true;
  for (const auto& i : inv) all = all && i.pass();
  if (o.out.format == "csv") {
    std::vector<std::vector<std::string>> rows;
    for (const auto& i : inv)
      rows.push_back({i.name, format_number(i.value), format_number(i.tolerance), i.pass() ? "pass" : "fail"});
    emit(o.out, table_text({"invariant", "value", "tolerance", "status"}, rows));
  } else {
    json checks = json::array();
    for (const auto& i : inv) checks.push_back(check(i.name, i.value, i.tolerance, i.pass()));
    json config{{"subcommand", "geomcheck"}, {"points", o.points}, {"seed", o.seed}};
    emit(o.out, dump_json(config, json::array(), checks));
  }
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sturmian couplings, Bertrand orbits, Thomas-Fermi screening and periodic-table structure"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "bertrand-atoms 0.1.0");

  SpectrumOpts spec;
  auto* s_spec = app.add_subcommand("spectrum", "Closed-form level tables");
  add_output_options(s_spec, spec.out);
  s_spec->add_option("--model", spec.model, "hydrogen3d, hydrogen2d or tietz")
      ->check(CLI::IsMember({"hydrogen3d", "hydrogen2d", "tietz"}))
      ->capture_default_str();
  s_spec->add_option("--Z", spec.Z, "Atomic number")->capture_default_str();
  s_spec->add_option("--e", spec.e, "Charge unit")->capture_default_str();
  s_spec->add_option("--w", spec.w, "Scale of the tietz spectrum")->capture_default_str();
  s_spec->add_option("--count", spec.count, "Number of levels")->capture_default_str();
  s_spec->add_option("--n", spec.n, "Single hydrogen3d level n");
  s_spec->add_option("--l", spec.l, "Single hydrogen2d level l");

  SturmOpts sturm;
  auto* s_sturm = app.add_subcommand("sturm", "Shooting solver for fish-eye Sturmian couplings");
  add_output_options(s_sturm, sturm.out);
  s_sturm->add_option("--gamma", sturm.gamma, "1 or 0.5")->capture_default_str();
  s_sturm->add_option("--l", sturm.l, "Orbital number")->capture_default_str();
  s_sturm->add_option("--l-max", sturm.l_max, "Sweep l from --l to this value");
  s_sturm->add_option("--count", sturm.count, "Couplings per l")->capture_default_str();
  s_sturm->add_option("--mesh", sturm.mesh, "RK4 steps")->capture_default_str();
  s_sturm->add_option("--r-min", sturm.r_min, "Inner radius")->capture_default_str();
  s_sturm->add_option("--r-max", sturm.r_max, "Outer radius")->capture_default_str();
  s_sturm->add_option("--eigenfunction", sturm.eigenfunction_path, "Write r,u samples of one eigenfunction");
  s_sturm->add_option("--eig-index", sturm.eig_index, "Node count of that eigenfunction")->capture_default_str();
  s_sturm->add_option("--eig-stride", sturm.eig_stride, "Keep every n-th mesh point")->capture_default_str();

  OrbitOpts orbit;
  auto* s_orbit = app.add_subcommand("orbit", "Integrate and analyse a planar orbit");
  add_output_options(s_orbit, orbit.out);
  s_orbit->add_option("--model", orbit.model, "tietz or perlick")
      ->check(CLI::IsMember({"tietz", "perlick"}))
      ->capture_default_str();
  s_orbit->add_option("--delta", orbit.delta, "Z a / L^2 - 1 (tietz)")->capture_default_str();
  s_orbit->add_option("--Z", orbit.Z, "Charge strength")->capture_default_str();
  s_orbit->add_option("--a", orbit.a, "Length scale")->capture_default_str();
  s_orbit->add_option("--L", orbit.L, "Angular momentum (overrides --delta)");
  s_orbit->add_option("--x0", orbit.x0, "Launch radius in units of a (default: perihelion)");
  s_orbit->add_option("--beta", orbit.beta, "Perlick exponent p/q")->capture_default_str();
  s_orbit->add_option("--K", orbit.K, "Perlick curvature")->capture_default_str();
  s_orbit->add_option("--G", orbit.G, "Perlick offset")->capture_default_str();
  s_orbit->add_option("--t-max", orbit.t_max, "Integration time");
  s_orbit->add_option("--tol", orbit.tol, "Energy tolerance")->capture_default_str();
  s_orbit->add_option("--svg", orbit.svg_path, "Write the orbit over one period as SVG");

  TfOpts tf;
  auto* s_tf = app.add_subcommand("tf", "Thomas-Fermi screening function against the Tietz form");
  add_output_options(s_tf, tf.out);
  s_tf->add_option("--xmax", tf.x_max, "Outer boundary")->capture_default_str();
  s_tf->add_option("--tol", tf.tol, "Boundary tolerance")->capture_default_str();
  s_tf->add_option("--mesh", tf.mesh, "RK4 steps in sqrt(x)")->capture_default_str();
  s_tf->add_option("--step", tf.step, "Output grid spacing")->capture_default_str();
  s_tf->add_option("--svg", tf.svg_path, "Write both curves as SVG");

  TableOpts table;
  auto* s_table = app.add_subcommand("table", "Filling orders, configurations and period lengths");
  add_output_options(s_table, table.out);
  s_table->add_option("--rule", table.rule, "madelung, nl or fock_n")
      ->check(CLI::IsMember({"madelung", "nl", "fock_n"}))
      ->capture_default_str();
  s_table->add_option("--periods", table.periods, "Emit period lengths: janet or conventional")
      ->check(CLI::IsMember({"janet", "conventional"}));
  s_table->add_option("--n-periods", table.n_periods, "Number of periods");
  s_table->add_option("--order", table.order, "Emit the first N orbitals of the filling order");
  s_table->add_option("--z-min", table.z_min, "First atomic number")->capture_default_str();
  s_table->add_option("--z-max", table.z_max, "Last atomic number")->capture_default_str();

  GeomOpts geom;
  auto* s_geom = app.add_subcommand("geomcheck", "Run the geometry invariant battery");
  add_output_options(s_geom, geom.out);
  s_geom->add_option("--points", geom.points, "Random samples per invariant")->capture_default_str();
  s_geom->add_option("--seed", geom.seed, "Sampling seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (s_spec->parsed()) return run_spectrum(spec);
    if (s_sturm->parsed()) return run_sturm(sturm);
    if (s_orbit->parsed()) return run_orbit(orbit);
    if (s_tf->parsed()) return run_tf(tf);
    if (s_table->parsed()) return run_table(table);
    if (s_geom->parsed()) return run_geomcheck(geom);
  } catch (const bertrand::NumericError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const bertrand::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const bertrand::UnsupportedModelError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
