#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "bertrand/atomstat.hpp"
#include "bertrand/dynamics.hpp"
#include "bertrand/error.hpp"
#include "bertrand/geometry.hpp"
#include "bertrand/ptable.hpp"
#include "bertrand/specfun.hpp"
#include "bertrand/spectra.hpp"
#include "bertrand/sturm.hpp"

namespace py = pybind11;
using namespace bertrand;

namespace {

py::array_t<double> to_array(const std::vector<double>& v) { return py::array_t<double>(v.size(), v.data()); }

spectra::SpectrumParams spectrum_params(const std::string& model, int Z, double e, double w) {
  spectra::SpectrumParams p;
  p.model = spectra::parse_model(model);
  p.Z = Z;
  p.e = e;
  p.w = w;
  p.validate();
  return p;
}

sturm::RadialProblem radial_problem(double gamma, int l, int mesh) {
  sturm::RadialProblem p;
  p.gamma = gamma;
  p.l = l;
  p.mesh = mesh;
  p.validate();
  return p;
}

py::list couplings(const sturm::CouplingSpectrum& s) {
  py::list out;
  for (const auto& e : s.entries) out.append(py::make_tuple(e.nodes, e.beta));
  return out;
}

dynamics::OrbitParams orbit_params(const std::string& model, double delta, double L, int beta_num, int beta_den,
                                   double K, double G) {
  if (model == "tietz") return dynamics::OrbitParams::tietz(delta);
  if (model != "perlick") throw UnsupportedModelError("unknown orbit model '" + model + "'");
  dynamics::OrbitParams p;
  p.model = dynamics::OrbitModel::perlick_I;
  p.L = L;
  p.perlick = geometry::PerlickParams(beta_num, beta_den, K, G);
  return p;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Numerical core of bertrand_atoms";

  auto domain = py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<SingularityError>(m, "SingularityError", domain.ptr());
  py::register_exception<UnsupportedModelError>(m, "UnsupportedModelError", PyExc_ValueError);
  auto numeric = py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);
  py::register_exception<NotAnEigenvalueError>(m, "NotAnEigenvalueError", numeric.ptr());

  // special functions
  m.def("gegenbauer", &specfun::gegenbauer, py::arg("k"), py::arg("lam"), py::arg("x"));
  m.def("assoc_legendre", &specfun::assoc_legendre, py::arg("l"), py::arg("m"), py::arg("x"));
  m.def("gegenbauer_norm_closed_form", &specfun::gegenbauer_norm_closed_form, py::arg("l"), py::arg("p"));
  m.def("gegenbauer_norm_integral", &specfun::gegenbauer_norm_integral, py::arg("l"), py::arg("p"));
  m.def(
      "hyperspherical_gram",
      [](int n_max) {
        const auto g = specfun::hyperspherical_gram(n_max);
        py::array_t<std::complex<double>> out({g.size(), g.size()});
        auto v = out.mutable_unchecked<2>();
        for (std::size_t i = 0; i < g.size(); ++i)
          for (std::size_t j = 0; j < g.size(); ++j) v(i, j) = g[i][j];
        return out;
      },
      py::arg("n_max"));

  // geometry
  m.def("refractive_index", &geometry::refractive_index, py::arg("r"), py::arg("gamma"), py::arg("n0") = 1.0,
        py::arg("a") = 1.0);
  m.def("stereo_r3_to_s3", &geometry::stereo_r3_to_s3, py::arg("x"));
  m.def("stereo_s3_to_r3", &geometry::stereo_s3_to_r3, py::arg("s"));
  m.def("hopf_map", &geometry::hopf_map, py::arg("s"));
  m.def("so4_commutator_table", []() {
    const auto b = geometry::so4_basis();
    std::vector<std::vector<std::array<int, 6>>> t(6, std::vector<std::array<int, 6>>(6));
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) t[i][j] = geometry::so4_decompose(geometry::so4_commutator(b[i], b[j]));
    return t;
  });

  // spectra
  m.def(
      "hydrogen_level_3d",
      [](int n, int Z, double e) { return spectra::hydrogen_level_3d(spectrum_params("hydrogen3d", Z, e, 1.0), n); },
      py::arg("n"), py::arg("Z") = 1, py::arg("e") = 1.0);
  m.def(
      "hydrogen_level_2d",
      [](int l, int Z, double e) { return spectra::hydrogen_level_2d(spectrum_params("hydrogen2d", Z, e, 1.0), l); },
      py::arg("l"), py::arg("Z") = 1, py::arg("e") = 1.0);
  m.def(
      "tietz_level",
      [](int n_hat, int l, int Z, double e, double w) {
        return spectra::tietz_level(spectrum_params("tietz", Z, e, w), spectra::LevelIndex::from_principal(n_hat, l));
      },
      py::arg("n_hat"), py::arg("l"), py::arg("Z") = 1, py::arg("e") = 1.0, py::arg("w") = 1.0);
  m.def(
      "fisheye_coupling_law",
      [](double gamma, int n_r, int l) { return spectra::fisheye_coupling_law(gamma, spectra::LevelIndex(n_r, l)); },
      py::arg("gamma"), py::arg("n_r"), py::arg("l"));
  m.def(
      "level_ordering",
      [](const std::string& model, int count, int Z, double e, double w) {
        py::list out;
        for (const auto& lv : spectra::level_ordering(spectrum_params(model, Z, e, w), count)) {
          py::dict d;
          d["n_hat"] = lv.index.n_hat();
          d["l"] = lv.index.l();
          d["group_key"] = lv.group_key;
          d["energy"] = lv.energy;
          out.append(d);
        }
        return out;
      },
      py::arg("model"), py::arg("count"), py::arg("Z") = 1, py::arg("e") = 1.0, py::arg("w") = 1.0);

  // sturm
  m.def(
      "fisheye_couplings",
      [](double gamma, int l, int count, int mesh) {
        return couplings(sturm::solve_fisheye_couplings(radial_problem(gamma, l, mesh), count));
      },
      py::arg("gamma"), py::arg("l"), py::arg("count"), py::arg("mesh") = 20000,
      "List of (nodes, beta) for the lowest `count` fish-eye couplings.");
  m.def(
      "fisheye_eigenfunction",
      [](double gamma, int l, double beta, int mesh) {
        const auto s = sturm::eigenfunction(radial_problem(gamma, l, mesh), beta);
        return py::make_tuple(to_array(s.r), to_array(s.u), s.node_count);
      },
      py::arg("gamma"), py::arg("l"), py::arg("beta"), py::arg("mesh") = 20000,
      "(r, u, nodes) at an eigen-coupling; u has unit weighted norm.");
  m.def(
      "coulomb_sturmian_couplings",
      [](double k, int l, int count) { return couplings(sturm::solve_coulomb_sturmian(k, l, count)); }, py::arg("k"),
      py::arg("l"), py::arg("count"));

  // dynamics
  m.def(
      "orbit",
      [](const std::string& model, double delta, double L, int beta_num, int beta_den, double K, double G,
         std::optional<double> x0, std::optional<double> t_max, double tol) {
        const auto p = orbit_params(model, delta, L, beta_num, beta_den, K, G);
        const bool tietz = p.model == dynamics::OrbitModel::tietz_newtonian;
        const double start = x0.value_or(tietz ? dynamics::perihelion_x(delta) : (K < 0 ? 0.5 / std::sqrt(-K) : 1.0));
        const double formula = tietz ? dynamics::tietz_period_formula(p) : 0.0;
        const double span = t_max.value_or(tietz ? 1.05 * formula : 200.0);
        const auto traj = dynamics::integrate_orbit(p, start, span, tol);
        const auto an = dynamics::analyze(traj, p);
        std::vector<double> t, r, phi, p_r;
        for (const auto& s : traj.samples) {
          t.push_back(s.t);
          r.push_back(s.r);
          phi.push_back(s.phi);
          p_r.push_back(s.p_r);
        }
        py::dict d;
        d["closed"] = an.closed;
        d["period"] = an.period ? py::cast(*an.period) : py::none();
        d["period_formula"] = tietz ? py::cast(formula) : py::none();
        d["self_intersections"] = an.self_intersections;
        d["orbit_residual"] = an.orbit_residual;
        d["energy_drift"] = an.energy_drift;
        d["closure_error"] = an.closure_error;
        d["t"] = to_array(t);
        d["r"] = to_array(r);
        d["phi"] = to_array(phi);
        d["p_r"] = to_array(p_r);
        return d;
      },
      py::arg("model") = "tietz", py::arg("delta") = 2.0, py::arg("L") = 0.4, py::arg("beta_num") = 1,
      py::arg("beta_den") = 2, py::arg("K") = 0.0, py::arg("G") = 0.0, py::arg("x0") = py::none(),
      py::arg("t_max") = py::none(), py::arg("tol") = 1e-10);
  m.def(
      "tietz_period_formula", [](double delta) { return dynamics::tietz_period_formula(dynamics::OrbitParams::tietz(delta)); },
      py::arg("delta"));
  m.def("perihelion_x", &dynamics::perihelion_x, py::arg("delta"));

  // atomstat
  m.def(
      "solve_tf",
      [](double x_max, double tol, int mesh) {
        const auto s = atomstat::solve_tf(x_max, tol, mesh);
        py::dict d;
        d["x"] = to_array(s.grid);
        d["phi"] = to_array(s.phi);
        d["dphi"] = to_array(s.dphi);
        d["slope0"] = s.slope0;
        d["boundary_value"] = s.boundary_value;
        d["max_tietz_deviation_0_10"] = atomstat::max_tietz_deviation(s, 0.0, 10.0);
        d["max_tietz_deviation_0_2"] = atomstat::max_tietz_deviation(s, 0.0, 2.0);
        return d;
      },
      py::arg("x_max") = 50.0, py::arg("tol") = 1e-6, py::arg("mesh") = 20000);
  m.def("tietz_phi", [](double x) { return atomstat::tietz_phi(x); }, py::arg("x"));
  m.def("screening_length", &atomstat::screening_length, py::arg("Z"), py::arg("a0") = 1.0);
  m.def("n_l_count", &atomstat::n_l_count, py::arg("Z"), py::arg("l"));
  m.def("first_z_for_l", &atomstat::first_z_for_l, py::arg("l"));

  // ptable
  m.def(
      "filling_order",
      [](const std::string& rule, int count) {
        std::vector<std::string> out;
        for (const auto& o : ptable::filling_order(ptable::parse_rule(rule), count)) out.push_back(o.label());
        return out;
      },
      py::arg("rule"), py::arg("count"));
  m.def(
      "configuration",
      [](int Z, const std::string& rule) { return ptable::configuration(Z, ptable::parse_rule(rule)).to_string(); },
      py::arg("Z"), py::arg("rule") = "madelung");
  m.def(
      "period_lengths",
      [](const std::string& style, int n_periods) {
        const auto t = ptable::period_lengths(ptable::parse_style(style), n_periods);
        return py::make_tuple(t.lengths, t.extrapolated);
      },
      py::arg("style"), py::arg("n_periods"), "(lengths, extrapolated)");
}
