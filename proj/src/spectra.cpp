#include "bertrand/spectra.hpp"

#include <algorithm>
#include <cmath>

#include "bertrand/error.hpp"

namespace bertrand::spectra {

namespace {

double coulomb_strength_sq(const SpectrumParams& p) {
  const double ze2 = p.Z * p.e * p.e;
  return ze2 * ze2;
}

}  // namespace

LevelIndex::LevelIndex(int n_r, int l) : n_r_(n_r), l_(l) {
  detail::require(n_r >= 0, "LevelIndex: n_r must be non-negative");
  detail::require(l >= 0, "LevelIndex: l must be non-negative");
}

LevelIndex LevelIndex::from_principal(int n_hat, int l) {
  detail::require(l >= 0 && n_hat >= l + 1, "LevelIndex: need n_hat >= l + 1");
  return LevelIndex(n_hat - l - 1, l);
}

std::string_view model_name(Model m) {
  switch (m) {
    case Model::hydrogen3d: return "hydrogen3d";
    case Model::hydrogen2d: return "hydrogen2d";
    case Model::tietz: return "tietz";
  }
  return "unknown";
}

Model parse_model(std::string_view name) {
  if (name == "hydrogen3d") return Model::hydrogen3d;
  if (name == "hydrogen2d") return Model::hydrogen2d;
  if (name == "tietz") return Model::tietz;
  throw UnsupportedModelError("unknown spectrum model '" + std::string(name) + "'");
}

void SpectrumParams::validate() const {
  detail::require(Z >= 1, "SpectrumParams: Z must be >= 1");
  detail::require(e > 0.0 && std::isfinite(e), "SpectrumParams: e must be positive");
  detail::require(w > 0.0 && std::isfinite(w), "SpectrumParams: w must be positive");
}

double hydrogen_level_3d(const SpectrumParams& p, int n) {
  p.validate();
  detail::require(n >= 1, "hydrogen_level_3d: n must be >= 1");
  const double nn = n;
  return -coulomb_strength_sq(p) / (2.0 * nn * nn);
}

long long hydrogen_degeneracy_3d(int n) {
  detail::require(n >= 1, "hydrogen_degeneracy_3d: n must be >= 1");
  return static_cast<long long>(n) * n;
}

double hydrogen_level_2d(const SpectrumParams& p, int l) {
  p.validate();
  detail::require(l >= 0, "hydrogen_level_2d: l must be non-negative");
  const double h = l + 0.5;
  return -coulomb_strength_sq(p) / (h * h);
}

double tietz_level(const SpectrumParams& p, const LevelIndex& idx) {
  p.validate();
  const double key = idx.n_hat() + idx.l();
  const double e2 = p.e * p.e;
  const double scale = std::pow(static_cast<double>(p.Z), 7.0 / 3.0) * e2 * e2 / p.w;
  return -scale / (key * key);
}

double fisheye_coupling_law(double gamma, const LevelIndex& idx) {
  if (gamma == 1.0) {
    const double N = idx.n_r() + idx.l();
    return (2.0 * N + 1.0) * (2.0 * N + 3.0);
  }
  if (gamma == 0.5) {
    const double M = idx.n_r() + 2.0 * idx.l();
    return (M + 1.0) * (M + 2.0);
  }
  throw UnsupportedModelError("fisheye_coupling_law: gamma must be 1 or 1/2");
}

double coupling_from_energy(const SpectrumParams& p, double energy) {
  p.validate();
  detail::require(energy < 0.0, "coupling_from_energy: energy must be negative");
  return coulomb_strength_sq(p) / std::fabs(energy);
}

double energy_from_coupling(const SpectrumParams& p, double beta) {
  p.validate();
  detail::require(beta > 0.0, "energy_from_coupling: coupling must be positive");
  return -coulomb_strength_sq(p) / beta;
}

std::vector<Level> level_ordering(const SpectrumParams& p, int count) {
  p.validate();
  detail::require(count >= 1, "level_ordering: count must be >= 1");
  std::vector<Level> out;
  out.reserve(count);
  switch (p.model) {
    case Model::hydrogen3d:
      for (int n = 1; n <= count; ++n)
        out.push_back({LevelIndex(n - 1, 0), hydrogen_level_3d(p, n), n});
      break;
    case Model::hydrogen2d:
      for (int l = 0; l < count; ++l)
        out.push_back({LevelIndex(0, l), hydrogen_level_2d(p, l), l + 1});
      break;
    case Model::tietz:
      // key K = n_hat + l holds the pairs (n_hat, l) with n_hat from
      // ceil((K+1)/2) to K; walk keys in order, n_hat ascending within each
      for (int key = 1; static_cast<int>(out.size()) < count; ++key) {
        for (int n_hat = (key + 2) / 2; n_hat <= key; ++n_hat) {
          const int l = key - n_hat;
          if (l > n_hat - 1) continue;
          const auto idx = LevelIndex::from_principal(n_hat, l);
          out.push_back({idx, tietz_level(p, idx), key});
          if (static_cast<int>(out.size()) == count) break;
        }
      }
      break;
  }
  return out;
}

}  // namespace bertrand::spectra
