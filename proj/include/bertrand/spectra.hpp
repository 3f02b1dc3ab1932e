#pragma once

// Closed-form level formulas. Units: hbar = m = 1, charge e configurable.

#include <string>
#include <string_view>
#include <vector>

namespace bertrand::spectra {

/// Radial node count n_r and orbital number l; n_hat = n_r + l + 1.
class LevelIndex {
 public:
  /// Throws DomainError for negative n_r or l.
  LevelIndex(int n_r, int l);

  /// Index with principal number n_hat >= l + 1.
  static LevelIndex from_principal(int n_hat, int l);

  int n_r() const { return n_r_; }
  int l() const { return l_; }
  int n_hat() const { return n_r_ + l_ + 1; }

  friend bool operator==(const LevelIndex&, const LevelIndex&) = default;

 private:
  int n_r_;
  int l_;
};

enum class Model { hydrogen3d, hydrogen2d, tietz };

std::string_view model_name(Model m);
/// Throws UnsupportedModelError for unknown names.
Model parse_model(std::string_view name);

struct SpectrumParams {
  int Z = 1;
  double e = 1.0;
  double w = 1.0;  ///< scale of the deformed spectrum; left free
  Model model = Model::hydrogen3d;

  /// Throws DomainError unless Z >= 1, e > 0, w > 0.
  void validate() const;
};

/// -(Z e^2)^2 / (2 n^2).
double hydrogen_level_3d(const SpectrumParams& p, int n);

/// n^2, spin excluded.
long long hydrogen_degeneracy_3d(int n);

/// -(Z e^2)^2 / (l + 1/2)^2.
double hydrogen_level_2d(const SpectrumParams& p, int l);

/// -Z^{7/3} e^4 / (w (n_hat + l)^2). Equal n_hat + l gives bit-identical values.
double tietz_level(const SpectrumParams& p, const LevelIndex& idx);

/// Coupling of the E = 0 Sturmian problem with weight W_gamma:
/// gamma = 1 gives (2N+1)(2N+3) with N = n_r + l; gamma = 1/2 gives
/// (M+1)(M+2) with M = n_r + 2l. Other gamma throw UnsupportedModelError.
double fisheye_coupling_law(double gamma, const LevelIndex& idx);

/// beta = (Z e^2)^2 / |E|, and its inverse E = -(Z e^2)^2 / beta.
double coupling_from_energy(const SpectrumParams& p, double energy);
double energy_from_coupling(const SpectrumParams& p, double beta);

struct Level {
  LevelIndex index;
  double energy;
  int group_key;
};

/// Lowest `count` levels of p.model in ascending energy.
/// hydrogen3d: one row per shell n (n_r = n - 1, l = 0), key n.
/// hydrogen2d: one row per l (n_r = 0), key n_hat.
/// tietz: every (n_hat, l), key n_hat + l, ties broken by ascending n_hat.
std::vector<Level> level_ordering(const SpectrumParams& p, int count);

}  // namespace bertrand::spectra
