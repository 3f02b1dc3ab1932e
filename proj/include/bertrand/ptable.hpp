#pragma once

// Idealized Aufbau machine: filling orders, configurations, period lengths.
// Orbitals are limited to n <= 12.

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bertrand::ptable {

inline constexpr int kMaxN = 12;

class Orbital {
 public:
  /// Throws DomainError unless 1 <= n <= kMaxN and 0 <= l <= n - 1.
  Orbital(int n, int l);

  int n() const { return n_; }
  int l() const { return l_; }
  int capacity() const { return 2 * (2 * l_ + 1); }
  /// "1s", "3d", "5g", ...
  std::string label() const;

  friend bool operator==(const Orbital&, const Orbital&) = default;

 private:
  int n_;
  int l_;
};

/// Spectroscopic letter for l: s p d f g h i k l m n o q r t u v.
char orbital_letter(int l);

enum class FillingRule { fock_n, nl, madelung };
enum class PeriodStyle { janet, conventional };

std::string_view rule_name(FillingRule r);
/// Throws UnsupportedModelError for unknown names.
FillingRule parse_rule(std::string_view name);
std::string_view style_name(PeriodStyle s);
PeriodStyle parse_style(std::string_view name);

/// Number of leading orbitals the rule can order without needing n > kMaxN.
int max_order_length(FillingRule rule);

/// First `count` orbitals. madelung: by (n + l, n); nl: by (n, l); fock_n: by
/// n with l ascending inside a shell, which makes it coincide with nl.
/// Throws DomainError for count < 1 or count > max_order_length(rule).
std::vector<Orbital> filling_order(FillingRule rule, int count);

/// n + l for madelung, n otherwise.
int group_key(const Orbital& orbital, FillingRule rule);

struct Configuration {
  int Z = 0;
  FillingRule rule = FillingRule::madelung;
  std::vector<std::pair<Orbital, int>> shells;

  int electrons() const;
  /// "1s2 2s2 2p6 ..."
  std::string to_string() const;
};

/// Fills orbitals in rule order, each to capacity, until Z electrons are
/// placed. Throws DomainError for Z < 1 or Z beyond the n <= kMaxN table.
Configuration configuration(int Z, FillingRule rule);

struct PeriodTable {
  std::vector<int> lengths;
  bool extrapolated = false;  ///< more periods than the observed table has
};

/// janet: Madelung order grouped by constant n + l.
/// conventional: a new period opens at every ns orbital of the Madelung order.
/// Up to 12 (janet) or 11 (conventional) periods; extrapolated beyond 8 / 7.
PeriodTable period_lengths(PeriodStyle style, int n_periods);

}  // namespace bertrand::ptable
