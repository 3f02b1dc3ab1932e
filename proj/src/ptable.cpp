#include "bertrand/ptable.hpp"

#include <algorithm>

#include "bertrand/error.hpp"

namespace bertrand::ptable {

namespace {

constexpr std::string_view kLetters = "spdfghiklmnoqrtuv";

std::vector<Orbital> all_orbitals() {
  std::vector<Orbital> out;
  for (int n = 1; n <= kMaxN; ++n)
    for (int l = 0; l < n; ++l) out.emplace_back(n, l);
  return out;
}

std::vector<Orbital> sorted_orbitals(FillingRule rule) {
  auto v = all_orbitals();
  if (rule == FillingRule::madelung) {
    std::stable_sort(v.begin(), v.end(), [](const Orbital& a, const Orbital& b) {
      const int ka = a.n() + a.l(), kb = b.n() + b.l();
      return ka != kb ? ka < kb : a.n() < b.n();
    });
  } else {
    std::stable_sort(v.begin(), v.end(), [](const Orbital& a, const Orbital& b) {
      return a.n() != b.n() ? a.n() < b.n() : a.l() < b.l();
    });
  }
  return v;
}

}  // namespace

Orbital::Orbital(int n, int l) : n_(n), l_(l) {
  detail::require(n >= 1 && n <= kMaxN, "Orbital: n must lie in [1, 12]");
  detail::require(l >= 0 && l <= n - 1, "Orbital: l must lie in [0, n-1]");
}

char orbital_letter(int l) {
  detail::require(l >= 0 && l < static_cast<int>(kLetters.size()), "orbital_letter: l out of range");
  return kLetters[l];
}

std::string Orbital::label() const { return std::to_string(n_) + orbital_letter(l_); }

std::string_view rule_name(FillingRule r) {
  switch (r) {
    case FillingRule::fock_n: return "fock_n";
    case FillingRule::nl: return "nl";
    case FillingRule::madelung: return "madelung";
  }
  return "unknown";
}

FillingRule parse_rule(std::string_view name) {
  if (name == "fock_n") return FillingRule::fock_n;
  if (name == "nl") return FillingRule::nl;
  if (name == "madelung") return FillingRule::madelung;
  throw UnsupportedModelError("unknown filling rule '" + std::string(name) + "'");
}

std::string_view style_name(PeriodStyle s) {
  return s == PeriodStyle::janet ? "janet" : "conventional";
}

PeriodStyle parse_style(std::string_view name) {
  if (name == "janet") return PeriodStyle::janet;
  if (name == "conventional") return PeriodStyle::conventional;
  throw UnsupportedModelError("unknown period style '" + std::string(name) + "'");
}

int max_order_length(FillingRule rule) {
  if (rule != FillingRule::madelung) return kMaxN * (kMaxN + 1) / 2;
  // every key n + l <= kMaxN is complete; key K holds floor((K + 1) / 2) orbitals
  int total = 0;
  for (int key = 1; key <= kMaxN; ++key) total += (key + 1) / 2;
  return total;
}

std::vector<Orbital> filling_order(FillingRule rule, int count) {
  detail::require(count >= 1, "filling_order: count must be >= 1");
  detail::require(count <= max_order_length(rule), "filling_order: count exceeds the n <= 12 table");
  auto v = sorted_orbitals(rule);
  v.resize(count, Orbital(1, 0));
  return v;
}

int group_key(const Orbital& orbital, FillingRule rule) {
  return rule == FillingRule::madelung ? orbital.n() + orbital.l() : orbital.n();
}

int Configuration::electrons() const {
  int total = 0;
  for (const auto& [orb, occ] : shells) total += occ;
  return total;
}

std::string Configuration::to_string() const {
  std::string out;
  for (const auto& [orb, occ] : shells) {
    if (!out.empty()) out += ' ';
    out += orb.label();
    out += std::to_string(occ);
  }
  return out;
}

Configuration configuration(int Z, FillingRule rule) {
  detail::require(Z >= 1, "configuration: Z must be >= 1");
  const auto order = filling_order(rule, max_order_length(rule));
  Configuration c;
  c.Z = Z;
  c.rule = rule;
  int left = Z;
  for (const auto& orb : order) {
    if (left == 0) break;
    const int occ = std::min(left, orb.capacity());
    c.shells.emplace_back(orb, occ);
    left -= occ;
  }
  detail::require(left == 0, "configuration: Z exceeds the n <= 12 table");
  return c;
}

PeriodTable period_lengths(PeriodStyle style, int n_periods) {
  detail::require(n_periods >= 1, "period_lengths: need at least one period");
  const auto order = filling_order(FillingRule::madelung, max_order_length(FillingRule::madelung));
  PeriodTable t;
  if (style == PeriodStyle::janet) {
    detail::require(n_periods <= kMaxN, "period_lengths: at most 12 Janet periods");
    t.lengths.assign(n_periods, 0);
    for (const auto& orb : order) {
      const int key = orb.n() + orb.l();
      if (key <= n_periods) t.lengths[key - 1] += orb.capacity();
    }
    t.extrapolated = n_periods > 8;
    return t;
  }
  detail::require(n_periods <= kMaxN - 1, "period_lengths: at most 11 conventional periods");
  t.lengths.assign(n_periods, 0);
  int period = 0;
  for (const auto& orb : order) {
    if (orb.l() == 0) ++period;
    if (period > n_periods) break;
    t.lengths[period - 1] += orb.capacity();
  }
  t.extrapolated = n_periods > 7;
  return t;
}

}  // namespace bertrand::ptable
