#ifndef WINTERLAT_ENERGY_HPP
#define WINTERLAT_ENERGY_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "winterlat/classifier.hpp"
#include "winterlat/configuration.hpp"
#include "winterlat/lattice.hpp"

namespace winterlat {

inline Rational v1(const Model& model, SiteCoord site) { return -model.c_s() * model.substrate_count(site); }

struct EnergyBreakdown {
  int film_bonds = 0;
  int substrate_bonds = 0;
  Rational film_term;
  Rational substrate_term;
  Rational total;
};

inline int count_substrate_bonds(const Model& model, const Config& c)
{
  int s = 0;
  for (const auto& x : c) s += model.substrate_count(x);
  return s;
}

/// V from integer bond counts: -2 c_F b - c_S s.
inline Rational energy_from_counts(const InteractionVector& l, int b, int s)
{
  return -2 * l.c_f * b - l.c_s * s;
}

inline EnergyBreakdown total_energy(const Model& model, const Config& c)
{
  EnergyBreakdown e;
  e.film_bonds = count_film_bonds(c);
  e.substrate_bonds = count_substrate_bonds(model, c);
  e.film_term = -2 * model.c_f() * e.film_bonds;
  e.substrate_term = -model.c_s() * e.substrate_bonds;
  e.total = e.film_term + e.substrate_term;
  return e;
}

inline Rational energy(const Model& model, const Config& c) { return total_energy(model, c).total; }

/// c_F times the number of missing film bonds (out of 6); 0 for empty sites.
inline Rational e_loc(const Model& model, const Config& c, SiteCoord site)
{
  if (!c.contains(site)) return 0;
  return model.c_f() * (6 - occupied_neighbors(c, site));
}

inline Rational e_def(const Model& model, const Config& c, SiteCoord site)
{
  if (!c.contains(site)) return 0;
  return e_loc(model, c, site) + v1(model, site);
}

// ---------------------------------------------------------------------------
// Strips

enum class WeightRule {
  /// Side weight 1/2 toward a non-centre. Toward a centre y: 0 if y is one half of an isolated
  /// bonded pair (y has one occupied adjacent centre and its other side is not a bonded site), else 1/4.
  /// Each centre keeps whatever its neighbouring strips did not take, so its total weight is exactly 1.
  Balanced,
  /// Triple chosen by the number a of occupied adjacent centres: (1,1/2,1/2), (1/2,1/2,1/2), (1/2,1/4,1/4).
  Occupancy,
};

inline const char* to_string(WeightRule r) { return r == WeightRule::Balanced ? "balanced" : "occupancy"; }

inline bool is_center(const Model& model, const Config& c, SiteCoord s) { return model.is_bonded(s) && c.contains(s); }

/// Topmost occupied site of the vertical column through the bottom-row site x.
inline SiteCoord strip_top(const Config& c, SiteCoord x)
{
  const int top_row = c.empty() ? 0 : c.sites().back().k2;
  for (int j = top_row / 2; j > 0; --j) {
    const SiteCoord y{x.k1 - j, 2 * j};
    if (c.contains(y)) return y;
  }
  return x;
}

struct StripWeights {
  Rational w, w_plus, w_minus;
};

namespace detail {

inline Rational balanced_side_weight(const Model& model, const Config& c, SiteCoord from, SiteCoord y)
{
  if (!is_center(model, c, y)) return Rational(1, 2);
  const SiteCoord other = y + (y - from);
  const int centers = int(is_center(model, c, y + SiteCoord{1, 0})) + int(is_center(model, c, y - SiteCoord{1, 0}));
  if (centers == 1 && !model.is_bonded(other)) return Rational(0);
  return Rational(1, 4);
}

}  // namespace detail

inline StripWeights below_weights(const Model& model, const Config& c, SiteCoord x, WeightRule rule)
{
  const SiteCoord xp = x + SiteCoord{1, 0}, xm = x - SiteCoord{1, 0};
  if (rule == WeightRule::Occupancy) {
    const int a = int(is_center(model, c, xp)) + int(is_center(model, c, xm));
    if (a == 0) return {1, Rational(1, 2), Rational(1, 2)};
    if (a == 1) return {Rational(1, 2), Rational(1, 2), Rational(1, 2)};
    return {Rational(1, 2), Rational(1, 4), Rational(1, 4)};
  }
  StripWeights sw;
  sw.w_plus = detail::balanced_side_weight(model, c, x, xp);
  sw.w_minus = detail::balanced_side_weight(model, c, x, xm);
  sw.w = 1;
  if (is_center(model, c, xp)) sw.w -= detail::balanced_side_weight(model, c, xp, x);
  if (is_center(model, c, xm)) sw.w -= detail::balanced_side_weight(model, c, xm, x);
  return sw;
}

struct StripReport {
  SiteCoord center;
  SiteCoord x_plus, x_minus, top, top_plus, top_minus;
  /// Strip members present in the configuration, in the order x, x+, x-, x~, x~+, x~-.
  std::vector<SiteCoord> members;
  StripWeights below;
  Rational above_plus, above_minus;
  Rational e_below, e_above, total;
};

inline StripReport strip(const Model& model, const Config& c, SiteCoord x, WeightRule rule = WeightRule::Balanced)
{
  if (!is_center(model, c, x)) throw Error(ErrorKind::NotACenter, "strip centre must be an occupied bonded site");
  StripReport r;
  r.center = x;
  r.x_plus = x + SiteCoord{1, 0};
  r.x_minus = x - SiteCoord{1, 0};
  r.top = strip_top(c, x);
  r.top_plus = r.top + SiteCoord{0, 1};
  r.top_minus = r.top + SiteCoord{-1, 1};
  for (const auto& s : {x, r.x_plus, r.x_minus, r.top, r.top_plus, r.top_minus})
    if (c.contains(s) && std::find(r.members.begin(), r.members.end(), s) == r.members.end()) r.members.push_back(s);

  r.below = below_weights(model, c, x, rule);
  r.e_below = r.below.w * e_loc(model, c, x) + r.below.w_plus * e_loc(model, c, r.x_plus) +
              r.below.w_minus * e_loc(model, c, r.x_minus) + v1(model, x);

  auto above_weight = [&](SiteCoord side, SiteCoord mine, int dir) {
    if (!is_center(model, c, side)) return Rational(1);
    const SiteCoord t = strip_top(c, side);
    const SiteCoord theirs = dir > 0 ? t + SiteCoord{-1, 1} : t + SiteCoord{0, 1};
    return mine == theirs ? Rational(1, 2) : Rational(1);
  };
  r.above_plus = above_weight(r.x_plus, r.top_plus, +1);
  r.above_minus = above_weight(r.x_minus, r.top_minus, -1);
  r.e_above = r.above_plus * e_loc(model, c, r.top_plus) + r.above_minus * e_loc(model, c, r.top_minus);
  if (r.top != x) r.e_above += e_loc(model, c, r.top);
  r.total = r.e_below + r.e_above;
  return r;
}

inline std::vector<SiteCoord> strip_centers(const Model& model, const Config& c)
{
  std::vector<SiteCoord> out;
  for (const auto& s : c) {
    if (s.k2 > 0) break;
    if (model.is_bonded(s)) out.push_back(s);
  }
  return out;
}

/// Lower bound on strip energies for the reduced canonical model.
inline Rational delta_strip(const Model& model)
{
  const CanonicalModel cm = reduce(model);
  const Rational cf = cm.lambda.c_f, cs = cm.lambda.c_s;
  const bool dense = (cm.kind == CanonicalKind::M0 && cm.q == 1) || (cm.kind == CanonicalKind::M1 && cm.q == 2);
  if (dense) return 4 * cf - cs;
  if (cm.kind == CanonicalKind::M1 && cm.r == 1) return 5 * cf - cs;
  return 6 * cf - cs;
}

inline Rational default_delta(const Model& model) { return std::min(delta_strip(model) / 6, model.c_f()); }

struct StripDecompositionReport {
  Rational lhs;  // 6 c_F n + V
  Rational rhs;  // sum of strip energies plus E_loc outside all strips
  bool holds = false;
  /// Largest total weight with which any atom's E_loc enters the right-hand side.
  Rational max_weight;
  std::optional<SiteCoord> overweight_atom;
  Rational min_strip;  // minimum strip energy over centres (0 if none)
  std::optional<SiteCoord> min_strip_center;
};

inline StripDecompositionReport strip_decomposition_check(const Model& model, const Config& c,
                                                          WeightRule rule = WeightRule::Balanced)
{
  StripDecompositionReport rep;
  const auto n = static_cast<std::int64_t>(c.size());
  rep.lhs = 6 * model.c_f() * n + energy(model, c);

  std::vector<Rational> weight(c.size(), Rational(0));
  std::vector<bool> in_strip(c.size(), false);
  auto index_of = [&](SiteCoord s) -> std::optional<std::size_t> {
    auto it = std::lower_bound(c.begin(), c.end(), s);
    if (it == c.end() || *it != s) return std::nullopt;
    return static_cast<std::size_t>(it - c.begin());
  };
  auto add = [&](SiteCoord s, const Rational& w) {
    if (auto i = index_of(s)) {
      weight[*i] += w;
      in_strip[*i] = true;
    }
  };
  bool first = true;
  for (const auto& x : strip_centers(model, c)) {
    const StripReport sr = strip(model, c, x, rule);
    rep.rhs += sr.total;
    add(x, sr.below.w);
    add(sr.x_plus, sr.below.w_plus);
    add(sr.x_minus, sr.below.w_minus);
    if (sr.top != x) add(sr.top, 1);
    add(sr.top_plus, sr.above_plus);
    add(sr.top_minus, sr.above_minus);
    if (first || sr.total < rep.min_strip) {
      rep.min_strip = sr.total;
      rep.min_strip_center = x;
      first = false;
    }
  }
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (!in_strip[i]) {
      rep.rhs += e_loc(model, c, c[i]);
      weight[i] = 1;
    }
    // atoms with E_loc = 0 contribute nothing whatever their weight
    if (weight[i] > rep.max_weight && e_loc(model, c, c[i]) > 0) {
      rep.max_weight = weight[i];
      rep.overweight_atom = c[i];
    }
  }
  rep.holds = rep.lhs >= rep.rhs;
  return rep;
}

struct LowerBoundReport {
  Rational energy;
  Rational bound;  // -6 c_F n + delta #boundary
  int boundary = 0;
  bool holds = false;
};

inline LowerBoundReport lower_bound_check(const Model& model, const Config& c, const Rational& delta)
{
  LowerBoundReport r;
  r.energy = energy(model, c);
  r.boundary = static_cast<int>(boundary_atoms(c).size());
  r.bound = -6 * model.c_f() * static_cast<std::int64_t>(c.size()) + delta * r.boundary;
  r.holds = r.energy >= r.bound;
  return r;
}

inline LowerBoundReport lower_bound_check(const Model& model, const Config& c)
{
  return lower_bound_check(model, c, default_delta(model));
}

}  // namespace winterlat

#endif  // WINTERLAT_ENERGY_HPP
