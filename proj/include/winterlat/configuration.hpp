#ifndef WINTERLAT_CONFIGURATION_HPP
#define WINTERLAT_CONFIGURATION_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "winterlat/classifier.hpp"
#include "winterlat/lattice.hpp"

namespace winterlat {

/// Finite set of occupied film sites, kept sorted in (k2, k1) order.
class Config {
 public:
  Config() = default;

  explicit Config(std::vector<SiteCoord> sites) : sites_(std::move(sites))
  {
    std::sort(sites_.begin(), sites_.end());
    sites_.erase(std::unique(sites_.begin(), sites_.end()), sites_.end());
    for (const auto& s : sites_)
      if (s.k2 < 0) throw Error(ErrorKind::InvalidParameter, "configuration site below the film lattice");
  }

  Config(std::initializer_list<SiteCoord> sites) : Config(std::vector<SiteCoord>(sites)) {}

  const std::vector<SiteCoord>& sites() const { return sites_; }
  std::size_t size() const { return sites_.size(); }
  bool empty() const { return sites_.empty(); }
  auto begin() const { return sites_.begin(); }
  auto end() const { return sites_.end(); }
  const SiteCoord& operator[](std::size_t i) const { return sites_[i]; }

  bool contains(SiteCoord s) const { return std::binary_search(sites_.begin(), sites_.end(), s); }

  Config translated(int dk1, int dk2 = 0) const
  {
    Config c;
    c.sites_ = sites_;
    for (auto& s : c.sites_) {
      s.k1 += dk1;
      s.k2 += dk2;
    }
    if (dk2 < 0 && !c.sites_.empty() && c.sites_.front().k2 < 0)
      throw Error(ErrorKind::InvalidParameter, "translation moves sites below the film lattice");
    return c;
  }

  friend bool operator==(const Config&, const Config&) = default;
  friend auto operator<=>(const Config& a, const Config& b) { return a.sites_ <=> b.sites_; }

 private:
  std::vector<SiteCoord> sites_;
};

inline int occupied_neighbors(const Config& c, SiteCoord s)
{
  int k = 0;
  for (const auto& off : kNeighborOffsets)
    if (c.contains(s + off)) ++k;
  return k;
}

inline std::vector<std::pair<SiteCoord, SiteCoord>> film_bonds(const Config& c)
{
  std::vector<std::pair<SiteCoord, SiteCoord>> out;
  for (const auto& s : c)
    for (const auto& off : {SiteCoord{1, 0}, SiteCoord{0, 1}, SiteCoord{-1, 1}})
      if (c.contains(s + off)) out.emplace_back(s, s + off);
  return out;
}

inline int count_film_bonds(const Config& c)
{
  int b = 0;
  for (const auto& s : c)
    for (const auto& off : {SiteCoord{1, 0}, SiteCoord{0, 1}, SiteCoord{-1, 1}})
      if (c.contains(s + off)) ++b;
  return b;
}

inline std::vector<SiteCoord> boundary_atoms(const Config& c)
{
  std::vector<SiteCoord> out;
  for (const auto& s : c)
    if (occupied_neighbors(c, s) < 6) out.push_back(s);
  return out;
}

/// Components as index lists into config.sites(), each sorted, ordered by first site.
inline std::vector<std::vector<std::size_t>> connected_components(const Config& c)
{
  const std::size_t n = c.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  const auto& v = c.sites();
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& off : {SiteCoord{1, 0}, SiteCoord{0, 1}, SiteCoord{-1, 1}}) {
      auto it = std::lower_bound(v.begin(), v.end(), v[i] + off);
      if (it != v.end() && *it == v[i] + off) {
        const std::size_t a = find(i), b = find(static_cast<std::size_t>(it - v.begin()));
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
  std::vector<std::vector<std::size_t>> groups;
  std::vector<std::size_t> slot(n, std::numeric_limits<std::size_t>::max());
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    if (slot[r] == std::numeric_limits<std::size_t>::max()) {
      slot[r] = groups.size();
      groups.emplace_back();
    }
    groups[slot[r]].push_back(i);
  }
  return groups;
}

/// Euclidean |a - b|^2 <= q^2, evaluated exactly: 4|a-b|^2 = (2 dk1 + dk2)^2 + 3 dk2^2.
inline bool within_distance(SiteCoord a, SiteCoord b, int q)
{
  const std::int64_t d1 = a.k1 - b.k1, d2 = a.k2 - b.k2;
  return (2 * d1 + d2) * (2 * d1 + d2) + 3 * d2 * d2 <= 4 * static_cast<std::int64_t>(q) * q;
}

struct ComponentDecomposition {
  std::vector<Config> components;
  /// Indices into components, grouped into almost-connected components.
  std::vector<std::vector<std::size_t>> meta_clusters;
};

inline ComponentDecomposition decompose(const Config& c, int q)
{
  ComponentDecomposition out;
  for (const auto& g : connected_components(c)) {
    std::vector<SiteCoord> s;
    s.reserve(g.size());
    for (auto i : g) s.push_back(c[i]);
    out.components.emplace_back(std::move(s));
  }
  const std::size_t k = out.components.size();
  if (q == 1) {
    for (std::size_t i = 0; i < k; ++i) out.meta_clusters.push_back({i});
    return out;
  }
  std::vector<std::size_t> parent(k);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  auto close = [&](const Config& a, const Config& b) {
    for (const auto& x : a)
      for (const auto& y : b)
        if (within_distance(x, y, q)) return true;
    return false;
  };
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      if (find(i) != find(j) && close(out.components[i], out.components[j])) parent[find(j)] = find(i);
  std::vector<std::size_t> slot(k, std::numeric_limits<std::size_t>::max());
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t r = find(i);
    if (slot[r] == std::numeric_limits<std::size_t>::max()) {
      slot[r] = out.meta_clusters.size();
      out.meta_clusters.emplace_back();
    }
    out.meta_clusters[slot[r]].push_back(i);
  }
  return out;
}

inline bool is_almost_connected(const Config& c, int q)
{
  const auto d = decompose(c, q);
  return d.meta_clusters.size() <= 1;
}

inline bool has_substrate_bond(const Model& model, const Config& c)
{
  return std::any_of(c.begin(), c.end(), [&](SiteCoord s) { return model.is_bonded(s); });
}

namespace detail {

inline Config merge(const std::vector<Config>& parts)
{
  std::vector<SiteCoord> all;
  for (const auto& p : parts) all.insert(all.end(), p.begin(), p.end());
  return Config(std::move(all));
}

inline bool touches(const Config& moving, const Config& rest)
{
  for (const auto& s : moving)
    for (const auto& off : kNeighborOffsets)
      if (rest.contains(s + off)) return true;
  return false;
}

inline Config complement(const Config& all, const Config& part)
{
  std::vector<SiteCoord> out;
  std::set_difference(all.begin(), all.end(), part.begin(), part.end(), std::back_inserter(out));
  return Config(std::move(out));
}

}  // namespace detail

/// Drops every component without a substrate bond until a film or substrate bond activates.
inline Config transform_t1(const Config& config, const Model& model)
{
  Config cur = config;
  for (;;) {
    const auto parts = decompose(cur, 1).components;
    const Config* pick = nullptr;
    for (const auto& p : parts) {
      if (has_substrate_bond(model, p)) continue;
      if (!pick || p.sites().front().k2 < pick->sites().front().k2 ||
          (p.sites().front().k2 == pick->sites().front().k2 && p.sites().front() < pick->sites().front()))
        pick = &p;
    }
    if (!pick) return cur;
    const Config rest = detail::complement(cur, *pick);
    Config moving = *pick;
    for (;;) {
      // -t2 while above the bottom row, then -t1 along it
      moving = moving.sites().front().k2 > 0 ? moving.translated(0, -1) : moving.translated(-1, 0);
      if (has_substrate_bond(model, moving) || detail::touches(moving, rest)) break;
    }
    cur = detail::merge({rest, moving});
  }
}

/// Slides almost-connected components together by multiples of q t1.
inline Config transform_t2(const Config& config, const Model& model)
{
  const int q = model.period();
  Config cur = config;
  for (;;) {
    const auto dec = decompose(cur, q);
    if (dec.meta_clusters.size() <= 1) return cur;
    struct Cluster {
      Config sites;
      int leftmost_bond;
    };
    std::vector<Cluster> clusters;
    for (const auto& mc : dec.meta_clusters) {
      std::vector<Config> parts;
      for (auto i : mc) parts.push_back(dec.components[i]);
      Config merged = detail::merge(parts);
      int lb = std::numeric_limits<int>::max();
      for (const auto& s : merged)
        if (model.is_bonded(s)) lb = std::min(lb, s.k1);
      clusters.push_back({std::move(merged), lb});
    }
    std::sort(clusters.begin(), clusters.end(), [](const Cluster& a, const Cluster& b) {
      if (a.leftmost_bond != b.leftmost_bond) return a.leftmost_bond < b.leftmost_bond;
      return a.sites < b.sites;
    });
    if (clusters[1].leftmost_bond == std::numeric_limits<int>::max()) return cur;
    const Config rest = detail::complement(cur, clusters[1].sites);
    Config moving = clusters[1].sites;
    for (;;) {
      moving = moving.translated(-q, 0);
      if (q == 1) {
        if (detail::touches(moving, rest)) break;
      } else {
        bool near = false;
        for (const auto& a : moving) {
          for (const auto& b : rest)
            if (within_distance(a, b, q)) {
              near = true;
              break;
            }
          if (near) break;
        }
        if (near) break;
      }
    }
    cur = detail::merge({rest, moving});
  }
}

inline Config transform(const Config& config, const Model& model)
{
  // fast path: every component anchored and a single almost-connected cluster
  bool anchored = true;
  for (const auto& g : connected_components(config)) {
    bool any = false;
    for (auto i : g) any = any || model.is_bonded(config[i]);
    if (!any) {
      anchored = false;
      break;
    }
  }
  if (anchored && is_almost_connected(config, model.period())) return config;
  return transform_t2(transform_t1(config, model), model);
}

/// Translates by a multiple of q so that the leftmost bottom-row atom has k1 in [0, q).
inline Config normalize_anchor(const Config& c, int q)
{
  if (c.empty()) return c;
  const int k1 = c.sites().front().k1;
  const int shift = static_cast<int>(mod(k1, q)) - k1;
  return c.translated(shift, 0);
}

/// The n leftmost bonded sites starting at the recentered origin.
inline Config wetting_config(const Model& model, int n)
{
  std::vector<SiteCoord> out;
  const int start = recenter_shift(model);
  for (int k = start; static_cast<int>(out.size()) < n; ++k)
    if (model.is_bonded({k, 0})) out.push_back({k, 0});
  return Config(std::move(out));
}

/// Largest film-bond count among n-subsets of bonded sites.
inline int wetting_bond_count(const Model& model, int n)
{
  return count_film_bonds(wetting_config(model, n));
}

inline bool is_wetting_configuration(const Model& model, const Config& c)
{
  for (const auto& s : c)
    if (!model.is_bonded(s)) return false;
  return count_film_bonds(c) == wetting_bond_count(model, static_cast<int>(c.size()));
}

/// Index map into the coordinates of reduce(from): relabels by the recentering shift.
inline Config associated_config(const Config& c, const Model& from) { return c.translated(-recenter_shift(from), 0); }

// ---------------------------------------------------------------------------
// Config text format: one "k1 k2" pair per line, '#' comments.

inline std::string to_text(const Config& c)
{
  std::ostringstream os;
  for (const auto& s : c) os << s.k1 << ' ' << s.k2 << '\n';
  return os.str();
}

inline Config parse_config(const std::string& text)
{
  std::istringstream is(text);
  std::string line;
  std::vector<SiteCoord> out;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    long long a = 0, b = 0;
    if (!(ls >> a)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw Error(ErrorKind::Parse, "line " + std::to_string(lineno) + ": expected 'k1 k2'");
    }
    std::string extra;
    if (!(ls >> b) || (ls >> extra))
      throw Error(ErrorKind::Parse, "line " + std::to_string(lineno) + ": expected 'k1 k2'");
    if (b < 0) throw Error(ErrorKind::Parse, "line " + std::to_string(lineno) + ": k2 must be non-negative");
    out.push_back({static_cast<int>(a), static_cast<int>(b)});
  }
  return Config(std::move(out));
}

}  // namespace winterlat

#endif  // WINTERLAT_CONFIGURATION_HPP
