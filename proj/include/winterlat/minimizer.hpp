#ifndef WINTERLAT_MINIMIZER_HPP
#define WINTERLAT_MINIMIZER_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "winterlat/classifier.hpp"
#include "winterlat/configuration.hpp"
#include "winterlat/continuum.hpp"
#include "winterlat/energy.hpp"

namespace winterlat {

enum class Method { Exact, Anneal, Naive };

inline const char* to_string(Method m)
{
  switch (m) {
    case Method::Exact: return "exact";
    case Method::Anneal: return "anneal";
    case Method::Naive: return "naive";
  }
  return "?";
}

inline Method parse_method(std::string_view s)
{
  if (s == "exact") return Method::Exact;
  if (s == "anneal") return Method::Anneal;
  if (s == "naive") return Method::Naive;
  throw Error(ErrorKind::Parse, "unknown method '" + std::string(s) + "' (exact|anneal|naive)");
}

struct SearchResult {
  Rational energy;
  Config argmin;
  std::optional<std::vector<Config>> all_minimizers;
  /// False when the minimizer list was capped or a component class was truncated.
  bool minimizers_complete = true;
  Method method = Method::Exact;
  std::uint64_t visited = 0;
  std::uint64_t seed = 0;
};

// ---------------------------------------------------------------------------
// Component table: every connected polyform touching the bottom row with at least one substrate bond,
// one representative per q t1 translation class, bucketed by size and by (film bonds, substrate bonds).

struct ComponentClass {
  int film_bonds = 0;
  int substrate_bonds = 0;
  std::uint64_t count = 0;
  std::vector<Config> representatives;
};

class ComponentTable {
 public:
  ComponentTable(const Model& model, int max_n, std::size_t cap = 256) : model_(model), max_n_(max_n), cap_(cap)
  {
    if (max_n < 1) throw Error(ErrorKind::InvalidParameter, "component size bound must be positive");
    by_size_.resize(static_cast<std::size_t>(max_n) + 1);
    for (int root = 0; root < model.period(); ++root) enumerate(root);
    for (auto& bucket : by_size_) {
      std::sort(bucket.begin(), bucket.end(), [](const ComponentClass& a, const ComponentClass& b) {
        return std::pair(a.film_bonds, a.substrate_bonds) < std::pair(b.film_bonds, b.substrate_bonds);
      });
    }
  }

  int max_n() const { return max_n_; }
  std::uint64_t visited() const { return visited_; }
  bool truncated() const { return truncated_; }
  const Model& model() const { return model_; }
  const std::vector<ComponentClass>& classes(int size) const { return by_size_.at(static_cast<std::size_t>(size)); }

 private:
  void enumerate(int root)
  {
    const int n = max_n_;
    w_ = 2 * n + 1;
    base_ = root - n;
    root_ = root;
    seen_.assign(static_cast<std::size_t>(w_ * n), 0);
    occ_.assign(static_cast<std::size_t>(w_ * n), 0);
    poly_.clear();
    const int r = cell(root, 0);
    seen_[static_cast<std::size_t>(r)] = 1;
    std::vector<int> untried{r};
    grow(untried, 0, 0, 0);
  }

  int cell(int k1, int k2) const { return k2 * w_ + (k1 - base_); }
  SiteCoord site(int c) const { return {c % w_ + base_, c / w_}; }

  bool allowed(int k1, int k2) const
  {
    if (k2 < 0 || k2 >= max_n_ || k1 < base_ || k1 >= base_ + w_) return false;
    return k2 > 0 || k1 >= root_;
  }

  void grow(std::vector<int> untried, int size, int b, int s)
  {
    while (!untried.empty()) {
      const int c = untried.back();
      untried.pop_back();
      const SiteCoord x = site(c);
      int nb = 0;
      for (const auto& off : kNeighborOffsets) {
        const SiteCoord y = x + off;
        if (allowed(y.k1, y.k2) || (y.k2 == 0 && y.k1 == root_)) nb += occ_[static_cast<std::size_t>(cell(y.k1, y.k2))];
      }
      const int sc = model_.substrate_count(x);
      occ_[static_cast<std::size_t>(c)] = 1;
      poly_.push_back(c);
      ++visited_;
      record(size + 1, b + nb, s + sc);
      if (size + 1 < max_n_) {
        std::vector<int> next = untried;
        std::vector<int> added;
        for (const auto& off : kNeighborOffsets) {
          const SiteCoord y = x + off;
          if (!allowed(y.k1, y.k2)) continue;
          const int d = cell(y.k1, y.k2);
          if (!seen_[static_cast<std::size_t>(d)]) {
            seen_[static_cast<std::size_t>(d)] = 1;
            next.push_back(d);
            added.push_back(d);
          }
        }
        grow(std::move(next), size + 1, b + nb, s + sc);
        for (int d : added) seen_[static_cast<std::size_t>(d)] = 0;
      }
      occ_[static_cast<std::size_t>(c)] = 0;
      poly_.pop_back();
    }
  }

  void record(int size, int b, int s)
  {
    if (s == 0) return;
    auto& bucket = by_size_[static_cast<std::size_t>(size)];
    auto it = std::find_if(bucket.begin(), bucket.end(),
                           [&](const ComponentClass& k) { return k.film_bonds == b && k.substrate_bonds == s; });
    if (it == bucket.end()) {
      bucket.push_back({b, s, 0, {}});
      it = bucket.end() - 1;
    }
    ++it->count;
    if (it->representatives.size() < cap_) {
      std::vector<SiteCoord> sites;
      sites.reserve(poly_.size());
      for (int c : poly_) sites.push_back(site(c));
      it->representatives.emplace_back(std::move(sites));
    } else {
      truncated_ = true;
    }
  }

  Model model_;
  int max_n_;
  std::size_t cap_;
  std::vector<std::vector<ComponentClass>> by_size_;
  std::uint64_t visited_ = 0;
  bool truncated_ = false;

  int w_ = 0, base_ = 0, root_ = 0;
  std::vector<char> seen_, occ_;
  std::vector<int> poly_;
};

struct ExactOptions {
  int max_n = 10;
  bool collect_all = true;
  std::size_t max_minimizers = 256;
};

namespace detail {

/// Places components far apart (multiples of q t1), then applies T and normalizes the anchor.
inline Config assemble(const Model& model, const std::vector<const Config*>& parts, int n)
{
  const int q = model.period();
  const int stride = q * (2 * n + 4);
  std::vector<SiteCoord> all;
  int offset = 0;
  for (const Config* p : parts) {
    for (const auto& s : *p) all.push_back({s.k1 + offset, s.k2});
    offset += stride;
  }
  return normalize_anchor(transform(Config(std::move(all)), model), q);
}

}  // namespace detail

/// Global minimum of V over n-atom configurations using a precomputed component table.
inline SearchResult exact_minimize(const ComponentTable& table, const InteractionVector& lambda, int n,
                                   const ExactOptions& opt = {})
{
  if (n < 1) throw Error(ErrorKind::InvalidParameter, "n must be positive");
  if (n > table.max_n()) throw Error(ErrorKind::TooLarge, "n exceeds the component table bound");
  const Model model = table.model().with_lambda(lambda);

  std::vector<std::optional<Rational>> e1(static_cast<std::size_t>(n) + 1);
  for (int m = 1; m <= n; ++m)
    for (const auto& k : table.classes(m)) {
      const Rational e = energy_from_counts(lambda, k.film_bonds, k.substrate_bonds);
      if (!e1[static_cast<std::size_t>(m)] || e < *e1[static_cast<std::size_t>(m)]) e1[static_cast<std::size_t>(m)] = e;
    }
  std::vector<Rational> f(static_cast<std::size_t>(n) + 1);
  f[0] = 0;
  for (int k = 1; k <= n; ++k) {
    std::optional<Rational> best;
    for (int m = 1; m <= k; ++m) {
      if (!e1[static_cast<std::size_t>(m)]) continue;
      const Rational e = *e1[static_cast<std::size_t>(m)] + f[static_cast<std::size_t>(k - m)];
      if (!best || e < *best) best = e;
    }
    f[static_cast<std::size_t>(k)] = *best;
  }

  SearchResult res;
  res.method = Method::Exact;
  res.energy = f[static_cast<std::size_t>(n)];
  res.visited = table.visited();
  res.minimizers_complete = true;  // cleared below if an optimal class was capped

  // optimal components per size
  auto optimal_reps = [&](int m) {
    std::vector<const Config*> out;
    for (const auto& k : table.classes(m))
      if (energy_from_counts(lambda, k.film_bonds, k.substrate_bonds) == *e1[static_cast<std::size_t>(m)]) {
        for (const auto& r : k.representatives) out.push_back(&r);
        if (k.representatives.size() < k.count) res.minimizers_complete = false;
      }
    return out;
  };

  std::vector<Config> found;
  std::vector<int> parts;
  std::function<void(int, int)> partitions = [&](int rem, int maxpart) {
    if (!opt.collect_all && !found.empty()) return;
    if (rem == 0) {
      // cross product over optimal components, non-decreasing choice index for equal sizes
      std::vector<std::vector<const Config*>> choices;
      for (int m : parts) choices.push_back(optimal_reps(m));
      std::vector<std::size_t> idx(parts.size(), 0);
      std::function<void(std::size_t)> pick = [&](std::size_t i) {
        if (found.size() >= opt.max_minimizers) {
          res.minimizers_complete = false;
          return;
        }
        if (!opt.collect_all && !found.empty()) return;
        if (i == parts.size()) {
          std::vector<const Config*> sel;
          for (std::size_t j = 0; j < parts.size(); ++j) sel.push_back(choices[j][idx[j]]);
          found.push_back(detail::assemble(model, sel, n));
          return;
        }
        const std::size_t start = (i > 0 && parts[i] == parts[i - 1]) ? idx[i - 1] : 0;
        for (std::size_t c = start; c < choices[i].size(); ++c) {
          idx[i] = c;
          pick(i + 1);
        }
      };
      pick(0);
      return;
    }
    for (int m = std::min(rem, maxpart); m >= 1; --m) {
      if (!e1[static_cast<std::size_t>(m)]) continue;
      if (*e1[static_cast<std::size_t>(m)] + f[static_cast<std::size_t>(rem - m)] != f[static_cast<std::size_t>(rem)]) continue;
      parts.push_back(m);
      partitions(rem - m, m);
      parts.pop_back();
    }
  };
  partitions(n, n);

  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());
  for (const auto& c : found)
    if (energy(model, c) != res.energy) throw std::logic_error("assembled minimizer energy mismatch");
  res.argmin = found.front();
  if (opt.collect_all) res.all_minimizers = std::move(found);
  return res;
}

inline SearchResult exact_minimize(const Model& model, int n, const ExactOptions& opt = {})
{
  if (n > opt.max_n) throw Error(ErrorKind::TooLarge, "n = " + std::to_string(n) + " exceeds the exact bound " + std::to_string(opt.max_n));
  if (n < 1) throw Error(ErrorKind::InvalidParameter, "n must be positive");
  const ComponentTable table(model, n);
  return exact_minimize(table, model.lambda(), n, opt);
}

// ---------------------------------------------------------------------------

inline std::vector<SiteCoord> make_window(int k1_min, int k1_max, int k2_min, int k2_max)
{
  std::vector<SiteCoord> w;
  for (int k2 = std::max(0, k2_min); k2 <= k2_max; ++k2)
    for (int k1 = k1_min; k1 <= k1_max; ++k1) w.push_back({k1, k2});
  std::sort(w.begin(), w.end());
  return w;
}

/// Calls f(Config) for every subset of the window with 1..max_n sites (or exactly n if exact_size).
template <typename F>
void for_each_window_config(const std::vector<SiteCoord>& window, int max_n, bool exact_size, F&& f)
{
  const int m = static_cast<int>(window.size());
  std::vector<int> idx;
  std::vector<SiteCoord> sites;
  std::function<void(int)> rec = [&](int start) {
    const int k = static_cast<int>(idx.size());
    if (k > 0 && (!exact_size || k == max_n)) f(Config(sites));
    if (k == max_n) return;
    for (int i = start; i < m; ++i) {
      idx.push_back(i);
      sites.push_back(window[static_cast<std::size_t>(i)]);
      rec(i + 1);
      idx.pop_back();
      sites.pop_back();
    }
  };
  rec(0);
}

inline SearchResult naive_window_minimize(const Model& model, int n, const std::vector<SiteCoord>& window)
{
  if (n > 5 || window.size() > 40) throw Error(ErrorKind::TooLarge, "naive search limited to n <= 5 and 40 window sites");
  if (n < 1 || static_cast<std::size_t>(n) > window.size()) throw Error(ErrorKind::InvalidParameter, "n out of range");
  SearchResult res;
  res.method = Method::Naive;
  std::vector<Config> all;
  bool have = false;
  for_each_window_config(window, n, true, [&](const Config& c) {
    ++res.visited;
    const Rational e = energy(model, c);
    if (!have || e < res.energy) {
      res.energy = e;
      all.clear();
      have = true;
    }
    if (e == res.energy) all.push_back(c);
  });
  res.argmin = all.front();
  res.all_minimizers = std::move(all);
  return res;
}

// ---------------------------------------------------------------------------
// Simulated annealing

struct AnnealSchedule {
  std::uint64_t steps = 200000;
  double initial_temperature = 1.0;  // in units of c_F
  double cooling = 0.95;
  std::uint64_t moves_per_temperature = 2000;
  int restarts = 1;
  std::uint64_t seed = 1;
  int jobs = 1;
};

namespace detail {

inline std::uint64_t site_key(SiteCoord s)
{
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(s.k1)) << 32) | static_cast<std::uint32_t>(s.k2);
}

/// Lattice offsets with hexagonal distance 1..3.
inline const std::vector<SiteCoord>& relocation_offsets()
{
  static const std::vector<SiteCoord> offs = [] {
    std::vector<SiteCoord> v;
    for (int a = -3; a <= 3; ++a)
      for (int b = -3; b <= 3; ++b) {
        const int d = std::max({std::abs(a), std::abs(b), std::abs(a + b)});
        if (d >= 1 && d <= 3) v.push_back({a, b});
      }
    return v;
  }();
  return offs;
}

/// Unbiased integer in [0, n) from a 64-bit engine.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n)
{
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  for (;;) {
    const std::uint64_t x = rng();
    if (x < limit) return x % n;
  }
}

inline double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Lattice sites inside a dilated Winterbottom shape, ranked by gauge about the wall point below
/// the shape's centre; the n lowest-gauge sites, shifted horizontally for the best substrate contact.
inline Config winterbottom_seed(const Model& model, int n)
{
  double sig = 0.0;
  try {
    sig = to_double(sigma(model));
  } catch (const Error&) {
  }
  const double cf = to_double(model.c_f());
  if (sig <= -2.0 * cf) return wetting_config(model, n);
  const Polygon w = winterbottom_polygon(cf, sig, 1.0 / kRho);
  double cx = 0.0, xmin = 1e300, xmax = -1e300;
  for (const auto& v : w.vertices) {
    xmin = std::min(xmin, v.x);
    xmax = std::max(xmax, v.x);
  }
  cx = 0.5 * (xmin + xmax);
  struct Edge {
    double nx, ny, h;
  };
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const Point a = w.vertices[i], b = w.vertices[(i + 1) % w.size()];
    const double dx = b.x - a.x, dy = b.y - a.y, len = std::hypot(dx, dy);
    const double nx = dy / len, ny = -dx / len;
    const double h = nx * (a.x - cx) + ny * a.y;
    if (h > 1e-12) edges.push_back({nx, ny, h});
  }
  // region scales like sqrt(n) in lattice units
  const int rad = static_cast<int>(std::ceil(3.0 * std::sqrt(static_cast<double>(n)))) + 3;
  std::vector<std::pair<double, SiteCoord>> ranked;
  for (int k2 = 0; k2 <= rad; ++k2)
    for (int k1 = -2 * rad; k1 <= 2 * rad; ++k1) {
      const double x = k1 + 0.5 * k2, y = 0.5 * kSqrt3 * k2 + 0.25 * kSqrt3;
      double g = 0.0;
      for (const auto& e : edges) g = std::max(g, (e.nx * x + e.ny * y) / e.h);
      ranked.push_back({g, SiteCoord{k1, k2}});
    }
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second < b.second;
  });
  std::vector<SiteCoord> sites;
  for (int i = 0; i < n; ++i) sites.push_back(ranked[static_cast<std::size_t>(i)].second);
  const Config base(std::move(sites));
  Config best = base;
  Rational best_e = energy(model, base);
  for (int s = 1; s < model.period(); ++s) {
    const Config c = base.translated(s, 0);
    const Rational e = energy(model, c);
    if (e < best_e) {
      best = c;
      best_e = e;
    }
  }
  return best;
}

struct AnnealRun {
  Rational energy;
  Config config;
  std::uint64_t visited = 0;
};

inline AnnealRun anneal_once(const Model& model, const Config& start, const AnnealSchedule& sch, std::uint64_t stream)
{
  std::mt19937_64 rng(stream);
  const double cf = to_double(model.c_f()), cs = to_double(model.c_s());
  std::vector<SiteCoord> atoms(start.begin(), start.end());
  std::unordered_map<std::uint64_t, std::size_t> where;
  auto rebuild = [&] {
    where.clear();
    for (std::size_t i = 0; i < atoms.size(); ++i) where[site_key(atoms[i])] = i;
  };
  rebuild();
  auto occupied = [&](SiteCoord s) { return where.count(site_key(s)) > 0; };
  auto neighbors = [&](SiteCoord s) {
    int k = 0;
    for (const auto& off : kNeighborOffsets)
      if (occupied(s + off)) ++k;
    return k;
  };
  const Config c0(atoms);
  int b = count_film_bonds(c0), s = count_substrate_bonds(model, c0);
  auto value = [&](int bb, int ss) { return -2.0 * cf * bb - cs * ss; };

  AnnealRun best{energy_from_counts(model.lambda(), b, s), c0, 0};
  double best_v = value(b, s);
  const auto& offs = relocation_offsets();
  const std::size_t n = atoms.size();
  double temp = sch.initial_temperature * cf;

  auto sync_best = [&] {
    const double v = value(b, s);
    if (v < best_v - 1e-9) {
      best_v = v;
      best.config = Config(atoms);
      best.energy = energy_from_counts(model.lambda(), b, s);
    }
  };

  for (std::uint64_t step = 1; step <= sch.steps && n > 1; ++step) {
    ++best.visited;
    const std::size_t i = uniform_below(rng, n);
    const std::size_t j = uniform_below(rng, n);
    const SiteCoord from = atoms[i];
    const SiteCoord to = atoms[j] + offs[uniform_below(rng, offs.size())];
    if (to.k2 >= 0 && !occupied(to)) {
      const int nb_from = neighbors(from);
      int nb_to = neighbors(to);
      if (are_film_neighbors(from, to)) --nb_to;
      const int db = nb_to - nb_from;
      const int ds = model.substrate_count(to) - model.substrate_count(from);
      const double de = -2.0 * cf * db - cs * ds;
      if (de <= 0.0 || uniform01(rng) < std::exp(-de / temp)) {
        where.erase(site_key(from));
        atoms[i] = to;
        where[site_key(to)] = i;
        b += db;
        s += ds;
        sync_best();
      }
    }
    if (step % sch.moves_per_temperature == 0) {
      temp *= sch.cooling;
      const Config t = transform(Config(atoms), model);
      atoms.assign(t.begin(), t.end());
      rebuild();
      b = count_film_bonds(t);
      s = count_substrate_bonds(model, t);
      sync_best();
    }
  }
  return best;
}

}  // namespace detail

inline SearchResult anneal(const Model& model, int n, const AnnealSchedule& sch = {})
{
  if (n < 1) throw Error(ErrorKind::InvalidParameter, "n must be positive");
  if (!(sch.cooling > 0.0 && sch.cooling < 1.0)) throw Error(ErrorKind::InvalidParameter, "cooling must lie in (0,1)");
  if (sch.moves_per_temperature == 0 || sch.restarts < 1) throw Error(ErrorKind::InvalidParameter, "bad schedule");

  const Config wet = wetting_config(model, n);
  const Config seed_cfg = detail::winterbottom_seed(model, n);
  const Config start = energy(model, seed_cfg) < energy(model, wet) ? seed_cfg : wet;

  std::vector<detail::AnnealRun> runs(static_cast<std::size_t>(sch.restarts));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int r = next++; r < sch.restarts; r = next++)
      runs[static_cast<std::size_t>(r)] = detail::anneal_once(model, start, sch, sch.seed + static_cast<std::uint64_t>(r));
  };
  const int jobs = std::max(1, std::min(sch.jobs, sch.restarts));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  SearchResult res;
  res.method = Method::Anneal;
  res.seed = sch.seed;
  bool have = false;
  for (auto& run : runs) {
    res.visited += run.visited;
    Config c = normalize_anchor(transform(run.config, model), model.period());
    const Rational e = energy(model, c);
    if (!have || e < res.energy || (e == res.energy && c < res.argmin)) {
      res.energy = e;
      res.argmin = std::move(c);
      have = true;
    }
  }
  return res;
}

inline SearchResult minimize(const Model& model, int n, Method method, const AnnealSchedule& sch = {},
                             const ExactOptions& opt = {})
{
  switch (method) {
    case Method::Exact: return exact_minimize(model, n, opt);
    case Method::Anneal: return anneal(model, n, sch);
    case Method::Naive: {
      const int rows = std::min(n - 1, 2) + 1;
      const int width = std::min(40 / rows, 2 * n + model.period());
      return naive_window_minimize(model, n, make_window(-width / 2, width - width / 2 - 1, 0, rows - 1));
    }
  }
  return {};
}

}  // namespace winterlat

#endif  // WINTERLAT_MINIMIZER_HPP
