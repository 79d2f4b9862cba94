#ifndef WINTERLAT_LATTICE_HPP
#define WINTERLAT_LATTICE_HPP

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "winterlat/error.hpp"
#include "winterlat/rational.hpp"

namespace winterlat {

inline constexpr double kSqrt3 = 1.7320508075688772935;

/// Film-lattice site x_F + k1 t1 + k2 t2 with t1 = (1,0), t2 = (1/2, sqrt(3)/2).
/// Ordered by (k2, k1), which is the canonical configuration order.
struct SiteCoord {
  int k1 = 0;
  int k2 = 0;

  friend bool operator==(const SiteCoord&, const SiteCoord&) = default;
  friend std::strong_ordering operator<=>(const SiteCoord& a, const SiteCoord& b)
  {
    if (auto c = a.k2 <=> b.k2; c != 0) return c;
    return a.k1 <=> b.k1;
  }
};

inline SiteCoord operator+(SiteCoord a, SiteCoord b) { return {a.k1 + b.k1, a.k2 + b.k2}; }
inline SiteCoord operator-(SiteCoord a, SiteCoord b) { return {a.k1 - b.k1, a.k2 - b.k2}; }

/// The six triangular-lattice directions in (k1, k2) index space.
inline constexpr SiteCoord kNeighborOffsets[6] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, -1}, {-1, 1}};

/// Film neighbours of a site that lie in the upper half-lattice (k2 >= 0).
inline std::vector<SiteCoord> film_neighbor_offsets(SiteCoord site)
{
  std::vector<SiteCoord> out;
  out.reserve(6);
  for (const auto& off : kNeighborOffsets) {
    const SiteCoord nb = site + off;
    if (nb.k2 >= 0) out.push_back(nb);
  }
  return out;
}

inline bool are_film_neighbors(SiteCoord a, SiteCoord b)
{
  const SiteCoord d = b - a;
  for (const auto& off : kNeighborOffsets)
    if (d == off) return true;
  return false;
}

/// Wall vector z = (p, q, r): substrate surface atoms at (m/p, 0) for m in qZ or qZ + r.
struct WallVector {
  int p = 1;
  int q = 1;
  int r = 0;

  friend bool operator==(const WallVector&, const WallVector&) = default;

  Rational e_s() const { return Rational(q, p); }

  bool contains(std::int64_t m) const
  {
    const auto res = mod(m, q);
    return res == 0 || (r != 0 && res == r);
  }

  void validate() const
  {
    if (p < 1 || q < 1) throw Error(ErrorKind::InvalidWall, "p and q must be positive");
    if (std::gcd(p, q) != 1) throw Error(ErrorKind::InvalidWall, "p and q must be coprime");
    if (r < 0 || 2 * r > q) throw Error(ErrorKind::InvalidWall, "r must satisfy 0 <= r <= q/2");
    if (r != 0 && p != 1) throw Error(ErrorKind::InvalidWall, "r != 0 requires p = 1");
  }
};

struct InteractionVector {
  Rational c_f{1};
  Rational c_s{1};

  friend bool operator==(const InteractionVector&, const InteractionVector&) = default;
};

/// Horizontal placement of the film lattice. x1 and d are exact; h only enters
/// display positions and the second-row clearance check.
struct LatticeGeometry {
  Rational x1{0};
  Rational d{0};
  double h = 1.0;

  double e_fs() const
  {
    const double dd = to_double(d);
    return std::sqrt(dd * dd + h * h);
  }
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};

class Model;
Model make_model(WallVector wall, Rational x1, Rational d, double h, Rational c_f, Rational c_s);

class Model {
 public:
  const WallVector& wall() const { return wall_; }
  const LatticeGeometry& geometry() const { return geom_; }
  const InteractionVector& lambda() const { return lambda_; }
  Rational c_f() const { return lambda_.c_f; }
  Rational c_s() const { return lambda_.c_s; }
  int period() const { return wall_.q; }

  /// Substrate-neighbour count of a site (0, 1 or 2).
  int substrate_count(SiteCoord site) const
  {
    if (site.k2 != 0) return 0;
    return pattern_[static_cast<std::size_t>(mod(site.k1, wall_.q))];
  }

  bool is_bonded(SiteCoord site) const { return substrate_count(site) > 0; }

  /// Counts indexed by k1 mod q.
  const std::vector<int>& pattern() const { return pattern_; }

  Point position(SiteCoord s) const
  {
    return {to_double(geom_.x1) + s.k1 + 0.5 * s.k2, geom_.h + 0.5 * kSqrt3 * s.k2};
  }

  /// Same geometry with a different interaction vector.
  Model with_lambda(InteractionVector lambda) const
  {
    if (lambda.c_f <= 0 || lambda.c_s <= 0) throw Error(ErrorKind::InvalidParameter, "c_F and c_S must be positive");
    Model m = *this;
    m.lambda_ = lambda;
    return m;
  }

  Model with_c_s(Rational c_s) const { return with_lambda({lambda_.c_f, c_s}); }

  friend bool operator==(const Model& a, const Model& b)
  {
    return a.wall_ == b.wall_ && a.geom_.x1 == b.geom_.x1 && a.geom_.d == b.geom_.d && a.geom_.h == b.geom_.h &&
           a.lambda_ == b.lambda_;
  }

 private:
  friend Model make_model(WallVector, Rational, Rational, double, Rational, Rational);
  friend Model shifted_model(const Model&, int);

  WallVector wall_;
  LatticeGeometry geom_;
  InteractionVector lambda_;
  std::vector<int> pattern_;
};

namespace detail {

/// Substrate indices m with |t - m/p| <= window/p around t, scanned across one period on each side.
template <typename F>
void for_each_substrate_near(const WallVector& wall, const Rational& t, F&& f)
{
  const Rational pt = t * wall.p;
  const std::int64_t lo = floor(pt) - wall.q - 1;
  const std::int64_t hi = ceil(pt) + wall.q + 1;
  for (std::int64_t m = lo; m <= hi; ++m)
    if (wall.contains(m)) f(m);
}

}  // namespace detail

/// Builds and validates a model; the bonded-site pattern is cached over one period q.
inline Model make_model(WallVector wall, Rational x1, Rational d, double h, Rational c_f, Rational c_s)
{
  wall.validate();
  if (d < 0) throw Error(ErrorKind::InvalidParameter, "d must be non-negative");
  if (!(h > 0.0) || !std::isfinite(h)) throw Error(ErrorKind::InvalidParameter, "h must be positive");
  if (c_f <= 0 || c_s <= 0) throw Error(ErrorKind::InvalidParameter, "c_F and c_S must be positive");

  Model m;
  m.wall_ = wall;
  m.geom_ = {x1, d, h};
  m.lambda_ = {c_f, c_s};
  m.pattern_.assign(static_cast<std::size_t>(wall.q), 0);

  std::optional<Rational> min_bottom;
  std::optional<Rational> min_second;
  for (int k = 0; k < wall.q; ++k) {
    const Rational t = x1 + k;
    const Rational t2 = t + Rational(1, 2);
    detail::for_each_substrate_near(wall, t, [&](std::int64_t s) {
      const Rational off = abs(t - Rational(s, wall.p));
      if (!min_bottom || off < *min_bottom) min_bottom = off;
      if (off == d) ++m.pattern_[static_cast<std::size_t>(k)];
    });
    detail::for_each_substrate_near(wall, t2, [&](std::int64_t s) {
      const Rational off = abs(t2 - Rational(s, wall.p));
      if (!min_second || off < *min_second) min_second = off;
    });
  }
  if (*min_bottom < d)
    throw Error(ErrorKind::TooClose, "a bottom-row film site is horizontally closer than d to a substrate atom");
  if (std::all_of(m.pattern_.begin(), m.pattern_.end(), [](int c) { return c == 0; }))
    throw Error(ErrorKind::NoBonds, "no film site attains the film-substrate bond length");

  // second row: squared distance must stay strictly above e_FS^2 = d^2 + h^2
  const double dx = to_double(*min_second);
  const double dy = h + 0.5 * kSqrt3;
  const double dd = to_double(d);
  if (dx * dx + dy * dy <= dd * dd + h * h + 1e-12)
    throw Error(ErrorKind::TooClose, "second-row film sites would reach the substrate bond length");
  return m;
}

/// Relabels the film lattice so that old site k1 becomes k1 - shift.
inline Model shifted_model(const Model& model, int shift)
{
  Model m = model;
  m.geom_.x1 = model.geom_.x1 + shift;
  const int q = model.wall_.q;
  for (int k = 0; k < q; ++k)
    m.pattern_[static_cast<std::size_t>(k)] = model.pattern_[static_cast<std::size_t>(mod(k + shift, q))];
  return m;
}

/// Shift in [0, q) that recenter() applies: the smallest one putting a bonded site at k1 = 0
/// and, for two bonded residues {0, s}, choosing the orientation with s <= q/2.
inline int recenter_shift(const Model& model)
{
  const int q = model.period();
  const auto& pat = model.pattern();
  int fallback = -1;
  for (int shift = 0; shift < q; ++shift) {
    if (pat[static_cast<std::size_t>(shift)] == 0) continue;
    if (fallback < 0) fallback = shift;
    std::vector<int> residues;
    for (int k = 0; k < q; ++k)
      if (pat[static_cast<std::size_t>(mod(k + shift, q))] > 0) residues.push_back(k);
    if (residues.size() != 2 || 2 * residues[1] <= q) return shift;
  }
  return fallback;
}

inline Model recenter(const Model& model)
{
  const int shift = recenter_shift(model);
  return shift == 0 ? model : shifted_model(model, shift);
}

inline bool is_centered(const Model& model) { return recenter_shift(model) == 0; }

/// x-coordinates (m/p) of the substrate atoms at distance e_FS from the site.
inline std::vector<Rational> substrate_neighbors(const Model& model, SiteCoord site)
{
  std::vector<Rational> out;
  if (site.k2 != 0) return out;
  const auto& wall = model.wall();
  const Rational t = model.geometry().x1 + site.k1;
  detail::for_each_substrate_near(wall, t, [&](std::int64_t m) {
    const Rational x = Rational(m, wall.p);
    if (abs(t - x) == model.geometry().d) out.push_back(x);
  });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct BondedPattern {
  int period = 1;
  /// (k1 mod period, substrate-neighbour count) for bonded residues only.
  std::vector<std::pair<int, int>> sites;
};

inline BondedPattern bonded_pattern(const Model& model)
{
  BondedPattern bp;
  bp.period = model.period();
  for (int k = 0; k < bp.period; ++k)
    if (int c = model.pattern()[static_cast<std::size_t>(k)]; c > 0) bp.sites.emplace_back(k, c);
  return bp;
}

/// Canonical reference models M0(p,q) and M1(q,r) with x_F = (0, e_FS).
inline Model make_m0(int p, int q, Rational c_f, Rational c_s, double h = 1.0)
{
  return make_model({p, q, 0}, 0, 0, h, c_f, c_s);
}

inline Model make_m1(int q, int r, Rational c_f, Rational c_s, double h = 1.0)
{
  return make_model({1, q, r}, 0, 0, h, c_f, c_s);
}

// ---------------------------------------------------------------------------
// Model text format: one "key = value" per line, '#' comments.

inline std::string to_text(const Model& m)
{
  std::ostringstream os;
  os.precision(17);
  os << "p = " << m.wall().p << "\n"
     << "q = " << m.wall().q << "\n"
     << "r = " << m.wall().r << "\n"
     << "x1 = " << to_string(m.geometry().x1) << "\n"
     << "d = " << to_string(m.geometry().d) << "\n"
     << "h = " << m.geometry().h << "\n"
     << "c_F = " << to_string(m.c_f()) << "\n"
     << "c_S = " << to_string(m.c_s()) << "\n";
  return os.str();
}

struct KeyValue {
  std::string key;
  std::string value;
  int line = 0;
};

inline std::vector<KeyValue> parse_key_values(const std::string& text)
{
  std::vector<KeyValue> out;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string();
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  };
  while (std::getline(is, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorKind::Parse, "line " + std::to_string(lineno) + ": expected 'key = value'");
    KeyValue kv{trim(line.substr(0, eq)), trim(line.substr(eq + 1)), lineno};
    if (kv.key.empty() || kv.value.empty())
      throw Error(ErrorKind::Parse, "line " + std::to_string(lineno) + ": empty key or value");
    for (const auto& prev : out)
      if (prev.key == kv.key)
        throw Error(ErrorKind::Parse, "line " + std::to_string(lineno) + ": duplicate key '" + kv.key + "'");
    out.push_back(std::move(kv));
  }
  return out;
}

inline bool is_model_key(const std::string& k)
{
  return k == "p" || k == "q" || k == "r" || k == "x1" || k == "d" || k == "h" || k == "c_F" || k == "c_S";
}

/// Builds a model from parsed key/values; non-model keys are ignored here (callers decide).
inline Model model_from_key_values(const std::vector<KeyValue>& kvs)
{
  WallVector wall{1, 1, 0};
  Rational x1{0}, d{0}, c_f{1}, c_s{1};
  double h = 1.0;
  bool have_q = false;
  for (const auto& kv : kvs) {
    if (!is_model_key(kv.key)) continue;
    try {
      if (kv.key == "p") wall.p = static_cast<int>(detail::parse_int(kv.value, kv.value));
      else if (kv.key == "q") {
        wall.q = static_cast<int>(detail::parse_int(kv.value, kv.value));
        have_q = true;
      }
      else if (kv.key == "r") wall.r = static_cast<int>(detail::parse_int(kv.value, kv.value));
      else if (kv.key == "x1") x1 = parse_rational(kv.value);
      else if (kv.key == "d") d = parse_rational(kv.value);
      else if (kv.key == "h") {
        std::size_t used = 0;
        h = std::stod(kv.value, &used);
        if (used != kv.value.size()) throw Error(ErrorKind::Parse, "bad real '" + kv.value + "'");
      }
      else if (kv.key == "c_F") c_f = parse_rational(kv.value);
      else if (kv.key == "c_S") c_s = parse_rational(kv.value);
    } catch (const Error& e) {
      throw Error(ErrorKind::Parse, "line " + std::to_string(kv.line) + ": " + e.what());
    } catch (const std::exception&) {
      throw Error(ErrorKind::Parse, "line " + std::to_string(kv.line) + ": bad value '" + kv.value + "'");
    }
  }
  if (!have_q) throw Error(ErrorKind::Parse, "missing key 'q'");
  return make_model(wall, x1, d, h, c_f, c_s);
}

/// Parses a model file; unknown keys are rejected.
inline Model parse_model(const std::string& text)
{
  const auto kvs = parse_key_values(text);
  for (const auto& kv : kvs)
    if (!is_model_key(kv.key))
      throw Error(ErrorKind::Parse, "line " + std::to_string(kv.line) + ": unknown key '" + kv.key + "'");
  return model_from_key_values(kvs);
}

}  // namespace winterlat

#endif  // WINTERLAT_LATTICE_HPP
