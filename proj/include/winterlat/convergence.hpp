#ifndef WINTERLAT_CONVERGENCE_HPP
#define WINTERLAT_CONVERGENCE_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <sstream>
#include <string>
#include <thread>
#include <unordered_set>
#include <vector>

#include "winterlat/classifier.hpp"
#include "winterlat/configuration.hpp"
#include "winterlat/continuum.hpp"
#include "winterlat/energy.hpp"
#include "winterlat/minimizer.hpp"

namespace winterlat {

inline double rescaled_excess(const Model& model, const Config& c)
{
  const double n = static_cast<double>(c.size());
  return to_double(energy(model, c) + 6 * model.c_f() * static_cast<std::int64_t>(c.size())) / std::sqrt(n);
}

inline double mass_ratio(const Config& c)
{
  if (c.empty()) return 0.0;
  std::size_t best = 0;
  for (const auto& g : connected_components(c)) best = std::max(best, g.size());
  return static_cast<double>(best) / static_cast<double>(c.size());
}

/// Union of Voronoi hexagons (area sqrt(3)/2 each) around the atoms, rescaled by 1/sqrt(n).
/// Atom centres sit at (k1 + k2/2, sqrt(3)/4 + k2 sqrt(3)/2): the zigzag lower edge of row 0 then
/// dips below the wall exactly as much as it rises above it.
class Footprint {
 public:
  Footprint(const Config& c, int n) : config_(c), n_(n), scale_(1.0 / std::sqrt(static_cast<double>(n)))
  {
    for (const auto& s : c) occ_.insert(detail::site_key(s));
  }

  double scale() const { return scale_; }
  int n() const { return n_; }
  const Config& config() const { return config_; }

  /// Exact area of the union (cells never overlap).
  double area() const { return static_cast<double>(config_.size()) * 0.5 * kSqrt3 * scale_ * scale_; }

  static Point center(SiteCoord s) { return {s.k1 + 0.5 * s.k2, 0.25 * kSqrt3 + 0.5 * kSqrt3 * s.k2}; }

  /// The hexagonal cell of one site (pointy top), in rescaled coordinates.
  Polygon cell(SiteCoord s) const
  {
    const Point c = center(s);
    Polygon p;
    const double r = 1.0 / kSqrt3;
    for (int k = 0; k < 6; ++k) {
      const double a = kPi / 6.0 + k * kPi / 3.0;
      p.vertices.push_back({(c.x + r * std::cos(a)) * scale_, (c.y + r * std::sin(a)) * scale_});
    }
    return p;
  }

  bool contains(double x, double y) const
  {
    const double X = x / scale_, Y = y / scale_;
    const double k2f = (Y - 0.25 * kSqrt3) / (0.5 * kSqrt3);
    const double k1f = X - 0.5 * k2f;
    const int a = static_cast<int>(std::floor(k1f)), b = static_cast<int>(std::floor(k2f));
    double best = 1e300;
    SiteCoord arg{0, 0};
    for (int da = 0; da <= 1; ++da)
      for (int db = 0; db <= 1; ++db) {
        const SiteCoord s{a + da, b + db};
        const Point c = center(s);
        const double d = (c.x - X) * (c.x - X) + (c.y - Y) * (c.y - Y);
        if (d < best) {
          best = d;
          arg = s;
        }
      }
    return arg.k2 >= 0 && occ_.count(detail::site_key(arg)) > 0;
  }

  /// Length of the outer boundary of the union.
  double boundary_length() const
  {
    int free_sides = 0;
    for (const auto& s : config_)
      for (const auto& off : kNeighborOffsets)
        if (!occ_.count(detail::site_key(s + off))) ++free_sides;
    return free_sides * scale_ / kSqrt3;
  }

  void bounds(double& xmin, double& xmax, double& ymin, double& ymax) const
  {
    xmin = ymin = 1e300;
    xmax = ymax = -1e300;
    for (const auto& s : config_) {
      const Point c = center(s);
      xmin = std::min(xmin, c.x - 0.5);
      xmax = std::max(xmax, c.x + 0.5);
      ymin = std::min(ymin, c.y - 1.0 / kSqrt3);
      ymax = std::max(ymax, c.y + 1.0 / kSqrt3);
    }
    xmin *= scale_;
    xmax *= scale_;
    ymin *= scale_;
    ymax *= scale_;
  }

 private:
  Config config_;
  int n_;
  double scale_;
  std::unordered_set<std::uint64_t> occ_;
};

inline Footprint footprint(const Config& c, int n) { return Footprint(c, n); }
inline Footprint footprint(const Config& c) { return Footprint(c, static_cast<int>(c.size())); }

struct ShapeDistance {
  double distance = 0.0;
  double translation = 0.0;
  double grid_step = 0.0;
  double error_bound = 0.0;
};

namespace detail {

/// x-interval of a convex polygon on the horizontal line y; empty if lo > hi.
inline void row_interval(const Polygon& w, double y, double& lo, double& hi)
{
  lo = 1e300;
  hi = -1e300;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const Point a = w.vertices[i], b = w.vertices[(i + 1) % w.size()];
    if ((a.y <= y && b.y >= y) || (a.y >= y && b.y <= y)) {
      if (a.y == b.y) {
        lo = std::min({lo, a.x, b.x});
        hi = std::max({hi, a.x, b.x});
      } else {
        const double x = a.x + (y - a.y) / (b.y - a.y) * (b.x - a.x);
        lo = std::min(lo, x);
        hi = std::max(hi, x);
      }
    }
  }
}

/// Rasterized region with per-row prefix sums; overlap with a translated convex polygon is
/// piecewise linear in the translation.
class Raster {
 public:
  template <typename Contains>
  Raster(double xmin, double xmax, double ymin, double ymax, double h, Contains&& inside) : x0_(xmin), y0_(ymin), h_(h)
  {
    nx_ = static_cast<int>(std::ceil((xmax - xmin) / h)) + 1;
    ny_ = static_cast<int>(std::ceil((ymax - ymin) / h)) + 1;
    prefix_.assign(static_cast<std::size_t>(ny_) * (nx_ + 1), 0);
    for (int j = 0; j < ny_; ++j) {
      const double y = y0_ + (j + 0.5) * h;
      auto* row = &prefix_[static_cast<std::size_t>(j) * (nx_ + 1)];
      for (int i = 0; i < nx_; ++i) row[i + 1] = row[i] + (inside(x0_ + (i + 0.5) * h, y) ? 1 : 0);
    }
  }

  /// Occupied length of row j within [a, b].
  double covered(int j, double a, double b) const
  {
    const auto* row = &prefix_[static_cast<std::size_t>(j) * (nx_ + 1)];
    auto cum = [&](double x) {
      const double u = (x - x0_) / h_;
      if (u <= 0) return 0.0;
      if (u >= nx_) return static_cast<double>(row[nx_]);
      const int i = static_cast<int>(std::floor(u));
      return row[i] + (u - i) * (row[i + 1] - row[i]);
    };
    return h_ * (cum(b) - cum(a));
  }

  double overlap(const Polygon& w, double t) const
  {
    double total = 0.0;
    for (int j = 0; j < ny_; ++j) {
      double lo, hi;
      row_interval(w, y0_ + (j + 0.5) * h_, lo, hi);
      if (lo <= hi) total += h_ * covered(j, lo + t, hi + t);
    }
    return total;
  }

  double area() const
  {
    double a = 0.0;
    for (int j = 0; j < ny_; ++j) a += prefix_[static_cast<std::size_t>(j) * (nx_ + 1) + nx_];
    return a * h_ * h_;
  }

 private:
  double x0_, y0_, h_;
  int nx_ = 0, ny_ = 0;
  std::vector<int> prefix_;
};

inline ShapeDistance best_translation(const Raster& r, double region_area, const Polygon& w, double t_lo, double t_hi,
                                      double h)
{
  const double aw = area(w);
  auto dist = [&](double t) { return region_area + aw - 2.0 * r.overlap(w, t); };
  double best_t = t_lo, best = dist(t_lo);
  const int steps = std::max(1, static_cast<int>(std::ceil((t_hi - t_lo) / h)));
  for (int k = 1; k <= steps; ++k) {
    const double t = t_lo + (t_hi - t_lo) * k / steps;
    const double d = dist(t);
    if (d < best) {
      best = d;
      best_t = t;
    }
  }
  // golden-section refinement within one coarse step on either side
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = best_t - h, b = best_t + h;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = dist(c), fd = dist(d);
  for (int it = 0; it < 40; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = dist(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = dist(d);
    }
  }
  const double tm = 0.5 * (a + b), fm = dist(tm);
  if (fm < best) {
    best = fm;
    best_t = tm;
  }
  return {std::max(0.0, best), best_t, h, 0.0};
}

}  // namespace detail

/// min over horizontal t of area(f symmetric-difference (w + t e1)), by rasterization at step 0.005 diam(w).
inline ShapeDistance shape_distance(const Footprint& f, const Polygon& w)
{
  const double h = 0.005 * diameter(w);
  double fx0, fx1, fy0, fy1;
  f.bounds(fx0, fx1, fy0, fy1);
  double wx0 = 1e300, wx1 = -1e300, wy0 = 1e300, wy1 = -1e300;
  for (const auto& v : w.vertices) {
    wx0 = std::min(wx0, v.x);
    wx1 = std::max(wx1, v.x);
    wy0 = std::min(wy0, v.y);
    wy1 = std::max(wy1, v.y);
  }
  const detail::Raster r(fx0, fx1, std::min(fy0, wy0), std::max(fy1, wy1), h,
                         [&](double x, double y) { return f.contains(x, y); });
  ShapeDistance sd = detail::best_translation(r, f.area(), w, fx0 - wx1, fx1 - wx0, h);
  sd.error_bound = h * (perimeter(w) + f.boundary_length());
  return sd;
}

/// Polygon-versus-polygon variant (used to check the rasterizer against itself).
inline ShapeDistance shape_distance(const Polygon& a, const Polygon& w)
{
  const double h = 0.005 * diameter(w);
  double ax0 = 1e300, ax1 = -1e300, ay0 = 1e300, ay1 = -1e300;
  for (const auto& v : a.vertices) {
    ax0 = std::min(ax0, v.x);
    ax1 = std::max(ax1, v.x);
    ay0 = std::min(ay0, v.y);
    ay1 = std::max(ay1, v.y);
  }
  double wx0 = 1e300, wx1 = -1e300, wy0 = 1e300, wy1 = -1e300;
  for (const auto& v : w.vertices) {
    wx0 = std::min(wx0, v.x);
    wx1 = std::max(wx1, v.x);
    wy0 = std::min(wy0, v.y);
    wy1 = std::max(wy1, v.y);
  }
  auto inside = [&](double x, double y) {
    double lo, hi;
    detail::row_interval(a, y, lo, hi);
    return lo <= x && x <= hi;
  };
  const detail::Raster r(ax0, ax1, std::min(ay0, wy0), std::max(ay1, wy1), h, inside);
  ShapeDistance sd = detail::best_translation(r, area(a), w, ax0 - wx1, ax1 - wx0, h);
  sd.error_bound = h * (perimeter(w) + perimeter(a));
  return sd;
}

// ---------------------------------------------------------------------------

struct ConvergenceRow {
  int n = 0;
  Rational energy;
  double excess = 0.0;
  double largest_component_mass = 0.0;
  double shape_distance = 0.0;
  std::uint64_t seed = 0;
  Method method = Method::Exact;
  Config config;
};

struct ConvergenceOptions {
  std::vector<std::uint64_t> seeds{1};
  AnnealSchedule schedule;
  int exact_max_n = 10;
  int jobs = 1;
};

inline ConvergenceRow convergence_row(const Model& model, int n, const ConvergenceOptions& opt, const Polygon& w)
{
  ConvergenceRow row;
  row.n = n;
  SearchResult best;
  if (n <= opt.exact_max_n) {
    ExactOptions eo;
    eo.collect_all = false;
    best = exact_minimize(model, n, eo);
    row.seed = 0;
  } else {
    bool have = false;
    for (auto seed : opt.seeds) {
      AnnealSchedule s = opt.schedule;
      s.seed = seed;
      s.jobs = 1;
      SearchResult r = anneal(model, n, s);
      if (!have || r.energy < best.energy || (r.energy == best.energy && r.argmin < best.argmin)) {
        best = std::move(r);
        row.seed = seed;
        have = true;
      }
    }
  }
  row.method = best.method;
  row.energy = best.energy;
  row.config = best.argmin;
  row.excess = rescaled_excess(model, best.argmin);
  row.largest_component_mass = mass_ratio(best.argmin);
  row.shape_distance = shape_distance(footprint(best.argmin, n), w).distance;
  return row;
}

inline std::vector<ConvergenceRow> convergence_run(const Model& model, const std::vector<int>& n_list,
                                                   const ConvergenceOptions& opt = {})
{
  if (in_wetting_regime(model))
    throw Error(ErrorKind::WettingRegime, "c_S = " + to_string(model.c_s()) + " is at or above the wetting threshold " +
                                              to_string(wetting_threshold_reduced(model)));
  const Polygon w = winterbottom_polygon(to_double(model.c_f()), to_double(sigma(model)), 1.0 / kRho);
  std::vector<ConvergenceRow> rows(n_list.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n_list.size(); i = next++) rows[i] = convergence_row(model, n_list[i], opt, w);
  };
  const int jobs = std::max(1, std::min<int>(opt.jobs, static_cast<int>(n_list.size())));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return rows;
}

inline std::string format_double(double v)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

inline std::string convergence_csv(const std::vector<ConvergenceRow>& rows)
{
  std::ostringstream os;
  os << "n,method,seed,energy,energy_decimal,excess,largest_component_mass,shape_distance\n";
  for (const auto& r : rows)
    os << r.n << ',' << to_string(r.method) << ',' << r.seed << ',' << to_string(r.energy) << ','
       << format_double(to_double(r.energy)) << ',' << format_double(r.excess) << ','
       << format_double(r.largest_component_mass) << ',' << format_double(r.shape_distance) << '\n';
  return os.str();
}

}  // namespace winterlat

#endif  // WINTERLAT_CONVERGENCE_HPP
