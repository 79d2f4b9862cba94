#ifndef WINTERLAT_CONTINUUM_HPP
#define WINTERLAT_CONTINUUM_HPP

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "winterlat/error.hpp"
#include "winterlat/lattice.hpp"

namespace winterlat {

inline constexpr double kPi = std::numbers::pi;
/// Atom density of the unit triangular lattice.
inline constexpr double kRho = 2.0 / kSqrt3;

/// Counter-clockwise vertex list, implicitly closed.
struct Polygon {
  std::vector<Point> vertices;

  std::size_t size() const { return vertices.size(); }
  bool empty() const { return vertices.size() < 3; }
};

inline double signed_area(const Polygon& p)
{
  double a = 0.0;
  const std::size_t n = p.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& u = p.vertices[i];
    const Point& v = p.vertices[(i + 1) % n];
    a += u.x * v.y - v.x * u.y;
  }
  return 0.5 * a;
}

inline double area(const Polygon& p) { return std::abs(signed_area(p)); }

inline double perimeter(const Polygon& p)
{
  double l = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Point& u = p.vertices[i];
    const Point& v = p.vertices[(i + 1) % p.size()];
    l += std::hypot(v.x - u.x, v.y - u.y);
  }
  return l;
}

inline double diameter(const Polygon& p)
{
  double d = 0.0;
  for (const auto& u : p.vertices)
    for (const auto& v : p.vertices) d = std::max(d, std::hypot(u.x - v.x, u.y - v.y));
  return d;
}

inline Polygon translated(Polygon p, double dx, double dy)
{
  for (auto& v : p.vertices) {
    v.x += dx;
    v.y += dy;
  }
  return p;
}

inline Polygon scaled(Polygon p, double s, Point about = {0.0, 0.0})
{
  for (auto& v : p.vertices) {
    v.x = about.x + s * (v.x - about.x);
    v.y = about.y + s * (v.y - about.y);
  }
  return p;
}

/// Keeps the part of a convex polygon with n.x * x + n.y * y <= c.
inline Polygon clip_halfplane(const Polygon& p, Point n, double c)
{
  Polygon out;
  const std::size_t m = p.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Point& a = p.vertices[i];
    const Point& b = p.vertices[(i + 1) % m];
    const double fa = n.x * a.x + n.y * a.y - c;
    const double fb = n.x * b.x + n.y * b.y - c;
    if (fa <= 0) out.vertices.push_back(a);
    if ((fa < 0 && fb > 0) || (fa > 0 && fb < 0)) {
      const double t = fa / (fa - fb);
      out.vertices.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
    }
  }
  return out;
}

/// Merges vertices closer than tol and drops vertices on a straight edge.
inline Polygon prune(const Polygon& p, double tol)
{
  std::vector<Point> v;
  for (const auto& x : p.vertices)
    if (v.empty() || std::hypot(x.x - v.back().x, x.y - v.back().y) > tol) v.push_back(x);
  while (v.size() > 1 && std::hypot(v.front().x - v.back().x, v.front().y - v.back().y) <= tol) v.pop_back();
  bool changed = true;
  while (changed && v.size() > 3) {
    changed = false;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const Point& a = v[(i + v.size() - 1) % v.size()];
      const Point& b = v[i];
      const Point& c = v[(i + 1) % v.size()];
      const double cross = (b.x - a.x) * (c.y - b.y) - (b.y - a.y) * (c.x - b.x);
      const double len = std::hypot(c.x - a.x, c.y - a.y);
      if (std::abs(cross) <= tol * len) {
        v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  return Polygon{std::move(v)};
}

/// Surface tension for the normal nu(phi) = (-sin phi, cos phi); pi/3-periodic.
inline double gamma(double c_f, double phi)
{
  double r = std::fmod(phi, kPi / 3.0);
  if (r < 0) r += kPi / 3.0;
  return 2.0 * c_f * (std::cos(r) + std::sin(r) / kSqrt3);
}

/// Surface tension for an outward normal given as a vector.
inline double gamma_normal(double c_f, Point normal)
{
  const double theta = std::atan2(normal.y, normal.x);
  return gamma(c_f, theta - kPi / 2.0);
}

/// Support function of a convex polygon in direction (cos theta, sin theta).
inline double support(const Polygon& p, double theta)
{
  double h = -1e300;
  for (const auto& v : p.vertices) h = std::max(h, v.x * std::cos(theta) + v.y * std::sin(theta));
  return h;
}

inline Polygon wulff_polygon(double c_f, int normals = 720)
{
  const double big = 10.0 * c_f;
  Polygon p{{{-big, -big}, {big, -big}, {big, big}, {-big, big}}};
  for (int k = 0; k < normals; ++k) {
    const double theta = 2.0 * kPi * k / normals;
    p = clip_halfplane(p, {std::cos(theta), std::sin(theta)}, gamma(c_f, theta - kPi / 2.0));
  }
  p = prune(p, 1e-9 * c_f);
  // start at the vertex on the positive x-axis
  const auto it = std::max_element(p.vertices.begin(), p.vertices.end(),
                                   [](const Point& a, const Point& b) { return a.x < b.x; });
  std::rotate(p.vertices.begin(), it, p.vertices.end());
  return p;
}

/// Wulff hexagon cut at x2 = -sigma, moved onto the wall and dilated to target_area.
inline Polygon winterbottom_polygon(double c_f, double sigma, double target_area = 1.0 / kRho)
{
  if (sigma <= -2.0 * c_f) throw Error(ErrorKind::EmptyShape, "sigma <= -2 c_F leaves nothing above the cut");
  Polygon p = wulff_polygon(c_f);
  p = prune(clip_halfplane(p, {0.0, -1.0}, sigma), 1e-12 * c_f);
  double ymin = 1e300;
  for (const auto& v : p.vertices) ymin = std::min(ymin, v.y);
  p = translated(p, 0.0, -ymin);
  p = scaled(p, std::sqrt(target_area / area(p)));
  for (auto& v : p.vertices)
    if (std::abs(v.y) < 1e-14) v.y = 0.0;
  return p;
}

/// Anisotropic perimeter plus sigma times the length in contact with the wall x2 = 0.
inline double surface_energy(const Polygon& p, double c_f, double sigma, double wall_tol = 1e-12)
{
  for (const auto& v : p.vertices)
    if (v.y < -wall_tol) throw Error(ErrorKind::BelowWall, "polygon vertex below the wall");
  double e = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Point& a = p.vertices[i];
    const Point& b = p.vertices[(i + 1) % p.size()];
    const double dx = b.x - a.x, dy = b.y - a.y;
    const double len = std::hypot(dx, dy);
    if (len == 0.0) continue;
    if (std::abs(a.y) <= wall_tol && std::abs(b.y) <= wall_tol) e += sigma * len;
    else e += len * gamma_normal(c_f, {dy / len, -dx / len});
  }
  return e;
}

inline bool is_simple(const Polygon& p)
{
  const std::size_t n = p.size();
  auto orient = [](Point a, Point b, Point c) { return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x); };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (j == i + 1 || (i == 0 && j == n - 1)) continue;
      const Point a = p.vertices[i], b = p.vertices[(i + 1) % n];
      const Point c = p.vertices[j], d = p.vertices[(j + 1) % n];
      const double o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
      if (((o1 > 0) != (o2 > 0)) && ((o3 > 0) != (o4 > 0))) return false;
    }
  return true;
}

/// Seeded area-matched perturbations of a polygon resting on the wall. Edges are first split into
/// 1 to 3 pieces so facets can bend; wall vertices stay on the wall; every fourth result is lifted off it.
inline std::vector<Polygon> perturbation_battery(const Polygon& base, int count, std::uint64_t seed, double amplitude = 0.05)
{
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double a0 = area(base);
  const double scale = std::sqrt(a0);
  std::vector<Polygon> out;
  for (std::uint64_t attempt = 0; static_cast<int>(out.size()) < count; ++attempt) {
    const int parts = 1 + static_cast<int>(attempt % 3);
    Polygon q;
    for (std::size_t i = 0; i < base.size(); ++i) {
      const Point a = base.vertices[i], b = base.vertices[(i + 1) % base.size()];
      for (int j = 0; j < parts; ++j) {
        const double t = static_cast<double>(j) / parts;
        q.vertices.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
      }
    }
    for (auto& v : q.vertices) {
      v.x += amplitude * scale * u(rng);
      if (v.y > 1e-12) v.y = std::max(0.0, v.y + amplitude * scale * u(rng));
    }
    if (signed_area(q) <= 0 || !is_simple(q)) continue;
    double cx = 0.0;
    for (const auto& v : q.vertices) cx += v.x;
    cx /= static_cast<double>(q.size());
    q = scaled(q, std::sqrt(a0 / area(q)), {cx, 0.0});
    if (out.size() % 4 == 3) q = translated(q, 0.0, amplitude * scale * (1.0 + u(rng)));
    out.push_back(std::move(q));
  }
  return out;
}

}  // namespace winterlat

#endif  // WINTERLAT_CONTINUUM_HPP
