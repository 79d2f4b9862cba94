#ifndef WINTERLAT_RENDER_HPP
#define WINTERLAT_RENDER_HPP

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <string>

#include "winterlat/configuration.hpp"
#include "winterlat/continuum.hpp"
#include "winterlat/convergence.hpp"
#include "winterlat/lattice.hpp"

namespace winterlat {

namespace detail {

inline std::string num(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

/// Maps model coordinates (y up) to SVG coordinates (y down).
struct SvgFrame {
  double x0 = 0, y0 = 0, x1 = 1, y1 = 1, scale = 40.0, margin = 20.0;

  double width() const { return (x1 - x0) * scale + 2 * margin; }
  double height() const { return (y1 - y0) * scale + 2 * margin; }
  double sx(double x) const { return margin + (x - x0) * scale; }
  double sy(double y) const { return margin + (y1 - y) * scale; }

  std::string header() const
  {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width()) + "\" height=\"" + num(height()) +
           "\" viewBox=\"0 0 " + num(width()) + " " + num(height()) + "\">\n";
  }

  std::string points(const Polygon& p) const
  {
    std::string s;
    for (const auto& v : p.vertices) s += num(sx(v.x)) + "," + num(sy(v.y)) + " ";
    if (!s.empty()) s.pop_back();
    return s;
  }
};

}  // namespace detail

/// Configuration on its wall: filled substrate strip, atoms of radius 0.3, film bonds, dashed substrate bonds.
inline std::string config_svg(const Model& model, const Config& c)
{
  detail::SvgFrame f;
  const double h = model.geometry().h;
  if (c.empty()) {
    f.x0 = -2, f.x1 = 2;
  } else {
    f.x0 = 1e300, f.x1 = -1e300;
    for (const auto& s : c) {
      const Point p = model.position(s);
      f.x0 = std::min(f.x0, p.x);
      f.x1 = std::max(f.x1, p.x);
    }
    f.x0 -= 1.5, f.x1 += 1.5;
  }
  const int top = c.empty() ? 0 : c.sites().back().k2;
  f.y0 = -1.0;
  f.y1 = h + 0.5 * kSqrt3 * top + 1.0;

  std::ostringstream os;
  os << f.header();
  os << "<rect x=\"0\" y=\"" << detail::num(f.sy(0)) << "\" width=\"" << detail::num(f.width()) << "\" height=\""
     << detail::num(f.height() - f.sy(0)) << "\" fill=\"#d8d0c0\"/>\n";

  // substrate atoms on the wall line
  const auto& wall = model.wall();
  const auto m_lo = static_cast<std::int64_t>(std::floor(f.x0 * wall.p)), m_hi = static_cast<std::int64_t>(std::ceil(f.x1 * wall.p));
  for (std::int64_t m = m_lo; m <= m_hi; ++m)
    if (wall.contains(m))
      os << "<circle cx=\"" << detail::num(f.sx(double(m) / wall.p)) << "\" cy=\"" << detail::num(f.sy(0))
         << "\" r=\"" << detail::num(0.15 * f.scale) << "\" fill=\"#7a6a50\"/>\n";

  for (const auto& [a, b] : film_bonds(c)) {
    const Point pa = model.position(a), pb = model.position(b);
    os << "<line x1=\"" << detail::num(f.sx(pa.x)) << "\" y1=\"" << detail::num(f.sy(pa.y)) << "\" x2=\""
       << detail::num(f.sx(pb.x)) << "\" y2=\"" << detail::num(f.sy(pb.y)) << "\" stroke=\"#333\" stroke-width=\"2\"/>\n";
  }
  for (const auto& s : c) {
    const Point p = model.position(s);
    for (const auto& x : substrate_neighbors(model, s))
      os << "<line x1=\"" << detail::num(f.sx(p.x)) << "\" y1=\"" << detail::num(f.sy(p.y)) << "\" x2=\""
         << detail::num(f.sx(to_double(x))) << "\" y2=\"" << detail::num(f.sy(0))
         << "\" stroke=\"#a04020\" stroke-width=\"2\" stroke-dasharray=\"4,3\"/>\n";
  }
  for (const auto& s : c) {
    const Point p = model.position(s);
    os << "<circle cx=\"" << detail::num(f.sx(p.x)) << "\" cy=\"" << detail::num(f.sy(p.y)) << "\" r=\""
       << detail::num(0.3 * f.scale) << "\" fill=\"" << (model.is_bonded(s) ? "#2060a0" : "#60a0e0")
       << "\" stroke=\"#103050\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

/// Shape polygon above a wall line at y = wall_y (pass the Winterbottom cut, or the lowest vertex).
inline std::string shape_svg(const Polygon& p, double wall_y)
{
  detail::SvgFrame f;
  f.scale = 60.0;
  f.x0 = f.y0 = 1e300;
  f.x1 = f.y1 = -1e300;
  for (const auto& v : p.vertices) {
    f.x0 = std::min(f.x0, v.x), f.x1 = std::max(f.x1, v.x);
    f.y0 = std::min(f.y0, v.y), f.y1 = std::max(f.y1, v.y);
  }
  f.x0 -= 0.5, f.x1 += 0.5;
  f.y0 = std::min(f.y0, wall_y) - 0.5, f.y1 += 0.5;
  std::ostringstream os;
  os << f.header();
  os << "<rect x=\"0\" y=\"" << detail::num(f.sy(wall_y)) << "\" width=\"" << detail::num(f.width()) << "\" height=\""
     << detail::num(f.height() - f.sy(wall_y)) << "\" fill=\"#d8d0c0\"/>\n";
  os << "<line x1=\"0\" y1=\"" << detail::num(f.sy(wall_y)) << "\" x2=\"" << detail::num(f.width()) << "\" y2=\""
     << detail::num(f.sy(wall_y)) << "\" stroke=\"#7a6a50\" stroke-width=\"2\"/>\n";
  os << "<polygon points=\"" << f.points(p) << "\" fill=\"#a0c8f0\" stroke=\"#103050\" stroke-width=\"2\"/>\n";
  os << "</svg>\n";
  return os.str();
}

/// Footprint cells (rescaled) drawn over a reference polygon; both sit on the wall y = 0.
inline std::string overlay_svg(const Footprint& fp, const Polygon& w, double translation = 0.0)
{
  detail::SvgFrame f;
  f.scale = 200.0;
  fp.bounds(f.x0, f.x1, f.y0, f.y1);
  for (const auto& v : w.vertices) {
    f.x0 = std::min(f.x0, v.x + translation), f.x1 = std::max(f.x1, v.x + translation);
    f.y0 = std::min(f.y0, v.y), f.y1 = std::max(f.y1, v.y);
  }
  f.x0 -= 0.1, f.x1 += 0.1, f.y0 = std::min(f.y0, 0.0) - 0.1, f.y1 += 0.1;
  std::ostringstream os;
  os << f.header();
  os << "<rect x=\"0\" y=\"" << detail::num(f.sy(0)) << "\" width=\"" << detail::num(f.width()) << "\" height=\""
     << detail::num(f.height() - f.sy(0)) << "\" fill=\"#d8d0c0\"/>\n";
  for (const auto& s : fp.config())
    os << "<polygon points=\"" << f.points(fp.cell(s)) << "\" fill=\"#a0c8f0\" stroke=\"#6090c0\" stroke-width=\"0.5\"/>\n";
  os << "<polygon points=\"" << f.points(translated(w, translation, 0.0))
     << "\" fill=\"none\" stroke=\"#c03020\" stroke-width=\"2\"/>\n";
  os << "</svg>\n";
  return os.str();
}

inline std::string polygon_csv(const Polygon& p)
{
  std::ostringstream os;
  os << "index,x,y\n";
  for (std::size_t i = 0; i < p.vertices.size(); ++i)
    os << i << ',' << format_double(p.vertices[i].x) << ',' << format_double(p.vertices[i].y) << '\n';
  return os.str();
}

}  // namespace winterlat

#endif  // WINTERLAT_RENDER_HPP
