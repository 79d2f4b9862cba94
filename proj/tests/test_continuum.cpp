#include <gtest/gtest.h>

#include <cmath>

#include "winterlat/winterlat.hpp"

using namespace winterlat;

namespace {

double edge_len(const Polygon& p, std::size_t i)
{
  const Point a = p.vertices[i], b = p.vertices[(i + 1) % p.size()];
  return std::hypot(b.x - a.x, b.y - a.y);
}

/// Length of the polygon's edges lying on the line y = level.
double length_at(const Polygon& p, double level)
{
  double s = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Point a = p.vertices[i], b = p.vertices[(i + 1) % p.size()];
    if (std::abs(a.y - level) < 1e-9 && std::abs(b.y - level) < 1e-9) s += edge_len(p, i);
  }
  return s;
}

}  // namespace

TEST(Gamma, Examples)
{
  EXPECT_NEAR(gamma(1.0, 0.0), 2.0, 1e-15);
  EXPECT_NEAR(gamma(1.0, kPi / 6), 4.0 / std::sqrt(3.0), 1e-14);
  EXPECT_NEAR(gamma(1.0, kPi / 3), 2.0, 1e-14);
  EXPECT_NEAR(gamma(2.5, 0.3), 2.5 * gamma(1.0, 0.3), 1e-14);
  for (double phi = -4; phi < 4; phi += 0.37) {
    EXPECT_NEAR(gamma(1.0, phi), gamma(1.0, phi + kPi / 3), 1e-12);
    const double r = phi - std::floor(phi / (kPi / 3)) * (kPi / 3);
    EXPECT_NEAR(gamma(1.0, phi), 4.0 / std::sqrt(3.0) * std::cos(r - kPi / 6), 1e-12);
  }
  EXPECT_NEAR(gamma_normal(1.0, {0.0, 1.0}), 2.0, 1e-14);
  EXPECT_NEAR(gamma_normal(1.0, {0.0, -1.0}), 2.0, 1e-14);
}

TEST(Wulff, Hexagon)
{
  const Polygon w = wulff_polygon(1.0);
  ASSERT_EQ(w.size(), 6u);
  EXPECT_NEAR(area(w), 8 * std::sqrt(3.0), 1e-9);
  EXPECT_NEAR(w.vertices[0].x, 4 / std::sqrt(3.0), 1e-9);
  EXPECT_NEAR(w.vertices[0].y, 0.0, 1e-9);
  EXPECT_NEAR(support(w, kPi / 2), 2.0, 1e-9);
  EXPECT_NEAR(support(w, -kPi / 2), 2.0, 1e-9);
  EXPECT_GT(signed_area(w), 0);
  for (int k = 0; k < 720; ++k) {
    const double th = 2 * kPi * k / 720;
    EXPECT_NEAR(support(w, th), gamma(1.0, th - kPi / 2), 1e-9);
  }
  const Polygon w2 = wulff_polygon(2.0);
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_NEAR(w2.vertices[i].x, 2 * w.vertices[i].x, 1e-9);
    EXPECT_NEAR(w2.vertices[i].y, 2 * w.vertices[i].y, 1e-9);
  }
}

TEST(Winterbottom, HalfHexagonAtSigmaZero)
{
  const Polygon p = winterbottom_polygon(1.0, 0.0, 4 * std::sqrt(3.0));
  ASSERT_EQ(p.size(), 4u);
  EXPECT_NEAR(area(p), 4 * std::sqrt(3.0), 1e-9);
  EXPECT_NEAR(length_at(p, 0.0), 8 / std::sqrt(3.0), 1e-9);
  EXPECT_NEAR(length_at(p, 2.0), 4 / std::sqrt(3.0), 1e-9);
  const Polygon n = winterbottom_polygon(1.0, 0.0);
  EXPECT_NEAR(area(n), 1 / kRho, 1e-12);
}

TEST(Winterbottom, FullHexagonAtSigmaTwo)
{
  const Polygon p = winterbottom_polygon(1.0, 2.0, 8 * std::sqrt(3.0));
  EXPECT_EQ(p.size(), 6u);
  EXPECT_NEAR(area(p), 8 * std::sqrt(3.0), 1e-9);
  EXPECT_NEAR(length_at(p, 0.0), 4 / std::sqrt(3.0), 1e-9);
}

TEST(Winterbottom, TrapezoidCutMatchesClosedForm)
{
  // cap of the hexagon between y = -2 and y = -3/2 has area 9/(4 sqrt 3)
  const double s3 = std::sqrt(3.0);
  const double expect = 8 * s3 - 9 / (4 * s3);
  const Polygon p = winterbottom_polygon(1.0, 1.5, expect);
  ASSERT_EQ(p.size(), 6u);
  EXPECT_NEAR(area(p), expect, 1e-9);
  EXPECT_NEAR(length_at(p, 0.0), 5 / s3, 1e-9);
  EXPECT_NEAR(length_at(p, 3.5), 4 / s3, 1e-9);
  EXPECT_THROW(winterbottom_polygon(1.0, -2.0), Error);
}

TEST(SurfaceEnergy, Triangles)
{
  const double s3 = std::sqrt(3.0);
  const Polygon on{{{0, 0}, {1, 0}, {0.5, s3 / 2}}};
  EXPECT_NEAR(surface_energy(on, 1.0, 0.0), 4.0, 1e-12);
  EXPECT_NEAR(surface_energy(on, 1.0, 0.7), 4.7, 1e-12);
  const Polygon off = translated(on, 0.0, 0.25);
  EXPECT_NEAR(surface_energy(off, 1.0, 0.0), 6.0, 1e-12);
  EXPECT_NEAR(surface_energy(scaled(on, 3.0), 1.0, 0.0), 12.0, 1e-12);
  EXPECT_NEAR(surface_energy(translated(on, 7.3, 0.0), 1.0, 0.4), surface_energy(on, 1.0, 0.4), 1e-12);
  EXPECT_THROW(surface_energy(translated(on, 0.0, -0.1), 1.0, 0.0), Error);
}

TEST(SurfaceEnergy, WinterbottomBeatsPerturbations)
{
  for (double sigma : {1.5, 4.0 / 3.0, 0.0, -1.0, 1.9}) {
    const Polygon w = winterbottom_polygon(1.0, sigma);
    const double e0 = surface_energy(w, 1.0, sigma);
    const auto battery = perturbation_battery(w, 40, 99);
    ASSERT_EQ(battery.size(), 40u);
    for (const auto& q : battery) {
      EXPECT_NEAR(area(q), area(w), 1e-9);
      EXPECT_TRUE(is_simple(q));
      EXPECT_GE(surface_energy(q, 1.0, sigma) - e0, -1e-9) << sigma;
    }
  }
}

TEST(Polygon, ClipAndPrune)
{
  const Polygon sq{{{0, 0}, {2, 0}, {2, 2}, {0, 2}}};
  const Polygon half = clip_halfplane(sq, {1.0, 0.0}, 1.0);
  EXPECT_NEAR(area(half), 2.0, 1e-12);
  const Polygon collinear{{{0, 0}, {1, 0}, {2, 0}, {2, 2}, {0, 2}}};
  EXPECT_EQ(prune(collinear, 1e-12).size(), 4u);
  EXPECT_NEAR(perimeter(sq), 8.0, 1e-12);
  EXPECT_NEAR(diameter(sq), std::sqrt(8.0), 1e-12);
  EXPECT_FALSE(is_simple(Polygon{{{0, 0}, {2, 2}, {2, 0}, {0, 2}}}));
}
