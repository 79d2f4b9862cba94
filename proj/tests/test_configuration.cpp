#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "winterlat/winterlat.hpp"

using namespace winterlat;

TEST(Config, CanonicalOrderAndDedup)
{
  const Config c{{3, 1}, {0, 0}, {-2, 1}, {0, 0}};
  ASSERT_EQ(c.size(), 3u);
  EXPECT_EQ(c[0], (SiteCoord{0, 0}));
  EXPECT_EQ(c[1], (SiteCoord{-2, 1}));
  EXPECT_EQ(c[2], (SiteCoord{3, 1}));
  EXPECT_THROW(Config({{0, -1}}), Error);
  EXPECT_THROW(c.translated(0, -1), Error);
}

TEST(Config, TextRoundTrip)
{
  const Config c{{3, 1}, {0, 0}, {-2, 1}};
  EXPECT_EQ(parse_config(to_text(c)), c);
  EXPECT_EQ(parse_config("# header\n1 0\n\n  2 0 # tail\n"), (Config{{1, 0}, {2, 0}}));
  try {
    parse_config("1 0\n1\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
  EXPECT_THROW(parse_config("1 -1\n"), Error);
  EXPECT_THROW(parse_config("1 2 3\n"), Error);
}

TEST(FilmBonds, Examples)
{
  EXPECT_EQ(count_film_bonds(Config{{0, 0}, {1, 0}, {0, 1}}), 3);
  EXPECT_EQ(count_film_bonds(Config{{4, 2}}), 0);
  std::vector<SiteCoord> chain;
  for (int i = 0; i < 9; ++i) chain.push_back({i, 0});
  EXPECT_EQ(count_film_bonds(Config(chain)), 8);
  EXPECT_EQ(film_bonds(Config{{0, 0}, {1, 0}, {0, 1}}).size(), 3u);
}

TEST(FilmBonds, MatchesOracleAndBound)
{
  std::mt19937_64 rng(3);
  for (int i = 0; i < 300; ++i) {
    const Config c = oracle::random_config(rng, 1 + i % 15, 4, 3);
    int b = 0;
    for (std::size_t x = 0; x < c.size(); ++x)
      for (std::size_t y = x + 1; y < c.size(); ++y) b += oracle::unit_apart(c[x], c[y]);
    EXPECT_EQ(count_film_bonds(c), b);
    EXPECT_LE(b, 3 * static_cast<int>(c.size()));
  }
}

TEST(Boundary, Examples)
{
  EXPECT_EQ(boundary_atoms(oracle::hexagon7(0, 3)).size(), 6u);
  EXPECT_EQ(boundary_atoms(Config{{0, 0}, {1, 0}, {2, 0}, {7, 0}}).size(), 4u);
  EXPECT_EQ(boundary_atoms(Config{{0, 0}, {1, 0}, {0, 1}}).size(), 3u);
}

TEST(Decompose, Examples)
{
  const Config two{{0, 0}, {2, 0}};
  auto d2 = decompose(two, 2);
  EXPECT_EQ(d2.components.size(), 2u);
  EXPECT_EQ(d2.meta_clusters.size(), 1u);
  EXPECT_TRUE(is_almost_connected(two, 2));
  auto d1 = decompose(two, 1);
  EXPECT_EQ(d1.components.size(), 2u);
  EXPECT_EQ(d1.meta_clusters.size(), 2u);
  EXPECT_FALSE(is_almost_connected(two, 1));
  const Config chain{{0, 0}, {1, 0}, {2, 0}};
  EXPECT_EQ(decompose(chain, 3).components.size(), 1u);
  EXPECT_EQ(decompose(chain, 3).meta_clusters.size(), 1u);
  EXPECT_TRUE(is_almost_connected(chain, 1));
  // Euclidean distance: (0,0) and (2,1) are sqrt(7) apart, more than 2
  EXPECT_FALSE(is_almost_connected(Config{{0, 0}, {2, 1}}, 2));
  EXPECT_TRUE(is_almost_connected(Config{{0, 0}, {2, 1}}, 3));
  EXPECT_TRUE(within_distance({0, 0}, {2, 0}, 2));
  EXPECT_FALSE(within_distance({0, 0}, {3, 0}, 2));
}

TEST(Transform, Examples)
{
  const Model m = make_m0(1, 2, 1, 1);
  EXPECT_EQ(transform(Config{{0, 5}}, m), (Config{{0, 0}}));
  EXPECT_EQ(transform(Config{{0, 0}, {6, 0}}, m), (Config{{0, 0}, {2, 0}}));
  const Config ok{{0, 0}, {1, 0}, {0, 1}, {3, 0}, {4, 0}};
  EXPECT_EQ(transform(ok, m), ok);
  // gap 3 > q: the right atom is slid back by q
  EXPECT_EQ(transform(Config{{0, 0}, {1, 0}, {0, 1}, {4, 0}}, m), (Config{{0, 0}, {1, 0}, {0, 1}, {2, 0}}));
}

TEST(Transform, PropertiesOnRandomConfigs)
{
  std::mt19937_64 rng(5);
  for (const auto& m : {make_m0(1, 2, 1, 1), make_m1(5, 1, 1, 1), make_m0(1, 1, 1, Rational(5, 2)),
                        make_model({2, 1, 0}, Rational(1, 4), Rational(1, 4), 1.0, 1, 1)}) {
    const int q = m.period();
    for (int i = 0; i < 200; ++i) {
      const Config c = oracle::random_config(rng, 1 + i % 12, 15, 6);
      const Config t = transform(c, m);
      ASSERT_EQ(t.size(), c.size());
      EXPECT_TRUE(is_almost_connected(t, q)) << to_text(c);
      for (const auto& comp : decompose(t, q).components) EXPECT_TRUE(has_substrate_bond(m, comp));
      EXPECT_LE(oracle::energy(m, t), oracle::energy(m, c));
      // connected component sizes survive (T moves whole components)
      auto sizes = [](const Config& x) {
        std::vector<std::size_t> s;
        for (const auto& g : connected_components(x)) s.push_back(g.size());
        std::sort(s.begin(), s.end());
        return s;
      };
      EXPECT_GE(sizes(t).back(), sizes(c).back());
      // second application is the identity up to q-translation
      const Config tt = transform(t, m);
      EXPECT_EQ(normalize_anchor(tt, q), normalize_anchor(t, q));
    }
  }
}

TEST(Wetting, Examples)
{
  const Model m31 = make_m1(3, 1, 1, 1);
  EXPECT_EQ(wetting_config(m31, 4), (Config{{0, 0}, {1, 0}, {3, 0}, {4, 0}}));
  EXPECT_EQ(energy(m31, wetting_config(m31, 4)), Rational(-8));
  const Model m52 = make_m1(5, 2, 1, 1);
  const Config w3 = wetting_config(m52, 3);
  EXPECT_EQ(w3.size(), 3u);
  for (const auto& s : w3) EXPECT_TRUE(m52.is_bonded(s));
  EXPECT_EQ(energy(m52, w3), Rational(-3));
  const Model m11 = make_m0(1, 1, 1, 1);
  EXPECT_EQ(wetting_config(m11, 4), (Config{{0, 0}, {1, 0}, {2, 0}, {3, 0}}));
  EXPECT_EQ(energy(m11, wetting_config(m11, 4)), Rational(-10));
  EXPECT_TRUE(is_wetting_configuration(m11, wetting_config(m11, 4)));
  EXPECT_FALSE(is_wetting_configuration(m11, Config{{0, 0}, {2, 0}}));
}

TEST(Wetting, ClosedFormEnergies)
{
  for (int n = 1; n <= 12; ++n) {
    const Rational cf(3, 2), cs(5, 3);
    EXPECT_EQ(energy(make_m1(5, 2, cf, cs), wetting_config(make_m1(5, 2, cf, cs), n)), -cs * n);
    EXPECT_EQ(energy(make_m0(1, 1, cf, cs), wetting_config(make_m0(1, 1, cf, cs), n)), -cs * n - 2 * cf * (n - 1));
    const Model p = make_m1(7, 1, cf, cs);
    EXPECT_EQ(energy(p, wetting_config(p, n)), -cs * n - cf * (n - n % 2));
  }
}

TEST(Associated, IdentityForCentredAndMapsWetting)
{
  const Model m = make_model({2, 5, 0}, Rational(1, 4), Rational(1, 4), 1.0, 1, 1);
  const Config c{{1, 0}, {3, 2}};
  EXPECT_EQ(associated_config(c, m), c);
  const Model red = reduce(m).to_model();
  EXPECT_TRUE(is_wetting_configuration(red, associated_config(wetting_config(m, 5), m)));
  const Model un = make_model({1, 3, 0}, Rational(1, 2), Rational(1, 2), 1.0, 1, 1);
  EXPECT_TRUE(is_wetting_configuration(reduce(un).to_model(), associated_config(wetting_config(un, 4), un)));
}
