#include <gtest/gtest.h>

#include "oracles.hpp"
#include "winterlat/winterlat.hpp"

using namespace winterlat;

namespace {

Model c1() { return make_model({2, 1, 0}, Rational(1, 4), Rational(1, 4), 1.0, 1, 1); }
Model c2() { return make_model({1, 2, 0}, 0, 0, 1.0, 1, 1); }
Model c3() { return make_model({1, 2, 0}, Rational(1, 2), Rational(1, 2), 1.0, 1, 1); }
Model c4() { return make_model({2, 5, 0}, Rational(1, 4), Rational(1, 4), 1.0, 1, 1); }

}  // namespace

TEST(Classify, Examples)
{
  EXPECT_EQ(classify(c1()).tag, ClassTag::C1);
  EXPECT_EQ(classify(c2()).tag, ClassTag::C2);
  EXPECT_EQ(classify(c3()).tag, ClassTag::C3);
  const ModelClass k = classify(c4());
  EXPECT_EQ(k.tag, ClassTag::C4);
  EXPECT_EQ(k.s, 2);
  EXPECT_EQ(k.q, 5);
  EXPECT_EQ(classify(make_m1(5, 1, 1, 1)).s, 1);
  // uncentred input is recentred internally
  EXPECT_EQ(classify(make_model({1, 3, 0}, Rational(1, 2), Rational(1, 2), 1.0, 1, 1)).tag, ClassTag::C4);
  EXPECT_EQ(classify(make_model({1, 3, 0}, Rational(1, 2), Rational(1, 2), 1.0, 1, 1)).s, 1);
  // (1,4,2) with x_F above a substrate atom: bonded residues {0, 2}
  EXPECT_EQ(classify(make_model({1, 4, 2}, 0, 0, 1.0, 1, 1)).tag, ClassTag::C3);
}

TEST(Reduce, Examples)
{
  const CanonicalModel a = reduce(ModelClass{ClassTag::C1, 1, 0}, {1, 1});
  EXPECT_EQ(a.name(), "M0(1,1)");
  EXPECT_EQ(a.lambda.c_s, Rational(2));
  EXPECT_EQ(reduce(ModelClass{ClassTag::C3, 4, 0}, {1, 1}).name(), "M0(1,2)");
  EXPECT_EQ(reduce(ModelClass{ClassTag::C4, 5, 4}, {1, 1}).name(), "M1(5,1)");
  EXPECT_EQ(reduce(ModelClass{ClassTag::C4, 5, 2}, {1, 1}).name(), "M1(5,2)");
  EXPECT_EQ(reduce(c2()).name(), "M0(1,2)");
  EXPECT_EQ(reduce(c3()).name(), "M0(1,1)");
  EXPECT_EQ(reduce(c4()).name(), "M1(5,2)");
  EXPECT_EQ(reduce(make_model({1, 4, 2}, 0, 0, 1.0, 1, 1)).name(), "M0(1,2)");
}

TEST(Sigma, Examples)
{
  EXPECT_EQ(sigma(c2()), Rational(3, 2));
  EXPECT_EQ(sigma(c1()), Rational(0));
  EXPECT_EQ(sigma(make_m1(3, 1, 1, 1)), Rational(4, 3));
}

TEST(Sigma, CommutesWithReduction)
{
  for (const auto& m : {c1(), c2(), c3(), c4(), make_m1(5, 1, 2, 3), make_m0(1, 3, 1, Rational(5, 2)),
                        make_model({1, 4, 2}, 0, 0, 1.0, 1, 3)})
    EXPECT_EQ(sigma(m), sigma(reduce(m))) << classify(m).to_string();
}

TEST(Thresholds, Stated)
{
  EXPECT_EQ(wetting_threshold_stated(make_m1(5, 1, 1, 1)), 5);
  EXPECT_EQ(wetting_threshold_stated(c2()), 6);
  EXPECT_EQ(wetting_threshold_stated(make_m1(5, 2, 1, 1)), 6);
  EXPECT_EQ(wetting_threshold_stated(c1()), 4);
  EXPECT_EQ(wetting_threshold_stated(make_m0(1, 1, 1, 1)), 4);
  EXPECT_EQ(wetting_threshold_multiplier(reduce(make_m1(3, 1, 1, 1))), 5);
}

TEST(Thresholds, Reduced)
{
  EXPECT_EQ(wetting_threshold_reduced(c1()), Rational(2));
  EXPECT_EQ(wetting_threshold_reduced(make_m0(1, 3, 1, 1)), Rational(6));
  EXPECT_EQ(wetting_threshold_reduced(c4()), Rational(6));
  EXPECT_EQ(wetting_threshold_reduced(make_m1(5, 1, 3, 1)), Rational(15));
  for (const auto& m : {c2(), c3(), c4(), make_m1(5, 1, 1, 1), make_m1(3, 1, 1, 1), make_m0(1, 1, 1, 1)})
    EXPECT_EQ(wetting_threshold_reduced(m), Rational(wetting_threshold_stated(m)) * m.c_f());
  EXPECT_FALSE(in_wetting_regime(c1().with_c_s(Rational(7, 4))));
  EXPECT_TRUE(in_wetting_regime(c1().with_c_s(2)));
}

TEST(Equivalence, SmallSweepAllClasses)
{
  for (const auto& m : {c1(), c2(), c3(), c4(), make_model({1, 4, 2}, 0, 0, 1.0, 1, 1),
                        make_model({1, 3, 0}, Rational(1, 2), Rational(1, 2), 1.0, 2, 3)}) {
    const CheckTally t = equivalence_sweep(m, 3);
    EXPECT_TRUE(t.ok()) << classify(m).to_string() << ": " << t.detail;
    EXPECT_GT(t.checked, 1000u);
  }
}

TEST(Equivalence, OracleEnergiesAgreeAfterRelabel)
{
  std::mt19937_64 rng(11);
  for (const auto& m : {c1(), c3(), c4(), make_model({1, 3, 0}, Rational(1, 2), Rational(1, 2), 1.0, 1, 1)}) {
    const Model red = reduce(m).to_model();
    for (int i = 0; i < 200; ++i) {
      const Config d = oracle::random_config(rng, 1 + i % 8);
      EXPECT_EQ(oracle::energy(m, d), oracle::energy(red, associated_config(d, m)));
    }
  }
}
