#include <gtest/gtest.h>

#include <thread>
#include <vector>

#include "wcg/faulhaber.hpp"

using namespace wcg;

TEST(Bernoulli, FirstValues) {
  const BernoulliTable b = bernoulli_numbers(12);
  ASSERT_EQ(b.size(), 13u);
  EXPECT_EQ(b[0], rational(1));
  EXPECT_EQ(b[1], rational(-1, 2));
  EXPECT_EQ(b[2], rational(1, 6));
  EXPECT_EQ(b[4], rational(-1, 30));
  EXPECT_EQ(b[6], rational(1, 42));
  EXPECT_EQ(b[12], rational(-691, 2730));
  for (int j = 3; j <= 11; j += 2) EXPECT_EQ(b[j], rational(0)) << j;
  EXPECT_THROW(bernoulli_numbers(-1), domain_error);
}

TEST(Bernoulli, OddVanishLarge) {
  const BernoulliTable b = bernoulli_numbers(60);
  for (int j = 3; j <= 59; j += 2) EXPECT_EQ(b[j], rational(0)) << j;
}

TEST(Faulhaber, ClosedForms) {
  EXPECT_EQ(faulhaber_exact(3, rational(2)), rational(9));
  EXPECT_EQ(faulhaber_exact(1, rational(10)), rational(55));
  EXPECT_EQ(faulhaber_exact(0, rational(7)), rational(7));
  EXPECT_DOUBLE_EQ(faulhaber_exact(1, 10.0), 55.0);
  for (double x : {0.0, 0.5, 1.3, 4.0}) EXPECT_NEAR(faulhaber_exact(3, x), x * x * (x + 1) * (x + 1) / 4, 1e-12);
}

TEST(Faulhaber, MatchesPowerSumsExactly) {
  for (int m = 0; m <= 10; ++m) {
    bigint sum = 0;
    for (int n = 0; n <= 20; ++n) {
      if (n > 0) {
        bigint p = 1;
        for (int k = 0; k < m; ++k) p *= n;
        sum += p;
      }
      EXPECT_EQ(faulhaber_exact(m, rational(n)), rational(sum)) << m << ' ' << n;
    }
  }
}

TEST(Faulhaber, LeadingTermsAgreeWithTruncation) {
  // The two highest coefficients are 1/(m+1) and 1/2.
  for (int m = 1; m <= 12; ++m) {
    const auto c = faulhaber_coefficients(m);
    EXPECT_EQ(c[m + 1], rational(1, m + 1));
    EXPECT_EQ(c[m], rational(1, 2));
    EXPECT_EQ(c[0], rational(0));
  }
}

TEST(Faulhaber, LargeOrderBeyondSharedTable) {
  // Exercises the non-shared path; S^_70(1) = 1.
  EXPECT_EQ(faulhaber_exact(70, rational(1)), rational(1));
}

TEST(Faulhaber, ConcurrentUse) {
  std::vector<std::thread> pool;
  std::vector<int> ok(8, 0);
  for (int t = 0; t < 8; ++t)
    pool.emplace_back([t, &ok] { ok[t] = faulhaber_exact(5 + t, rational(3)) > 0; });
  for (auto& th : pool) th.join();
  for (int v : ok) EXPECT_EQ(v, 1);
}

TEST(Pathologies, Examples) {
  EXPECT_FALSE(faulhaber_pathologies(14).monotone_on_unit_interval);
  EXPECT_LT(faulhaber_pathologies(20).min_value_on_unit_interval, 0.0);
  EXPECT_LT(faulhaber_pathologies(21).min_value_on_unit_interval, 0.0);
  const FaulhaberPathologies p3 = faulhaber_pathologies(3);
  EXPECT_TRUE(p3.monotone_on_unit_interval);
  EXPECT_GT(p3.min_value_on_unit_interval, 0.0);
  EXPECT_DOUBLE_EQ(p3.min_value_on_unit_interval, 1.0);
  EXPECT_THROW(faulhaber_pathologies(0), domain_error);
}

TEST(Pathologies, SmallOrdersAreTame) {
  for (int m = 1; m <= 4; ++m) {
    const FaulhaberPathologies p = faulhaber_pathologies(m);
    EXPECT_TRUE(p.monotone_on_unit_interval) << m;
    EXPECT_GT(p.min_value_on_unit_interval, 0.0) << m;
  }
}
