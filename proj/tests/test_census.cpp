#include <gtest/gtest.h>

#include "freezm/freezm.hpp"
#include "freezm/verify/oracles.hpp"

using namespace freezm;

namespace {

ActionQuery query(int n, std::uint64_t m, long g) { return {n, m, g, std::nullopt}; }

}  // namespace

TEST(Census, Existence) {
  const auto a = existence_check(query(3, 2, 3));
  EXPECT_TRUE(a.exists);
  EXPECT_TRUE(a.euler_integral);
  EXPECT_EQ(a.euler_numerator / a.euler_denominator, -2);
  EXPECT_FALSE(existence_check(query(3, 2, 2)).exists);
  EXPECT_TRUE(existence_check(query(2, 3, 2)).exists);
}

TEST(Census, ExistenceMatchesDivisibility) {
  for (int n = 2; n <= 9; ++n) {
    for (std::uint64_t m = 2; m <= 12; ++m) {
      int hits = 0;
      for (long g = 0; g <= 50; ++g) {
        const auto e = existence_check(query(n, m, g));
        const long value = g + (n % 2 == 0 ? 1 : -1);
        EXPECT_EQ(e.exists, oracle::divides_by_search(static_cast<std::int64_t>(m), value));
        if (e.exists) {
          EXPECT_TRUE(e.euler_integral);
          EXPECT_EQ((e.euler_numerator / e.euler_denominator) % 2, 0);
        }
        if (g < static_cast<long>(m)) hits += e.exists;
      }
      EXPECT_EQ(hits, 1);
    }
  }
}

TEST(Census, CTable) {
  EXPECT_EQ(c_of_n(4), 3);
  EXPECT_EQ(c_of_n(8), 5);
  try {
    (void)c_of_n(10);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OutOfTable);
  }
}

TEST(Census, DimensionThree) {
  const auto r = classification(query(3, 2, 3));
  ASSERT_TRUE(r.class_count);
  EXPECT_EQ(*r.class_count, 2);
  ASSERT_EQ(r.descriptors.size(), 2u);
  EXPECT_EQ(r.descriptors[0], "(L³_m×S³)#((g−1)/m)(S³×S³)");
  EXPECT_EQ(r.descriptors[1], "S(ξ)#((g−1)/m)(S³×S³)");
  EXPECT_EQ(r.conjugation, ConjugationKind::Smooth);
  EXPECT_EQ(*classification(query(3, 3, 4)).class_count, 1);
}

TEST(Census, DimensionTwo) {
  const auto r = classification(query(2, 3, 2));
  EXPECT_EQ(*r.class_count, 1);
  EXPECT_EQ(r.conjugation, ConjugationKind::Topological);
  EXPECT_FALSE(r.notes.empty());
}

TEST(Census, HigherDimensions) {
  const auto r = classification(query(5, 7, 8));
  EXPECT_EQ(*r.class_count, 7);
  EXPECT_FALSE(r.out_of_range);

  const auto out = classification(query(4, 6, 5));
  EXPECT_TRUE(out.out_of_range);
  EXPECT_FALSE(out.class_count);

  const auto eight = classification(query(8, 7, 6));
  EXPECT_EQ(*eight.class_count, 49);
  EXPECT_EQ(*eight.summand_copies, 0);

  EXPECT_TRUE(classification(query(10, 7, 6)).out_of_range);
}

TEST(Census, NoCountWithoutExistence) {
  for (int n = 2; n <= 9; ++n) {
    for (long g = 0; g <= 20; ++g) {
      const auto r = classification(query(n, 7, g));
      if (!r.existence.exists) {
        EXPECT_FALSE(r.class_count);
      }
    }
  }
}

TEST(Census, PontryaginEcho) {
  ActionQuery q = query(5, 7, 8);
  q.pontryagin = std::vector<Integer>{10};
  const auto r = classification(q);
  EXPECT_EQ(r.class_descriptor, "(p1..p1) = (3) mod 7");
  EXPECT_EQ(classification(q).class_descriptor, r.class_descriptor);
  q.pontryagin = std::vector<Integer>{1, 2};
  EXPECT_THROW(classification(q), Error);
}
