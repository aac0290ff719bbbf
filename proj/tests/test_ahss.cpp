#include <gtest/gtest.h>

#include <random>

#include "freezm/freezm.hpp"
#include "freezm/verify/oracles.hpp"

using namespace freezm;

namespace {

using Groups = std::vector<std::uint64_t>;
const Groups kZ{0}, kZ2{2}, kZero{};

CohomologyClass mono(std::size_t m, unsigned x, unsigned y) { return CohomologyClass::monomial(m, x, y); }

CohomologyClass from_oracle(std::size_t m, unsigned x, unsigned y, unsigned k) {
  CohomologyClass out(m, x + 2 * y + k);
  for (auto [a, b] : oracle::square_monomial(ring_case(m) == RingCase::Trunc, x, y, k)) {
    out += mono(m, a, b);
  }
  return out;
}

}  // namespace

TEST(Ahss, RingCase) {
  EXPECT_EQ(ring_case(2), RingCase::Poly);
  EXPECT_EQ(ring_case(6), RingCase::Poly);
  EXPECT_EQ(ring_case(4), RingCase::Trunc);
  EXPECT_THROW(ring_case(5), Error);
}

TEST(Ahss, Basis) {
  EXPECT_EQ(cohomology_basis(2, 5), std::vector{mono(2, 5, 0)});
  EXPECT_EQ(cohomology_basis(4, 2), std::vector{mono(4, 0, 1)});
  EXPECT_EQ(cohomology_basis(4, 5), std::vector{mono(4, 1, 2)});
  EXPECT_THROW(cohomology_basis(3, 2), Error);
}

TEST(Ahss, TruncationKillsXSquared) {
  EXPECT_TRUE((mono(4, 1, 0) * mono(4, 1, 0)).is_zero());
  EXPECT_EQ(mono(2, 1, 0) * mono(2, 1, 0), mono(2, 2, 0));
}

TEST(Ahss, SquareSamples) {
  EXPECT_EQ(steenrod_square(2, mono(2, 3, 0)), mono(2, 5, 0));
  EXPECT_EQ(steenrod_square(2, mono(4, 1, 1)), mono(4, 1, 2));
  for (std::size_t m : {2u, 4u}) {
    const auto c = cohomology_basis(m, 5).front();
    EXPECT_EQ(steenrod_square(0, c), c);
  }
  EXPECT_EQ(parse_monomial(4, "xy^2"), mono(4, 1, 2));
}

TEST(Ahss, SquaresMatchClosedForm) {
  for (std::size_t m : {2u, 4u, 6u, 8u}) {
    for (unsigned d = 0; d <= 12; ++d) {
      for (const auto& c : cohomology_basis(m, d)) {
        const auto t = *c.terms().begin();
        for (unsigned k = 0; k <= d + 1; ++k) {
          EXPECT_EQ(steenrod_square(k, c), from_oracle(m, t.x, t.y, k)) << m << " " << c.str() << " k=" << k;
        }
      }
    }
  }
}

TEST(Ahss, CartanAndInstability) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<unsigned> deg(0, 7);
  for (std::size_t m : {2u, 4u}) {
    for (int i = 0; i < 40; ++i) {
      const auto a = cohomology_basis(m, deg(rng)).front();
      const auto b = cohomology_basis(m, deg(rng)).front();
      for (unsigned k = 0; k <= a.degree() + b.degree(); ++k) {
        CohomologyClass sum(m, a.degree() + b.degree() + k);
        for (unsigned j = 0; j <= k; ++j) sum += steenrod_square(j, a) * steenrod_square(k - j, b);
        EXPECT_EQ(steenrod_square(k, a * b), sum);
      }
      EXPECT_TRUE(steenrod_square(a.degree() + 1, a).is_zero());
      EXPECT_EQ(steenrod_square(a.degree(), a), a * a);
    }
  }
}

TEST(Ahss, D2Ranks) {
  EXPECT_EQ(d2_rank(2, 5, false), 1u);
  EXPECT_EQ(d2_rank(2, 6, false), 0u);
  EXPECT_EQ(d2_rank(4, 6, true), 1u);
  EXPECT_EQ(d2_rank(4, 7, true), 1u);
  for (std::size_t m = 2; m <= 20; m += 2) EXPECT_EQ(d2_rank(m, 5, false), 1u) << m;
  EXPECT_THROW(d2_rank(3, 5, false), Error);
}

TEST(Ahss, E2Page) {
  for (std::size_t m = 2; m <= 12; ++m) {
    const auto page = e2_page(m, false);
    EXPECT_EQ(page.at(0, 0), kZ);
    for (int p = 1; p <= 6; ++p) {
      if (m % 2) {
        EXPECT_EQ(page.at(p, 6 - p), kZero) << m << " " << p;
      }
    }
    if (m % 2 == 0) {
      EXPECT_EQ(page.at(4, 2), kZ2);
      EXPECT_EQ(page.at(5, 1), kZ2);
    }
    EXPECT_EQ(page.at(1, 0), Groups{m});
  }
  EXPECT_EQ(cyclic_group_homology(6, 3, 0), Groups{6});
  EXPECT_EQ(cyclic_group_homology(6, 2, 0), kZero);
}

TEST(Ahss, ComparisonWithOrderTwo) {
  for (std::size_t m = 2; m <= 12; m += 2) {
    EXPECT_TRUE(restriction_to_order_two_nonzero(m, 4));
    EXPECT_NE(inclusion_on_h1(m) % m, 0u);
  }
}

TEST(Ahss, LineReports) {
  const auto odd = spin_line_report(3, false);
  EXPECT_TRUE(odd.conclusion_zero);
  EXPECT_TRUE(odd.higher.empty());
  EXPECT_TRUE(odd.all_computed_except_cited_d3());

  const auto tw = spin_line_report(6, true);
  EXPECT_TRUE(tw.conclusion_zero);
  EXPECT_TRUE(tw.higher.empty());
  for (const auto& e : tw.entries) EXPECT_TRUE(e.e3.empty());

  const auto un = spin_line_report(2, false);
  EXPECT_TRUE(un.conclusion_zero);
  ASSERT_EQ(un.higher.size(), 1u);
  EXPECT_EQ(un.higher[0].provenance, Provenance::PaperCited);
  EXPECT_EQ(un.higher[0].source, (Bidegree{4, 2}));
  for (const auto& e : un.entries) {
    if (e.at == Bidegree{4, 2}) {
      EXPECT_EQ(e.e3, kZ2);
      EXPECT_TRUE(e.killed_later);
    }
  }
  EXPECT_FALSE(un.bibliography.empty());
}
