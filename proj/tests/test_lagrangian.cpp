#include <gtest/gtest.h>

#include <random>

#include "freezm/freezm.hpp"
#include "freezm/verify/oracles.hpp"

using namespace freezm;

namespace {

using E = GroupRingElement;

void expect_error(ErrorKind kind, auto&& f) {
  try {
    f();
    ADD_FAILURE() << "expected " << to_string(kind);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), kind) << e.what();
  }
}

void expect_certified(const EmbeddingSpec& spec, const SolverTrace& t) {
  ASSERT_TRUE(t.certificate.has_value());
  EXPECT_TRUE(t.certificate->passed) << t.certificate->failure;
  const auto q = spec.module();
  const auto v = oracle::check_complement(spec.s_basis(), t.u_basis, q.sign(), q.kind());
  EXPECT_TRUE(v.ok) << v.reason;
  for (const auto& iso : t.isometries) {
    EXPECT_TRUE(oracle::isometry(iso.matrix, q.sign(), q.kind())) << iso.name;
  }
}

}  // namespace

TEST(Lagrangian, OddUnitIdeal) {
  const EmbeddingSpec spec{5, Branch::OddMSkew, E(5), E::one(5), E(5)};
  const auto t = solve(spec);
  expect_certified(spec, t);
  const auto q = spec.module();
  ASSERT_EQ(t.u_basis.size(), 2u);
  EXPECT_EQ(t.u_basis[0], q.f(1));
  EXPECT_EQ(t.u_basis[1], q.f(2));
  EXPECT_EQ(*t.a_used, 0);
}

TEST(Lagrangian, OddNormCoefficient) {
  const EmbeddingSpec spec{3, Branch::OddMSkew, E(3), E::one(3), E::norm_element(3)};
  expect_certified(spec, solve(spec));
}

TEST(Lagrangian, OddNonUnitIdeal) {
  // a2 = b2 = 1 + g: l = 2
  const EmbeddingSpec spec{5, Branch::OddMSkew, E::monomial(5, 2), E::one(5) + E::monomial(5, 1),
                           E::one(5) + E::monomial(5, 1)};
  const auto t = solve(spec);
  expect_certified(spec, t);
  EXPECT_EQ(t.norm->l, 2);
}

TEST(Lagrangian, OddRejects) {
  expect_error(ErrorKind::PreconditionFailed, [] { (void)solve({5, Branch::OddMSkew, E(5), E(5), E(5)}); });
  expect_error(ErrorKind::PreconditionFailed, [] { (void)solve({4, Branch::OddMSkew, E(4), E::one(4), E(4)}); });
}

TEST(Lagrangian, EvenM) {
  const EmbeddingSpec a{2, Branch::EvenMSkew, E(2), E::one(2), E::monomial(2, 1)};
  expect_certified(a, solve(a));

  const EmbeddingSpec b{4, Branch::EvenMSkew, E::norm_element(4), E::one(4), E(4)};
  const auto t = solve(b);
  expect_certified(b, t);
  ASSERT_TRUE(t.r && t.k && t.t);
  // r a2 + k s + t b2 = -a1, for the working v2
  const auto& v2 = t.s_working[1];
  EXPECT_EQ(*t.r * v2[1] + *t.k * E::norm_element(4) + *t.t * v2[3], -v2[0]);
  ASSERT_GE(t.isometries.size(), 2u);
  EXPECT_EQ(t.isometries[0].name, "T");
  EXPECT_EQ(t.isometries[1].name, "R");

  expect_error(ErrorKind::PreconditionFailed, [] { (void)solve({3, Branch::EvenMSkew, E(3), E::one(3), E(3)}); });
}

TEST(Lagrangian, EvenN) {
  for (std::size_t m = 2; m <= 7; ++m) {
    const EmbeddingSpec spec{m, Branch::EvenNSym, E(m), E::one(m), E(m)};
    const auto t = solve(spec);
    expect_certified(spec, t);
    EXPECT_TRUE(t.a_even->is_zero());
    const auto q = spec.module();
    EXPECT_EQ(t.u_basis[0], q.f(1));
    EXPECT_EQ(t.u_basis[1], q.f(2));
  }
  const EmbeddingSpec spec{3, Branch::EvenNSym, E(3), E::constant(3, 2) - E::monomial(3, 1), E(3)};
  const auto t = solve(spec);
  expect_certified(spec, t);
  EXPECT_EQ(*t.a_even, E::one(3));
}

TEST(Lagrangian, EvenNSwap) {
  // augmentation of a2 is 0, of b2 is 1: swap e2, f2 first
  const EmbeddingSpec spec{4, Branch::EvenNSym, E(4), E(4), E::one(4)};
  const auto t = solve(spec);
  expect_certified(spec, t);
  EXPECT_EQ(t.isometries.front().name, "swap(e2,f2)");
}

TEST(Lagrangian, EvenNObstruction) {
  expect_error(ErrorKind::AugmentationObstruction, [] {
    (void)solve({3, Branch::EvenNSym, E(3), E::one(3) - E::monomial(3, 1), E(3)});
  });
}

TEST(Lagrangian, Rank2Identity) {
  const QuadraticModule q1(5, 1, -1, FormParameterKind::Tilde);
  const RingVector x{E::one(5) + E::monomial(5, 1), E::norm_element(5)};
  const auto r = find_rank2_isometry(q1, x, x);
  EXPECT_EQ(r.method, "identity");
  EXPECT_EQ(r.matrix, RingMatrix::identity(5, 2));
}

TEST(Lagrangian, Rank2SingleShear) {
  const QuadraticModule q1(5, 1, -1, FormParameterKind::Tilde);
  const E c = E::monomial(5, 1) + E::monomial(5, 4);  // self-conjugate
  const RingVector from{E::one(5), E(5)}, to{E::one(5), c};
  const auto r = find_rank2_isometry(q1, from, to);
  EXPECT_EQ(r.method, "transvection");
  EXPECT_EQ(r.matrix * from, to);
  EXPECT_TRUE(oracle::isometry(r.matrix, -1, FormParameterKind::Tilde));
}

TEST(Lagrangian, Rank2MuMismatch) {
  const QuadraticModule q1(4, 1, -1, FormParameterKind::Tilde);
  const RingVector from{E::one(4), E(4)}, to{E::one(4), E::monomial(4, 2)};
  expect_error(ErrorKind::PreconditionFailed, [&] { (void)find_rank2_isometry(q1, from, to); });
}

TEST(Lagrangian, SearchOnlyFallbackIsSound) {
  Rank2Options opt;
  opt.constructive = false;
  std::mt19937_64 rng(31);
  int solved = 0, exhausted = 0;
  for (int i = 0; i < 10; ++i) {
    const auto spec = random_spec(Branch::OddMSkew, 3, rng);
    try {
      expect_certified(spec, solve(spec, opt));
      ++solved;
    } catch (const Error& e) {
      ASSERT_EQ(e.kind(), ErrorKind::SearchExhausted) << e.what();
      ++exhausted;
    }
  }
  EXPECT_EQ(solved + exhausted, 10);
}

TEST(Lagrangian, RandomSpecsCertify) {
  std::mt19937_64 rng(77);
  for (auto [branch, m] : {std::pair{Branch::OddMSkew, 5u}, {Branch::EvenMSkew, 4u}, {Branch::EvenNSym, 6u}}) {
    for (int i = 0; i < 10; ++i) {
      const auto spec = random_spec(branch, m, rng);
      expect_certified(spec, solve(spec));
    }
  }
}

TEST(Lagrangian, SweepIsDeterministic) {
  const auto a = sweep(Branch::OddMSkew, 5, 12, 99, {}, 1);
  const auto b = sweep(Branch::OddMSkew, 5, 12, 99, {}, 3);
  const auto c = sweep(Branch::OddMSkew, 5, 12, 99, {}, 1);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
  EXPECT_EQ(a.passed, 12u);
  EXPECT_EQ(a.not_complement, 0u);
}
