#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "freezm/freezm.hpp"
#include "freezm/verify/oracles.hpp"

using namespace freezm;

namespace {

using E = GroupRingElement;

E gpow(std::size_t m, long long k, Integer c = 1) { return E::monomial(m, k, c); }
E el(std::size_t m, std::vector<long long> c) {
  IntVector v(m, 0);
  for (std::size_t i = 0; i < c.size(); ++i) v[i] = c[i];
  return E(m, v);
}

E rand_el(std::mt19937_64& rng, std::size_t m, int h = 3) {
  std::uniform_int_distribution<int> d(-h, h);
  IntVector v(m);
  for (auto& x : v) x = d(rng);
  return E(m, v);
}

void expect_error(ErrorKind kind, auto&& f) {
  try {
    f();
    ADD_FAILURE() << "expected " << to_string(kind);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), kind) << e.what();
  }
}

}  // namespace

TEST(RingCore, NormKillsOneMinusGen) {
  const E s = E::norm_element(5);
  EXPECT_TRUE(((E::one(5) - gpow(5, 1)) * s).is_zero());
}

TEST(RingCore, SampleProduct) {
  // (1+g)(-g-g^3) = 1 - s for m = 5
  const E lhs = (E::one(5) + gpow(5, 1)) * (-gpow(5, 1) - gpow(5, 3));
  EXPECT_EQ(lhs, E::one(5) - E::norm_element(5));
}

TEST(RingCore, Involution) {
  EXPECT_EQ(involution(gpow(5, 1)), gpow(5, 4));
  EXPECT_EQ(involution(E::one(6) - gpow(6, 1)), E::one(6) - gpow(6, 5));
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    const E x = rand_el(rng, 7), y = rand_el(rng, 7);
    EXPECT_EQ(involution(involution(x)), x);
    EXPECT_EQ(involution(x * y), involution(x) * involution(y));
  }
}

TEST(RingCore, Augmentation) {
  EXPECT_EQ(augmentation(E::norm_element(9)), 9);
  EXPECT_EQ(augmentation(el(5, {1, 1, 0, 1})), 3);
}

TEST(RingCore, MultiplicationMatchesFold) {
  std::mt19937_64 rng(11);
  for (std::size_t m = 2; m <= 12; ++m) {
    for (int i = 0; i < 20; ++i) {
      const E x = rand_el(rng, m), y = rand_el(rng, m), z = rand_el(rng, m);
      EXPECT_EQ(x * y, oracle::fold_mul(x, y));
      EXPECT_EQ(x * y, y * x);
      EXPECT_EQ((x * y) * z, x * (y * z));
      EXPECT_EQ(x * E::norm_element(m), augmentation(x) * E::norm_element(m));
      EXPECT_EQ(augmentation(x * y), augmentation(x) * augmentation(y));
    }
  }
}

TEST(RingCore, ModulusMismatch) {
  expect_error(ErrorKind::ModulusMismatch, [] { (void)(E::one(3) + E::one(4)); });
  expect_error(ErrorKind::ModulusMismatch, [] { (void)(E::one(3) * E::one(4)); });
}

TEST(RingCore, ExactDivide) {
  const E q = exact_divide(E::one(5) - E::norm_element(5), E::one(5) + gpow(5, 1)).quotient;
  EXPECT_EQ(q, -gpow(5, 1) - gpow(5, 3));
  expect_error(ErrorKind::NotDivisible,
               [] { (void)exact_divide(E::one(5) - gpow(5, 1), E::norm_element(5)); });
  expect_error(ErrorKind::NotDivisible, [] { (void)exact_divide(E::one(4), E::zero(4)); });
}

TEST(RingCore, ExactDivideRoundTrip) {
  std::mt19937_64 rng(5);
  for (std::size_t m = 2; m <= 9; ++m) {
    for (int i = 0; i < 20; ++i) {
      const E d = rand_el(rng, m, 2), x = rand_el(rng, m, 2);
      if (d.is_zero()) continue;
      const auto r = exact_divide(x * d, d);
      EXPECT_EQ(r.quotient * d, x * d);
    }
  }
}

TEST(RingCore, ZeroDivisorDivisionIsFlagged) {
  const auto r = exact_divide(E::norm_element(4) * 3, E::norm_element(4));
  EXPECT_TRUE(r.ambiguous);
  EXPECT_EQ(r.quotient * E::norm_element(4), E::norm_element(4) * 3);
}

TEST(RingCore, Units) {
  for (std::size_t m : {3u, 5u, 8u}) {
    const E u = -gpow(m, 2);
    ASSERT_TRUE(is_unit(u));
    EXPECT_EQ(*unit_inverse(u), -gpow(m, static_cast<long long>(m) - 2));
    EXPECT_FALSE(is_unit(E::norm_element(m)));
  }
  // 1 - g + g^2... unit test against the lattice oracle
  std::mt19937_64 rng(9);
  for (int i = 0; i < 100; ++i) {
    const E x = rand_el(rng, 5, 1);
    EXPECT_EQ(is_unit(x), oracle::unit(x)) << x;
  }
}

TEST(RingCore, ParameterReduce) {
  EXPECT_TRUE(param_reduce(gpow(5, 1) + gpow(5, 4), FormParameterKind::Plus).is_zero());
  EXPECT_TRUE(param_reduce(E::one(5), FormParameterKind::Tilde).is_zero());
  EXPECT_FALSE(param_reduce(gpow(6, 3), FormParameterKind::Tilde).is_zero());
  EXPECT_FALSE(param_reduce(E::one(5), FormParameterKind::Plus).is_zero());
}

TEST(RingCore, ParameterClassesMatchInvariants) {
  std::mt19937_64 rng(17);
  for (auto kind : {FormParameterKind::Tilde, FormParameterKind::Plus, FormParameterKind::Minus}) {
    for (std::size_t m = 2; m <= 8; ++m) {
      for (int i = 0; i < 40; ++i) {
        const E x = rand_el(rng, m, 2), y = rand_el(rng, m, 2);
        EXPECT_EQ(param_reduce(x, kind) == param_reduce(y, kind), oracle::same_class(x, y, kind));
        EXPECT_EQ(param_reduce(x, kind).is_zero(), oracle::in_parameter(x, kind));
      }
    }
  }
}

TEST(RingCore, NormalizeSample) {
  const NormData nd = ideal_normalize({E::constant(5, 2), E::one(5) - gpow(5, 1)});
  EXPECT_EQ(nd.l, 2);
  EXPECT_EQ(nd.u, E::one(5) + gpow(5, 1));
  EXPECT_EQ(nd.a, 1);
  EXPECT_EQ(nd.b, 2);
  EXPECT_EQ(nd.v, -gpow(5, 1) - gpow(5, 3));

  const NormData nd7 = ideal_normalize({E::constant(7, 3), E::one(7) - gpow(7, 1)});
  EXPECT_EQ(nd7.l, 3);
  EXPECT_EQ(nd7.u * nd7.v, E::one(7) - nd7.a * E::norm_element(7));
}

TEST(RingCore, NormalizeRejects) {
  // 2 and s generate a proper ideal for m even
  expect_error(ErrorKind::PreconditionFailed,
               [] { (void)ideal_normalize({E::constant(4, 2), E::norm_element(4)}); });
}

TEST(RingCore, NormalizeAgainstOracle) {
  std::mt19937_64 rng(23);
  int checked = 0;
  for (std::size_t m = 2; m <= 9; ++m) {
    for (int i = 0; i < 30; ++i) {
      const std::vector<E> gens{rand_el(rng, m, 2), rand_el(rng, m, 2)};
      std::vector<E> with_s = gens;
      with_s.push_back(E::norm_element(m));
      if (!oracle::ideal_contains(with_s, E::one(m))) continue;
      const NormData nd = ideal_normalize(std::span<const E>(gens));
      EXPECT_TRUE(oracle::same_ideal({nd.u}, gens));
      EXPECT_EQ(nd.u * nd.v, E::one(m) - nd.a * E::norm_element(m));
      const auto alt = nd.unit_convention();
      EXPECT_EQ(nd.u * alt.v + alt.a * E::norm_element(m), E::one(m));
      ++checked;
    }
  }
  EXPECT_GT(checked, 20);
}
