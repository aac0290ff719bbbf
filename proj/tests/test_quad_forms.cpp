#include <gtest/gtest.h>

#include <random>

#include "freezm/freezm.hpp"
#include "freezm/verify/criteria.hpp"
#include "freezm/verify/oracles.hpp"

using namespace freezm;

namespace {

using E = GroupRingElement;

E rand_el(std::mt19937_64& rng, std::size_t m, int h = 2) {
  std::uniform_int_distribution<int> d(-h, h);
  IntVector v(m);
  for (auto& x : v) x = d(rng);
  return E(m, v);
}

RingVector rand_vec(std::mt19937_64& rng, std::size_t m, std::size_t n) {
  std::vector<E> c;
  for (std::size_t i = 0; i < n; ++i) c.push_back(rand_el(rng, m));
  return RingVector(c);
}

QuadraticModule skew(std::size_t m, std::size_t r = 2) { return {m, r, -1, FormParameterKind::Tilde}; }
QuadraticModule sym(std::size_t m, std::size_t r = 2) { return {m, r, 1, FormParameterKind::Minus}; }

}  // namespace

TEST(QuadForms, HyperbolicPairing) {
  const auto q = skew(5);
  EXPECT_EQ(q.lambda(q.e(1), q.f(1)), E::one(5));
  EXPECT_EQ(q.lambda(q.f(1), q.e(1)), -E::one(5));
  const RingVector v2{E::monomial(5, 2), E::one(5) + E::monomial(5, 1), E::norm_element(5), E::monomial(5, 3)};
  EXPECT_EQ(q.lambda(q.e(1), v2), E::norm_element(5));
}

TEST(QuadForms, IncompatibleParameter) {
  EXPECT_THROW(QuadraticModule(4, 2, 1, FormParameterKind::Tilde), Error);
  EXPECT_THROW(QuadraticModule(4, 2, -1, FormParameterKind::Minus), Error);
}

TEST(QuadForms, LambdaMatchesOracleAndIsSesquilinear) {
  std::mt19937_64 rng(2);
  for (std::size_t m : {2u, 3u, 4u, 6u}) {
    for (int sign : {-1, 1}) {
      const QuadraticModule q(m, 2, sign, sign < 0 ? FormParameterKind::Tilde : FormParameterKind::Minus);
      for (int i = 0; i < 20; ++i) {
        const auto x = rand_vec(rng, m, 4), y = rand_vec(rng, m, 4);
        const E c = rand_el(rng, m);
        EXPECT_EQ(q.lambda(x, y), oracle::lambda(x, y, sign));
        EXPECT_EQ(q.lambda(y, x), E::constant(m, sign) * involution(q.lambda(x, y)));
        EXPECT_EQ(q.lambda(c * x, y), c * q.lambda(x, y));
        // mu(x + y) - mu(x) - mu(y) = [lambda(x, y)]
        const auto lhs = param_reduce(q.mu_lift(x + y) - q.mu_lift(x) - q.mu_lift(y) - q.lambda(x, y), q.kind());
        EXPECT_TRUE(lhs.is_zero());
      }
    }
  }
}

TEST(QuadForms, MuOfBasisVectors) {
  const auto q = skew(6);
  for (std::size_t i = 1; i <= 2; ++i) {
    EXPECT_TRUE(q.mu(q.e(i)).is_zero());
    EXPECT_TRUE(q.mu(q.f(i)).is_zero());
  }
}

TEST(QuadForms, MuOfNormTarget) {
  for (std::size_t m : {3u, 5u}) {
    const auto q = skew(m);
    const RingVector x{E(m), E::one(m) + E::monomial(m, 1), E(m), E::norm_element(m)};
    EXPECT_TRUE(q.mu(x).is_zero());
  }
  for (std::size_t m : {2u, 4u, 6u}) {
    const auto q = skew(m);
    const auto half = param_reduce(E::monomial(m, static_cast<long long>(m / 2)), FormParameterKind::Tilde);
    const RingVector odd{E(m), E::constant(m, 2) - E::monomial(m, 1), E(m), E::norm_element(m)};
    EXPECT_EQ(q.mu(odd), half);
    const RingVector even{E(m), E::one(m) + E::monomial(m, 1), E(m), E::norm_element(m)};
    EXPECT_TRUE(q.mu(even).is_zero());
  }
}

TEST(QuadForms, Primitive) {
  const auto q = skew(4);
  EXPECT_TRUE(q.is_primitive(q.e(1)));
  EXPECT_FALSE(q.is_primitive(E::norm_element(4) * q.f(1)));
  const RingVector tail{E(4), E::one(4) + E::monomial(4, 1), E::norm_element(4), E::monomial(4, 2)};
  EXPECT_TRUE(q.is_primitive(tail));
  EXPECT_THROW((void)q.is_primitive(q.zero()), Error);
}

TEST(QuadForms, IsometryChecks) {
  const auto q = skew(4, 1);
  EXPECT_TRUE(q.is_isometry(RingMatrix::identity(4, 2)));
  const E z(4), one = E::one(4);
  EXPECT_FALSE(q.is_isometry(RingMatrix(4, {{z, one}, {one, z}})));
  EXPECT_TRUE(q.is_isometry(RingMatrix(4, {{z, -one}, {one, z}})));
  const auto p = sym(4, 1);
  EXPECT_TRUE(p.is_isometry(RingMatrix(4, {{z, one}, {one, z}})));
}

TEST(QuadForms, Transvections) {
  std::mt19937_64 rng(4);
  for (std::size_t m : {2u, 3u, 5u, 6u}) {
    for (int sign : {-1, 1}) {
      const QuadraticModule q(m, 2, sign, sign < 0 ? FormParameterKind::Tilde : FormParameterKind::Minus);
      EXPECT_EQ(q.transvection(TransvectionKind::EE, 1, 2, E(m)), RingMatrix::identity(m, 4));
      for (int i = 0; i < 5; ++i) {
        const E c = rand_el(rng, m);
        for (auto kind : {TransvectionKind::EE, TransvectionKind::EF, TransvectionKind::FE}) {
          const auto t = q.transvection(kind, 1, 2, c);
          EXPECT_TRUE(q.is_isometry(t));
          EXPECT_TRUE(oracle::isometry(t, sign, q.kind()));
          EXPECT_EQ(q.isometry_inverse(t) * t, RingMatrix::identity(m, 4));
        }
        EXPECT_EQ(q.transvection(TransvectionKind::EE, 1, 2, c), verify::displayed_r(c));
        EXPECT_EQ(q.transvection(TransvectionKind::EF, 1, 2, c), verify::signed_t(c, sign));
      }
    }
  }
  EXPECT_THROW((void)skew(3).transvection(TransvectionKind::EE, 1, 1, E::one(3)), Error);
}

TEST(QuadForms, DisplayedTNeedsSymmetricSign) {
  const E t = E::one(5) + E::monomial(5, 2);
  EXPECT_TRUE(sym(5).is_isometry(verify::displayed_t(t)));
  EXPECT_FALSE(skew(5).is_isometry(verify::displayed_t(t)));
  EXPECT_TRUE(skew(5).is_isometry(verify::displayed_r(t)));
}

TEST(QuadForms, Determinants) {
  EXPECT_EQ(ring_det(RingMatrix::identity(5, 4)), E::one(5));
  std::mt19937_64 rng(8);
  for (std::size_t m : {2u, 3u, 5u, 7u}) {
    for (int i = 0; i < 5; ++i) {
      std::vector<RingVector> cols;
      for (int c = 0; c < 3; ++c) cols.push_back(rand_vec(rng, m, 3));
      const auto a = RingMatrix::from_columns(cols);
      EXPECT_EQ(ring_det(a), oracle::leibniz_det(a));
    }
  }
  const NormData nd = ideal_normalize({E::constant(5, 2), E::one(5) - E::monomial(5, 1)});
  EXPECT_EQ(ring_det(verify::skew_complement_matrix(nd, E::monomial(5, 3))), E::one(5));
  const E a = E::one(4) + E::monomial(4, 3);
  EXPECT_EQ(ring_det(verify::symmetric_complement_matrix(a, E::monomial(4, 1), E::constant(4, 5))), E::one(4));
}

TEST(QuadForms, ComplementCertificate) {
  const std::size_t m = 5;
  const auto q = skew(m);
  const std::vector<RingVector> s{q.e(1), q.e(2) + E::norm_element(m) * q.f(1)};
  const auto good = check_lagrangian_complement(q, s, {q.f(1), q.f(2)});
  EXPECT_TRUE(good.passed) << good.failure;
  EXPECT_TRUE(oracle::check_complement(s, {q.f(1), q.f(2)}, -1, q.kind()).ok);

  const auto bad = check_lagrangian_complement(q, s, {q.e(2), q.f(2)});
  EXPECT_FALSE(bad.passed);
  EXPECT_FALSE(oracle::check_complement(s, {q.e(2), q.f(2)}, -1, q.kind()).ok);
  EXPECT_THROW((void)verify_lagrangian_complement(q, s, {q.e(2), q.f(2)}), Error);
}

TEST(QuadForms, ComplementRejectsMu) {
  const std::size_t m = 4;
  const auto q = skew(m);
  const std::vector<RingVector> s{q.e(1), q.e(2)};
  // e1 + g^2 f1 has mu [g^2] != 0
  const RingVector bad = q.f(1) + E::monomial(m, 2) * q.e(1);
  const auto cert = check_lagrangian_complement(q, s, {bad, q.f(2)});
  EXPECT_FALSE(cert.passed);
}
