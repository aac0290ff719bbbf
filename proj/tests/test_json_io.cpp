#include <gtest/gtest.h>

#include "freezm/freezm.hpp"
#include "freezm/json_io.hpp"

using namespace freezm;
using nlohmann::json;

TEST(JsonIo, ElementRoundTrip) {
  const GroupRingElement x(4, IntVector{1, -2, 0, 7});
  const json j = io::encode(x);
  EXPECT_EQ(j["m"], 4);
  EXPECT_EQ(io::decode_element(j), x);
  EXPECT_EQ(io::decode_element(json({1, -2, 0, 7}), 4), x);
  EXPECT_THROW(io::decode_element(j, 5), Error);
}

TEST(JsonIo, BigIntegers) {
  const Integer big("123456789012345678901234567890");
  const json j = io::encode(big);
  EXPECT_TRUE(j.is_string());
  EXPECT_EQ(io::decode_integer(j), big);
  EXPECT_EQ(io::decode_integer(json(-5)), -5);
}

TEST(JsonIo, MatrixRoundTrip) {
  const QuadraticModule q(3, 2, -1, FormParameterKind::Tilde);
  const auto t = q.transvection(TransvectionKind::EF, 1, 2, GroupRingElement::monomial(3, 1));
  EXPECT_EQ(io::decode_matrix(io::encode(t), 3), t);
}

TEST(JsonIo, Errors) {
  const json j = io::encode_error(Error(ErrorKind::NotDivisible, "no"));
  EXPECT_EQ(j["error"]["kind"], "NotDivisible");
}

TEST(JsonIo, SpecRoundTrip) {
  const EmbeddingSpec spec{5, Branch::OddMSkew, GroupRingElement(5), GroupRingElement::one(5),
                           GroupRingElement::norm_element(5)};
  const auto back = io::decode_spec(io::encode(spec), 5, Branch::OddMSkew);
  EXPECT_EQ(back.a2, spec.a2);
  EXPECT_EQ(back.b2, spec.b2);
}
