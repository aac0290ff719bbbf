#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace freezm {

using Integer = boost::multiprecision::cpp_int;
using IntVector = std::vector<Integer>;

/// Quotient rounded toward negative infinity. `b` must be nonzero.
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) {
    --q;
  }
  return q;
}

/// Remainder in [0, |b|).
inline Integer floor_mod(const Integer& a, const Integer& b) {
  Integer r = a % b;
  if (r < 0) {
    r += (b < 0 ? Integer(-b) : b);
  }
  return r;
}

struct ExtendedGcd {
  Integer gcd;  // always >= 0
  Integer x;
  Integer y;    // x*a + y*b == gcd
};

inline ExtendedGcd extended_gcd(const Integer& a, const Integer& b) {
  Integer old_r = a, r = b;
  Integer old_s = 1, s = 0;
  Integer old_t = 0, t = 1;
  while (r != 0) {
    Integer q = old_r / r;
    Integer tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) {
    return {-old_r, -old_s, -old_t};
  }
  return {old_r, old_s, old_t};
}

inline Integer gcd(const Integer& a, const Integer& b) { return extended_gcd(a, b).gcd; }

inline std::optional<std::int64_t> to_int64(const Integer& v) {
  if (v < std::numeric_limits<std::int64_t>::min() || v > std::numeric_limits<std::int64_t>::max()) {
    return std::nullopt;
  }
  return v.convert_to<std::int64_t>();
}

inline Integer squared_norm(const IntVector& v) {
  Integer total = 0;
  for (const auto& c : v) {
    total += c * c;
  }
  return total;
}

inline bool is_zero_vector(const IntVector& v) {
  for (const auto& c : v) {
    if (c != 0) {
      return false;
    }
  }
  return true;
}

}  // namespace freezm
