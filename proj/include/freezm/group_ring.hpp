#pragma once

// The integral group ring of the cyclic group of order m. Elements are dense
// coefficient vectors: coefficient i belongs to gen^i.

#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "freezm/error.hpp"
#include "freezm/integer.hpp"
#include "freezm/lattice.hpp"

namespace freezm {

class GroupRingElement {
 public:
  explicit GroupRingElement(std::size_t modulus) : coeffs_(check_modulus(modulus), 0) {}

  GroupRingElement(std::size_t modulus, IntVector coeffs) : coeffs_(std::move(coeffs)) {
    check_modulus(modulus);
    if (coeffs_.size() != modulus) {
      throw Error(ErrorKind::DimensionMismatch,
                  "expected " + std::to_string(modulus) + " coefficients, got " +
                      std::to_string(coeffs_.size()));
    }
  }

  static GroupRingElement zero(std::size_t m) { return GroupRingElement(m); }

  static GroupRingElement constant(std::size_t m, const Integer& c) {
    GroupRingElement x(m);
    x.coeffs_[0] = c;
    return x;
  }

  static GroupRingElement one(std::size_t m) { return constant(m, 1); }

  /// c * gen^k for any integer exponent k.
  static GroupRingElement monomial(std::size_t m, long long k, const Integer& c = 1) {
    GroupRingElement x(m);
    x.coeffs_[wrap(k, m)] = c;
    return x;
  }

  /// The norm element 1 + gen + ... + gen^(m-1).
  static GroupRingElement norm_element(std::size_t m) {
    return GroupRingElement(m, IntVector(check_modulus(m), 1));
  }

  /// 1 + gen + ... + gen^(len-1), exponents taken mod m.
  static GroupRingElement geometric_sum(std::size_t m, const Integer& len) {
    GroupRingElement x(m);
    if (len <= 0) {
      return x;
    }
    const Integer full = len / m;
    const auto partial = static_cast<std::size_t>(len % m);
    for (std::size_t i = 0; i < m; ++i) {
      x.coeffs_[i] = full + (i < partial ? 1 : 0);
    }
    return x;
  }

  std::size_t modulus() const { return coeffs_.size(); }
  const IntVector& coefficients() const { return coeffs_; }
  const Integer& operator[](std::size_t i) const { return coeffs_[i]; }
  bool is_zero() const { return is_zero_vector(coeffs_); }

  GroupRingElement& operator+=(const GroupRingElement& o) {
    same_modulus(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      coeffs_[i] += o.coeffs_[i];
    }
    return *this;
  }

  GroupRingElement& operator-=(const GroupRingElement& o) {
    same_modulus(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      coeffs_[i] -= o.coeffs_[i];
    }
    return *this;
  }

  GroupRingElement& operator*=(const Integer& c) {
    for (auto& v : coeffs_) {
      v *= c;
    }
    return *this;
  }

  GroupRingElement operator-() const {
    GroupRingElement r = *this;
    r *= -1;
    return r;
  }

  friend GroupRingElement operator+(GroupRingElement a, const GroupRingElement& b) { return a += b; }
  friend GroupRingElement operator-(GroupRingElement a, const GroupRingElement& b) { return a -= b; }
  friend GroupRingElement operator*(GroupRingElement a, const Integer& c) { return a *= c; }
  friend GroupRingElement operator*(const Integer& c, GroupRingElement a) { return a *= c; }
  friend GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b);

  friend bool operator==(const GroupRingElement&, const GroupRingElement&) = default;

  void same_modulus(const GroupRingElement& o) const {
    if (o.modulus() != modulus()) {
      throw Error(ErrorKind::ModulusMismatch, "moduli " + std::to_string(modulus()) + " and " +
                                                  std::to_string(o.modulus()) + " differ");
    }
  }

  static std::size_t wrap(long long k, std::size_t m) {
    const auto mm = static_cast<long long>(m);
    return static_cast<std::size_t>(((k % mm) + mm) % mm);
  }

 private:
  static std::size_t check_modulus(std::size_t m) {
    if (m < 2) {
      throw Error(ErrorKind::InvalidArgument, "modulus must be at least 2");
    }
    return m;
  }

  IntVector coeffs_;
};

/// Cyclic convolution.
inline GroupRingElement ring_mul(const GroupRingElement& x, const GroupRingElement& y) {
  x.same_modulus(y);
  const std::size_t m = x.modulus();
  IntVector out(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    if (x[i] == 0) {
      continue;
    }
    for (std::size_t j = 0; j < m; ++j) {
      if (y[j] == 0) {
        continue;
      }
      std::size_t k = i + j;
      if (k >= m) {
        k -= m;
      }
      out[k] += x[i] * y[j];
    }
  }
  return GroupRingElement(m, std::move(out));
}

inline GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b) {
  return ring_mul(a, b);
}

/// gen -> gen^-1, extended linearly.
inline GroupRingElement involution(const GroupRingElement& x) {
  const std::size_t m = x.modulus();
  IntVector out(m);
  for (std::size_t i = 0; i < m; ++i) {
    out[(m - i) % m] = x[i];
  }
  return GroupRingElement(m, std::move(out));
}

inline Integer augmentation(const GroupRingElement& x) {
  Integer total = 0;
  for (const auto& c : x.coefficients()) {
    total += c;
  }
  return total;
}

inline int augmentation_mod2(const GroupRingElement& x) {
  return static_cast<int>(floor_mod(augmentation(x), 2));
}

/// Column j is the coefficient vector of d * gen^j.
inline std::vector<IntVector> multiplication_columns(const GroupRingElement& d) {
  const std::size_t m = d.modulus();
  std::vector<IntVector> cols(m, IntVector(m));
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < m; ++i) {
      cols[j][(i + j) % m] = d[i];
    }
  }
  return cols;
}

inline IntMatrix multiplication_matrix(const GroupRingElement& d) {
  const std::size_t m = d.modulus();
  const auto cols = multiplication_columns(d);
  IntMatrix rows(m, IntVector(m));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      rows[i][j] = cols[j][i];
    }
  }
  return rows;
}

struct DivisionResult {
  GroupRingElement quotient;
  bool ambiguous = false;  // divisor is a zero divisor; quotient is the canonical choice
};

namespace detail {

// Coset representative of p + K: Hermite-reduce, then walk down in
// Euclidean norm along the kernel basis until no single step helps.
inline IntVector canonical_coset_point(const IntVector& p, const Lattice& kernel) {
  IntVector r = kernel.reduce(p);
  Integer best = squared_norm(r);
  bool improved = true;
  while (improved) {
    improved = false;
    for (const auto& b : kernel.basis()) {
      for (int sign : {1, -1}) {
        IntVector candidate = r;
        axpy(candidate, sign, b);
        Integer n = squared_norm(candidate);
        if (n < best) {
          best = std::move(n);
          r = std::move(candidate);
          improved = true;
        }
      }
    }
  }
  return r;
}

}  // namespace detail

/// Returns q with d * q == x. When d is a zero divisor the solution is not
/// unique; the canonical one is reported and `ambiguous` is set.
inline DivisionResult exact_divide(const GroupRingElement& x, const GroupRingElement& d) {
  x.same_modulus(d);
  if (d.is_zero()) {
    throw Error(ErrorKind::NotDivisible, "division by zero");
  }
  const std::size_t m = x.modulus();
  auto solution = solve_integer_system(multiplication_columns(d), x.coefficients());
  if (!solution) {
    throw Error(ErrorKind::NotDivisible, "dividend is not in the principal ideal of the divisor");
  }
  if (solution->kernel.rank() == 0) {
    return {GroupRingElement(m, std::move(solution->particular)), false};
  }
  return {GroupRingElement(m, detail::canonical_coset_point(solution->particular, solution->kernel)),
          true};
}

/// Inverse of x when x is a unit, i.e. its multiplication matrix has
/// determinant +-1.
inline std::optional<GroupRingElement> unit_inverse(const GroupRingElement& x) {
  const Integer det = integer_determinant(multiplication_matrix(x));
  if (det != 1 && det != -1) {
    return std::nullopt;
  }
  return exact_divide(GroupRingElement::one(x.modulus()), x).quotient;
}

inline bool is_unit(const GroupRingElement& x) {
  const Integer det = integer_determinant(multiplication_matrix(x));
  return det == 1 || det == -1;
}

inline std::ostream& operator<<(std::ostream& os, const GroupRingElement& x) {
  bool first = true;
  for (std::size_t i = 0; i < x.modulus(); ++i) {
    const Integer& c = x[i];
    if (c == 0) {
      continue;
    }
    if (!first) {
      os << (c < 0 ? " - " : " + ");
    } else if (c < 0) {
      os << "-";
    }
    const Integer a = c < 0 ? Integer(-c) : c;
    if (i == 0) {
      os << a;
    } else {
      if (a != 1) {
        os << a << "*";
      }
      os << "g";
      if (i != 1) {
        os << "^" << i;
      }
    }
    first = false;
  }
  if (first) {
    os << "0";
  }
  return os;
}

}  // namespace freezm
