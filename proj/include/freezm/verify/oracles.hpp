#pragma once

// Slow reference implementations used to cross-check the library. Nothing
// here calls the algorithms it checks: multiplication folds a plain
// polynomial product, lattices are echelonized by repeated division by the
// smallest entry, determinants are Leibniz sums and parameter classes are
// compared through closed-form invariants.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "freezm/form_parameter.hpp"
#include "freezm/group_ring.hpp"
#include "freezm/integer.hpp"
#include "freezm/ring_matrix.hpp"

namespace freezm::oracle {

// ---- group ring ----

inline GroupRingElement fold_mul(const GroupRingElement& x, const GroupRingElement& y) {
  const std::size_t m = x.modulus();
  std::vector<Integer> poly(2 * m - 1, 0);
  for (std::size_t i = 0; i < m; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < m; ++j) {
      poly[i + j] += x[i] * y[j];
    }
  }
  IntVector c(m, 0);
  for (std::size_t k = 0; k < poly.size(); ++k) {
    c[k % m] += poly[k];
  }
  return GroupRingElement(m, std::move(c));
}

inline GroupRingElement conj(const GroupRingElement& x) {
  const std::size_t m = x.modulus();
  IntVector c(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    c[(m - i) % m] = x[i];
  }
  return GroupRingElement(m, std::move(c));
}

inline Integer aug(const GroupRingElement& x) {
  return std::accumulate(x.coefficients().begin(), x.coefficients().end(), Integer(0));
}

inline GroupRingElement norm(std::size_t m) { return GroupRingElement(m, IntVector(m, 1)); }

inline GroupRingElement shift(const GroupRingElement& x, std::size_t k) {
  const std::size_t m = x.modulus();
  IntVector c(m, 0);
  for (std::size_t i = 0; i < m; ++i) c[(i + k) % m] = x[i];
  return GroupRingElement(m, std::move(c));
}

// ---- lattices ----

/// Row echelon form by Euclid on the smallest entry of each column.
inline std::vector<IntVector> echelon(std::vector<IntVector> rows) {
  if (rows.empty()) return rows;
  const std::size_t n = rows.front().size();
  std::size_t top = 0;
  for (std::size_t col = 0; col < n && top < rows.size(); ++col) {
    for (;;) {
      std::size_t best = rows.size();
      for (std::size_t r = top; r < rows.size(); ++r) {
        if (rows[r][col] != 0 && (best == rows.size() || abs(rows[r][col]) < abs(rows[best][col]))) best = r;
      }
      if (best == rows.size()) break;
      std::swap(rows[top], rows[best]);
      bool others = false;
      for (std::size_t r = top + 1; r < rows.size(); ++r) {
        if (rows[r][col] == 0) continue;
        const Integer q = rows[r][col] / rows[top][col];  // truncation is fine here
        for (std::size_t k = col; k < n; ++k) rows[r][k] -= q * rows[top][k];
        others = others || rows[r][col] != 0;
      }
      if (!others) {
        ++top;
        break;
      }
    }
  }
  rows.resize(top);
  return rows;
}

inline bool echelon_contains(const std::vector<IntVector>& ech, IntVector target) {
  std::size_t col = 0;
  for (const auto& row : ech) {
    while (row[col] == 0) {
      if (target[col] != 0) return false;
      ++col;
    }
    if (target[col] % row[col] != 0) return false;
    const Integer q = target[col] / row[col];
    for (std::size_t k = col; k < target.size(); ++k) target[k] -= q * row[k];
    ++col;
  }
  return std::all_of(target.begin(), target.end(), [](const Integer& v) { return v == 0; });
}

inline bool lattice_contains(const std::vector<IntVector>& generators, const IntVector& target) {
  return echelon_contains(echelon(generators), target);
}

/// Z-spanning set of the ideal generated by `gens`.
inline std::vector<IntVector> ideal_rows(const std::vector<GroupRingElement>& gens) {
  std::vector<IntVector> rows;
  for (const auto& x : gens) {
    for (std::size_t k = 0; k < x.modulus(); ++k) rows.push_back(shift(x, k).coefficients());
  }
  return rows;
}

inline bool ideal_contains(const std::vector<GroupRingElement>& gens, const GroupRingElement& x) {
  return lattice_contains(ideal_rows(gens), x.coefficients());
}

inline bool same_ideal(const std::vector<GroupRingElement>& a, const std::vector<GroupRingElement>& b) {
  const auto ea = echelon(ideal_rows(a)), eb = echelon(ideal_rows(b));
  for (const auto& x : a)
    if (!echelon_contains(eb, x.coefficients())) return false;
  for (const auto& x : b)
    if (!echelon_contains(ea, x.coefficients())) return false;
  return true;
}

inline bool unit(const GroupRingElement& x) {
  IntVector one(x.modulus(), 0);
  one[0] = 1;
  return ideal_contains({x}, GroupRingElement(x.modulus(), std::move(one)));
}

// ---- determinants ----

inline GroupRingElement leibniz_det(const RingMatrix& a) {
  const std::size_t n = a.rows(), m = a.modulus();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  GroupRingElement total(m);
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    IntVector one(m, 0);
    one[0] = 1;
    GroupRingElement term(m, std::move(one));
    for (std::size_t i = 0; i < n && !term.is_zero(); ++i) term = fold_mul(term, a(i, perm[i]));
    total = inversions % 2 ? total - term : total + term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

inline Integer leibniz_det(const std::vector<std::vector<Integer>>& a) {
  const std::size_t n = a.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Integer total = 0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    Integer term = 1;
    for (std::size_t i = 0; i < n; ++i) term *= a[i][perm[i]];
    total += inversions % 2 ? -term : term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

// ---- form parameters ----

/// Two elements lie in the same class modulo the parameter iff these agree.
inline std::vector<Integer> class_invariants(const GroupRingElement& z, FormParameterKind kind) {
  const std::size_t m = z.modulus();
  std::vector<Integer> inv;
  auto mod2 = [](const Integer& v) { return Integer(((v % 2) + 2) % 2); };
  if (kind == FormParameterKind::Plus) inv.push_back(mod2(z[0]));
  if (kind == FormParameterKind::Minus) inv.push_back(z[0]);
  for (std::size_t i = 1; 2 * i < m; ++i) {
    inv.push_back(kind == FormParameterKind::Minus ? Integer(z[i] + z[m - i]) : Integer(z[i] - z[m - i]));
  }
  if (m % 2 == 0) {
    inv.push_back(kind == FormParameterKind::Minus ? z[m / 2] : mod2(z[m / 2]));
  }
  return inv;
}

inline bool in_parameter(const GroupRingElement& z, FormParameterKind kind) {
  const auto inv = class_invariants(z, kind);
  return std::all_of(inv.begin(), inv.end(), [](const Integer& v) { return v == 0; });
}

inline bool same_class(const GroupRingElement& a, const GroupRingElement& b, FormParameterKind kind) {
  return class_invariants(a, kind) == class_invariants(b, kind);
}

// ---- hyperbolic forms, coordinates (e_1..e_r, f_1..f_r) ----

inline GroupRingElement lambda(const RingVector& x, const RingVector& y, int sign) {
  const std::size_t r = x.size() / 2, m = x.modulus();
  GroupRingElement out(m);
  for (std::size_t i = 0; i < r; ++i) {
    out = out + fold_mul(x[i], conj(y[r + i]));
    const auto t = fold_mul(x[r + i], conj(y[i]));
    out = sign > 0 ? out + t : out - t;
  }
  return out;
}

inline GroupRingElement mu_lift(const RingVector& x) {
  const std::size_t r = x.size() / 2;
  GroupRingElement out(x.modulus());
  for (std::size_t i = 0; i < r; ++i) out = out + fold_mul(x[i], conj(x[r + i]));
  return out;
}

/// A J A^dagger == J with J = [[0, I], [sign I, 0]], and every column has
/// mu in the parameter.
inline bool isometry(const RingMatrix& a, int sign, FormParameterKind kind) {
  const std::size_t n = a.rows(), r = n / 2, m = a.modulus();
  if (a.cols() != n || n % 2) return false;
  auto j_entry = [&](std::size_t i, std::size_t k) -> Integer {
    if (i < r && k == i + r) return 1;
    if (i >= r && k == i - r) return sign;
    return 0;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      GroupRingElement sum(m);
      for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = 0; q < n; ++q) {
          const Integer jj = j_entry(p, q);
          if (jj != 0) sum = sum + GroupRingElement::constant(m, jj) * fold_mul(a(i, p), conj(a(k, q)));
        }
      }
      if (sum != GroupRingElement::constant(m, j_entry(i, k))) return false;
    }
  }
  for (std::size_t c = 0; c < n; ++c) {
    if (!in_parameter(mu_lift(a.column(c)), kind)) return false;
  }
  return true;
}

struct ComplementVerdict {
  bool ok = false;
  std::string reason;
};

/// U is a Lagrangian complement of S: lambda and mu vanish on U, and
/// (S | U) has unit determinant.
inline ComplementVerdict check_complement(const std::vector<RingVector>& s, const std::vector<RingVector>& u,
                                          int sign, FormParameterKind kind) {
  if (s.empty() || s.size() != u.size() || s.front().size() != 2 * s.size()) {
    return {false, "shape"};
  }
  for (const auto& x : u) {
    for (const auto& y : u) {
      if (!lambda(x, y, sign).is_zero()) return {false, "lambda on U"};
    }
    if (!in_parameter(mu_lift(x), kind)) return {false, "mu on U"};
  }
  std::vector<RingVector> cols = s;
  cols.insert(cols.end(), u.begin(), u.end());
  const RingMatrix basis = RingMatrix::from_columns(cols);
  if (!unit(leibniz_det(basis))) return {false, "determinant"};
  return {true, {}};
}

// ---- cohomology of K(Z/m, 1) with Z/2 coefficients ----

inline int binomial_mod2(unsigned n, unsigned k) { return k <= n && (k & ~n) == 0 ? 1 : 0; }

/// Sq^k of the monomial x^i y^j as a list of (x, y) exponents, by the closed
/// forms Sq^k x^n = C(n,k) x^(n+k) (polynomial case) and
/// Sq^k(x^e y^j) = C(j, k/2) x^e y^(j+k/2) for even k, 0 for odd k
/// (truncated case, e in {0,1}).
inline std::vector<std::pair<unsigned, unsigned>> square_monomial(bool truncated, unsigned i, unsigned j,
                                                                  unsigned k) {
  if (!truncated) {
    if (binomial_mod2(i, k)) return {{i + k, 0}};
    return {};
  }
  if (k % 2) return {};
  if (binomial_mod2(j, k / 2)) return {{i, j + k / 2}};
  return {};
}

// ---- census ----

inline bool divides_by_search(std::int64_t m, std::int64_t value) {
  // look for q with q*m == value
  const std::int64_t bound = value < 0 ? -value : value;
  for (std::int64_t q = -bound; q <= bound; ++q) {
    if (q * m == value) return true;
  }
  return false;
}

}  // namespace freezm::oracle
