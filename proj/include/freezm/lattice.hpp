#pragma once

// Integer lattices in Z^n kept in row-style Hermite normal form, plus the
// integer linear algebra built on top of them (exact solving, kernels,
// fraction-free determinants).

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "freezm/error.hpp"
#include "freezm/integer.hpp"

namespace freezm {

using IntMatrix = std::vector<IntVector>;  // row-major

namespace detail {

inline void axpy(IntVector& target, const Integer& factor, const IntVector& source) {
  if (factor == 0) {
    return;
  }
  for (std::size_t k = 0; k < target.size(); ++k) {
    if (source[k] != 0) {
      target[k] += factor * source[k];
    }
  }
}

inline void negate(IntVector& v) {
  for (auto& c : v) {
    c = -c;
  }
}

// Replaces (a, b) by (x*a + y*b, (pa/g)*b - (pb/g)*a) where (pa, pb) are the
// entries of a and b at `col`. The pair transform is unimodular.
inline void gcd_combine(IntVector& a, IntVector& b, std::size_t col) {
  const ExtendedGcd eg = extended_gcd(a[col], b[col]);
  const Integer fa = a[col] / eg.gcd;
  const Integer fb = b[col] / eg.gcd;
  for (std::size_t k = 0; k < a.size(); ++k) {
    Integer na = eg.x * a[k] + eg.y * b[k];
    Integer nb = fa * b[k] - fb * a[k];
    a[k] = std::move(na);
    b[k] = std::move(nb);
  }
}

}  // namespace detail

/// A sublattice of Z^n. The basis is the reduced row echelon (Hermite) form:
/// pivot columns strictly increase, pivots are positive and every entry
/// above a pivot lies in [0, pivot).
class Lattice {
 public:
  explicit Lattice(std::size_t dimension) : dim_(dimension) {}

  static Lattice spanned_by(std::size_t dimension, std::span<const IntVector> generators) {
    Lattice lattice(dimension);
    for (const auto& v : generators) {
      lattice.insert(v);
    }
    return lattice;
  }

  std::size_t dimension() const { return dim_; }
  std::size_t rank() const { return rows_.size(); }
  const std::vector<IntVector>& basis() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  void insert(IntVector v) {
    if (v.size() != dim_) {
      throw Error(ErrorKind::DimensionMismatch, "lattice vector has wrong length");
    }
    std::size_t i = 0;
    for (std::size_t col = 0; col < dim_; ++col) {
      if (v[col] == 0) {
        continue;
      }
      while (i < rows_.size() && pivots_[i] < col) {
        ++i;
      }
      if (i < rows_.size() && pivots_[i] == col) {
        IntVector& b = rows_[i];
        if (v[col] % b[col] == 0) {
          detail::axpy(v, -(v[col] / b[col]), b);
        } else {
          detail::gcd_combine(b, v, col);
        }
        continue;
      }
      if (v[col] < 0) {
        detail::negate(v);
      }
      rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(i), std::move(v));
      pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(i), col);
      break;
    }
    normalize();
  }

  /// Canonical representative of v + L: pivot coordinates land in [0, pivot).
  IntVector reduce(IntVector v) const {
    if (v.size() != dim_) {
      throw Error(ErrorKind::DimensionMismatch, "lattice vector has wrong length");
    }
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const std::size_t p = pivots_[i];
      if (v[p] == 0) {
        continue;
      }
      detail::axpy(v, -floor_div(v[p], rows_[i][p]), rows_[i]);
    }
    return v;
  }

  bool contains(const IntVector& v) const { return is_zero_vector(reduce(v)); }

  bool contains(const Lattice& other) const {
    return std::all_of(other.rows_.begin(), other.rows_.end(),
                       [this](const IntVector& row) { return contains(row); });
  }

  friend bool operator==(const Lattice& a, const Lattice& b) {
    return a.dim_ == b.dim_ && a.pivots_ == b.pivots_ && a.rows_ == b.rows_;
  }

 private:
  void normalize() {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const std::size_t p = pivots_[i];
      for (std::size_t j = 0; j < i; ++j) {
        if (rows_[j][p] == 0) {
          continue;
        }
        detail::axpy(rows_[j], -floor_div(rows_[j][p], rows_[i][p]), rows_[i]);
      }
    }
  }

  std::size_t dim_;
  std::vector<IntVector> rows_;
  std::vector<std::size_t> pivots_;
};

/// Row echelon form of a generator list together with the unimodular
/// transform that produced it: transform[i] expresses echelon row i (or a
/// kernel relation, for i >= rank) in terms of the original generators.
struct HermiteDecomposition {
  std::vector<IntVector> echelon;        // nonzero rows, Hermite-reduced
  std::vector<std::size_t> pivots;
  std::vector<IntVector> transform;      // one per echelon row
  std::vector<IntVector> kernel;         // relations: sum k_j * gen_j == 0
};

inline HermiteDecomposition hermite_decomposition(const std::vector<IntVector>& generators,
                                                  std::size_t dimension) {
  const std::size_t count = generators.size();
  std::vector<IntVector> rows = generators;
  std::vector<IntVector> trans(count, IntVector(count, 0));
  for (std::size_t i = 0; i < count; ++i) {
    if (rows[i].size() != dimension) {
      throw Error(ErrorKind::DimensionMismatch, "generator has wrong length");
    }
    trans[i][i] = 1;
  }

  // Both halves of each row are updated by the same operations, so keep
  // them concatenated while eliminating.
  std::vector<IntVector> joined(count);
  for (std::size_t i = 0; i < count; ++i) {
    joined[i] = rows[i];
    joined[i].insert(joined[i].end(), trans[i].begin(), trans[i].end());
  }

  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t col = 0; col < dimension && r < count; ++col) {
    for (std::size_t i = r + 1; i < count; ++i) {
      if (joined[i][col] == 0) {
        continue;
      }
      if (joined[r][col] == 0) {
        std::swap(joined[r], joined[i]);
        continue;
      }
      if (joined[i][col] % joined[r][col] == 0) {
        detail::axpy(joined[i], -(joined[i][col] / joined[r][col]), joined[r]);
      } else {
        detail::gcd_combine(joined[r], joined[i], col);
      }
    }
    if (joined[r][col] == 0) {
      continue;
    }
    if (joined[r][col] < 0) {
      detail::negate(joined[r]);
    }
    for (std::size_t j = 0; j < r; ++j) {
      if (joined[j][col] != 0) {
        detail::axpy(joined[j], -floor_div(joined[j][col], joined[r][col]), joined[r]);
      }
    }
    pivots.push_back(col);
    ++r;
  }

  HermiteDecomposition out;
  out.pivots = std::move(pivots);
  for (std::size_t i = 0; i < count; ++i) {
    IntVector lhs(joined[i].begin(), joined[i].begin() + static_cast<std::ptrdiff_t>(dimension));
    IntVector rhs(joined[i].begin() + static_cast<std::ptrdiff_t>(dimension), joined[i].end());
    if (i < r) {
      out.echelon.push_back(std::move(lhs));
      out.transform.push_back(std::move(rhs));
    } else {
      out.kernel.push_back(std::move(rhs));
    }
  }
  return out;
}

struct IntegerSolution {
  IntVector particular;
  Lattice kernel;  // all x with sum x_j * column_j == 0
};

/// Solves sum_j x_j * columns[j] == target over Z. Returns nullopt when no
/// integer solution exists.
inline std::optional<IntegerSolution> solve_integer_system(const std::vector<IntVector>& columns,
                                                           const IntVector& target) {
  const std::size_t dimension = target.size();
  const HermiteDecomposition h = hermite_decomposition(columns, dimension);
  IntVector rest = target;
  IntVector x(columns.size(), 0);
  for (std::size_t i = 0; i < h.echelon.size(); ++i) {
    const std::size_t p = h.pivots[i];
    if (rest[p] == 0) {
      continue;
    }
    if (rest[p] % h.echelon[i][p] != 0) {
      return std::nullopt;
    }
    const Integer q = rest[p] / h.echelon[i][p];
    detail::axpy(rest, -q, h.echelon[i]);
    detail::axpy(x, q, h.transform[i]);
  }
  if (!is_zero_vector(rest)) {
    return std::nullopt;
  }
  return IntegerSolution{std::move(x), Lattice::spanned_by(columns.size(), h.kernel)};
}

/// Fraction-free (Bareiss) determinant of a square integer matrix.
inline Integer integer_determinant(IntMatrix a) {
  const std::size_t n = a.size();
  if (n == 0) {
    return 1;
  }
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && a[swap_row][k] == 0) {
        ++swap_row;
      }
      if (swap_row == n) {
        return 0;
      }
      std::swap(a[k], a[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

}  // namespace freezm
