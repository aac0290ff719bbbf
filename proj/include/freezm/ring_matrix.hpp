#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "freezm/error.hpp"
#include "freezm/group_ring.hpp"

namespace freezm {

/// Coordinates over the group ring; for a hyperbolic module of rank r the
/// order is (e_1..e_r, f_1..f_r).
class RingVector {
 public:
  RingVector(std::size_t m, std::size_t length) : coords_(length, GroupRingElement(m)) {}

  explicit RingVector(std::vector<GroupRingElement> coords) : coords_(std::move(coords)) {
    if (coords_.empty()) {
      throw Error(ErrorKind::DimensionMismatch, "empty vector");
    }
    for (const auto& c : coords_) {
      coords_.front().same_modulus(c);
    }
  }

  RingVector(std::initializer_list<GroupRingElement> coords)
      : RingVector(std::vector<GroupRingElement>(coords)) {}

  std::size_t size() const { return coords_.size(); }
  std::size_t modulus() const { return coords_.front().modulus(); }
  const GroupRingElement& operator[](std::size_t i) const { return coords_[i]; }
  GroupRingElement& operator[](std::size_t i) { return coords_[i]; }
  const std::vector<GroupRingElement>& coords() const { return coords_; }

  bool is_zero() const {
    for (const auto& c : coords_) {
      if (!c.is_zero()) {
        return false;
      }
    }
    return true;
  }

  RingVector& operator+=(const RingVector& o) {
    same_shape(o);
    for (std::size_t i = 0; i < size(); ++i) {
      coords_[i] += o.coords_[i];
    }
    return *this;
  }

  RingVector& operator-=(const RingVector& o) {
    same_shape(o);
    for (std::size_t i = 0; i < size(); ++i) {
      coords_[i] -= o.coords_[i];
    }
    return *this;
  }

  friend RingVector operator+(RingVector a, const RingVector& b) { return a += b; }
  friend RingVector operator-(RingVector a, const RingVector& b) { return a -= b; }

  /// Left scalar multiple c * x.
  friend RingVector operator*(const GroupRingElement& c, const RingVector& x) {
    RingVector out = x;
    for (auto& v : out.coords_) {
      v = c * v;
    }
    return out;
  }

  friend bool operator==(const RingVector&, const RingVector&) = default;

  void same_shape(const RingVector& o) const {
    if (o.size() != size()) {
      throw Error(ErrorKind::DimensionMismatch, "vector lengths differ");
    }
    coords_.front().same_modulus(o.coords_.front());
  }

 private:
  std::vector<GroupRingElement> coords_;
};

class RingMatrix {
 public:
  RingMatrix(std::size_t m, std::size_t rows, std::size_t cols)
      : m_(m), rows_(rows), cols_(cols), data_(rows * cols, GroupRingElement(m)) {}

  RingMatrix(std::size_t m, std::initializer_list<std::initializer_list<GroupRingElement>> rows)
      : m_(m), rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
    for (const auto& row : rows) {
      if (row.size() != cols_) {
        throw Error(ErrorKind::DimensionMismatch, "ragged matrix");
      }
      for (const auto& x : row) {
        if (x.modulus() != m_) {
          throw Error(ErrorKind::ModulusMismatch, "matrix entry has wrong modulus");
        }
        data_.push_back(x);
      }
    }
  }

  static RingMatrix identity(std::size_t m, std::size_t n) {
    RingMatrix out(m, n, n);
    for (std::size_t i = 0; i < n; ++i) {
      out(i, i) = GroupRingElement::one(m);
    }
    return out;
  }

  /// Matrix whose j-th column is columns[j].
  static RingMatrix from_columns(const std::vector<RingVector>& columns) {
    if (columns.empty()) {
      throw Error(ErrorKind::DimensionMismatch, "no columns");
    }
    const std::size_t n = columns.front().size();
    RingMatrix out(columns.front().modulus(), n, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (columns[j].size() != n) {
        throw Error(ErrorKind::DimensionMismatch, "columns of different lengths");
      }
      for (std::size_t i = 0; i < n; ++i) {
        out(i, j) = columns[j][i];
      }
    }
    return out;
  }

  std::size_t modulus() const { return m_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  GroupRingElement& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const GroupRingElement& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  RingVector column(std::size_t j) const {
    std::vector<GroupRingElement> out;
    out.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      out.push_back((*this)(i, j));
    }
    return RingVector(std::move(out));
  }

  RingMatrix transpose() const {
    RingMatrix out(m_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) {
        out(j, i) = (*this)(i, j);
      }
    }
    return out;
  }

  /// Entrywise involution.
  RingMatrix conjugate() const {
    RingMatrix out = *this;
    for (auto& x : out.data_) {
      x = involution(x);
    }
    return out;
  }

  RingMatrix conjugate_transpose() const { return transpose().conjugate(); }

  friend RingMatrix operator*(const RingMatrix& a, const RingMatrix& b) {
    if (a.cols_ != b.rows_) {
      throw Error(ErrorKind::DimensionMismatch, "matrix product shapes do not match");
    }
    RingMatrix out(a.m_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const auto& aik = a(i, k);
        if (aik.is_zero()) {
          continue;
        }
        for (std::size_t j = 0; j < b.cols_; ++j) {
          out(i, j) += aik * b(k, j);
        }
      }
    }
    return out;
  }

  friend RingVector operator*(const RingMatrix& a, const RingVector& x) {
    if (a.cols_ != x.size()) {
      throw Error(ErrorKind::DimensionMismatch, "matrix-vector shapes do not match");
    }
    RingVector out(a.m_, a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        out[i] += a(i, k) * x[k];
      }
    }
    return out;
  }

  friend bool operator==(const RingMatrix&, const RingMatrix&) = default;

 private:
  std::size_t m_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<GroupRingElement> data_;
};

/// Determinant over the commutative group ring by Laplace expansion along
/// rows with memoized minors: minor[S] is the determinant of the first
/// |S| rows restricted to the column set S. No division is performed, so
/// zero divisors are harmless. Cost is O(n * 2^n) ring products.
inline GroupRingElement ring_det(const RingMatrix& a) {
  if (!a.square()) {
    throw Error(ErrorKind::DimensionMismatch, "determinant of a non-square matrix");
  }
  const std::size_t n = a.rows();
  const std::size_t m = a.modulus();
  if (n == 0) {
    return GroupRingElement::one(m);
  }
  if (n > 20) {
    throw Error(ErrorKind::DimensionMismatch, "matrix too large for minor expansion");
  }
  const std::uint32_t full = (std::uint32_t{1} << n) - 1;
  std::vector<GroupRingElement> minor(std::size_t{1} << n, GroupRingElement(m));
  minor[0] = GroupRingElement::one(m);
  for (std::uint32_t set = 1; set <= full; ++set) {
    const auto k = static_cast<std::size_t>(std::popcount(set));
    const std::size_t row = k - 1;
    GroupRingElement acc(m);
    std::size_t position = 0;  // index of column j within `set`
    for (std::size_t j = 0; j < n; ++j) {
      if (!(set & (std::uint32_t{1} << j))) {
        continue;
      }
      const auto& entry = a(row, j);
      const auto& sub = minor[set & ~(std::uint32_t{1} << j)];
      if (!entry.is_zero() && !sub.is_zero()) {
        // Expanding along the last row of the leading k x k block: the
        // cofactor sign is (-1)^((k-1) + position).
        const GroupRingElement term = entry * sub;
        if ((row + position) % 2 == 0) {
          acc += term;
        } else {
          acc -= term;
        }
      }
      ++position;
    }
    minor[set] = std::move(acc);
  }
  return minor[full];
}

}  // namespace freezm
