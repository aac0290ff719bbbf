#pragma once

// Based hyperbolic forms H^r_eps over the group ring with a quadratic
// refinement valued in a form-parameter quotient.
//
// Coordinates: x = sum a_i e_i + b_i f_i is stored as (a_1..a_r, b_1..b_r).
//   lambda(x, y) = sum a_i conj(d_i) + eps * b_i conj(c_i)
//   mu(x)        = [sum a_i conj(b_i)]
// so lambda(e_i, f_i) = 1, lambda(f_i, e_i) = eps, and the Gram matrix is
// G = [[0, I], [eps I, 0]] with lambda(x, y) = x^T G conj(y).
//
// Matrices act on coordinate columns; column j of M is the image of basis
// vector j. Labels e(i), f(i) and transvection indices are 1-based.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "freezm/error.hpp"
#include "freezm/form_parameter.hpp"
#include "freezm/group_ring.hpp"
#include "freezm/lattice.hpp"
#include "freezm/ring_matrix.hpp"

namespace freezm {

enum class TransvectionKind {
  EE,  // e_j -> e_j + c e_i,  f_i -> f_i - conj(c) f_j           (i != j)
  EF,  // f_j -> f_j + c e_i,  f_i -> f_i - eps conj(c) e_j
  FE,  // e_j -> e_j + c f_i,  e_i -> e_i - eps conj(c) f_j
};

inline std::string_view to_string(TransvectionKind k) {
  switch (k) {
    case TransvectionKind::EE: return "EE";
    case TransvectionKind::EF: return "EF";
    case TransvectionKind::FE: return "FE";
  }
  return "?";
}

inline TransvectionKind parse_transvection_kind(std::string_view text) {
  if (text == "EE" || text == "ee") return TransvectionKind::EE;
  if (text == "EF" || text == "ef") return TransvectionKind::EF;
  if (text == "FE" || text == "fe") return TransvectionKind::FE;
  throw Error(ErrorKind::InvalidArgument, "unknown transvection kind '" + std::string(text) + "'");
}

class QuadraticModule {
 public:
  QuadraticModule(std::size_t m, std::size_t rank, int sign, FormParameterKind kind)
      : m_(m), rank_(rank), sign_(sign), param_(m, kind) {
    if (rank == 0) {
      throw Error(ErrorKind::InvalidArgument, "rank must be positive");
    }
    if (sign != 1 && sign != -1) {
      throw Error(ErrorKind::InvalidArgument, "sign must be +1 or -1");
    }
    // mu(x+y) - mu(x) - mu(y) differs from [lambda(x,y)] by z - eps*conj(z),
    // which has to die in the quotient.
    const bool ok = (sign == -1) ? kind != FormParameterKind::Minus : kind == FormParameterKind::Minus;
    if (!ok) {
      throw Error(ErrorKind::InvalidArgument,
                  std::string("form parameter ") + std::string(to_string(kind)) +
                      " is not compatible with sign " + std::to_string(sign));
    }
  }

  std::size_t modulus() const { return m_; }
  std::size_t rank() const { return rank_; }
  std::size_t dimension() const { return 2 * rank_; }
  int sign() const { return sign_; }
  FormParameterKind kind() const { return param_.kind(); }
  const FormParameter& parameter() const { return param_; }

  RingVector zero() const { return RingVector(m_, dimension()); }

  RingVector e(std::size_t i) const { return unit(index_e(i)); }
  RingVector f(std::size_t i) const { return unit(index_f(i)); }

  /// Build a vector from its e- and f-coefficients.
  RingVector vector(const std::vector<GroupRingElement>& e_coeffs,
                    const std::vector<GroupRingElement>& f_coeffs) const {
    if (e_coeffs.size() != rank_ || f_coeffs.size() != rank_) {
      throw Error(ErrorKind::DimensionMismatch, "coefficient lists must have length r");
    }
    std::vector<GroupRingElement> all = e_coeffs;
    all.insert(all.end(), f_coeffs.begin(), f_coeffs.end());
    RingVector x(std::move(all));
    check(x);
    return x;
  }

  RingMatrix gram() const {
    RingMatrix g(m_, dimension(), dimension());
    for (std::size_t i = 0; i < rank_; ++i) {
      g(i, rank_ + i) = GroupRingElement::one(m_);
      g(rank_ + i, i) = GroupRingElement::constant(m_, sign_);
    }
    return g;
  }

  GroupRingElement lambda(const RingVector& x, const RingVector& y) const {
    check(x);
    check(y);
    GroupRingElement out(m_);
    for (std::size_t i = 0; i < rank_; ++i) {
      out += x[i] * involution(y[rank_ + i]);
      const GroupRingElement t = x[rank_ + i] * involution(y[i]);
      if (sign_ == 1) {
        out += t;
      } else {
        out -= t;
      }
    }
    return out;
  }

  /// A lift of mu(x) to the ring, before reduction.
  GroupRingElement mu_lift(const RingVector& x) const {
    check(x);
    GroupRingElement out(m_);
    for (std::size_t i = 0; i < rank_; ++i) {
      out += x[i] * involution(x[rank_ + i]);
    }
    return out;
  }

  ParameterClass mu(const RingVector& x) const { return param_.reduce(mu_lift(x)); }

  /// The coordinates generate the unit ideal.
  bool is_primitive(const RingVector& x) const {
    check(x);
    if (x.is_zero()) {
      throw Error(ErrorKind::ZeroVector, "primitivity of the zero vector");
    }
    Lattice lattice(m_);
    for (const auto& c : x.coords()) {
      if (c.is_zero()) {
        continue;
      }
      for (std::size_t j = 0; j < m_; ++j) {
        lattice.insert((c * GroupRingElement::monomial(m_, static_cast<long long>(j))).coefficients());
      }
    }
    return lattice.contains(GroupRingElement::one(m_).coefficients());
  }

  /// M G M^dagger == G.
  bool preserves_unitary_relation(const RingMatrix& mat) const {
    check(mat);
    const RingMatrix g = gram();
    return mat * g * mat.conjugate_transpose() == g;
  }

  /// lambda(Mx, My) == lambda(x, y) for all x, y, i.e. M^T G conj(M) == G.
  bool preserves_lambda(const RingMatrix& mat) const {
    check(mat);
    const RingMatrix g = gram();
    return mat.transpose() * g * mat.conjugate() == g;
  }

  bool is_isometry(const RingMatrix& mat) const {
    if (!preserves_unitary_relation(mat)) {
      return false;
    }
    for (std::size_t j = 0; j < dimension(); ++j) {
      if (!mu(mat.column(j)).is_zero()) {
        return false;
      }
    }
    return true;
  }

  /// Inverse of an isometry: G^-1 M^dagger G, with G^-1 = eps G.
  RingMatrix isometry_inverse(const RingMatrix& mat) const {
    check(mat);
    const RingMatrix g = gram();
    RingMatrix out = g * mat.conjugate_transpose() * g;
    if (sign_ == -1) {
      for (std::size_t i = 0; i < out.rows(); ++i) {
        for (std::size_t j = 0; j < out.cols(); ++j) {
          out(i, j) = -out(i, j);
        }
      }
    }
    return out;
  }

  RingMatrix transvection(TransvectionKind kind, std::size_t i, std::size_t j,
                          const GroupRingElement& c) const {
    if (c.modulus() != m_) {
      throw Error(ErrorKind::ModulusMismatch, "transvection parameter has wrong modulus");
    }
    const std::size_t ei = index_e(i), ej = index_e(j);
    const std::size_t fi = index_f(i), fj = index_f(j);
    const GroupRingElement cbar = involution(c);
    const GroupRingElement eps_cbar = sign_ == 1 ? cbar : -cbar;
    RingMatrix t = RingMatrix::identity(m_, dimension());
    switch (kind) {
      case TransvectionKind::EE:
        if (i == j) {
          throw Error(ErrorKind::BadIndex, "EE transvection needs two distinct indices");
        }
        t(ei, ej) += c;     // column e_j gains c e_i
        t(fj, fi) -= cbar;  // column f_i gains -conj(c) f_j
        break;
      case TransvectionKind::EF:
        t(ei, fj) += c;
        t(ej, fi) -= eps_cbar;
        break;
      case TransvectionKind::FE:
        t(fi, ej) += c;
        t(fj, ei) -= eps_cbar;
        break;
    }
    return t;
  }

  void check(const RingVector& x) const {
    if (x.size() != dimension()) {
      throw Error(ErrorKind::DimensionMismatch, "vector length " + std::to_string(x.size()) +
                                                    " does not match 2r = " +
                                                    std::to_string(dimension()));
    }
    if (x.modulus() != m_) {
      throw Error(ErrorKind::ModulusMismatch, "vector modulus differs from module modulus");
    }
  }

  void check(const RingMatrix& mat) const {
    if (mat.rows() != dimension() || mat.cols() != dimension()) {
      throw Error(ErrorKind::DimensionMismatch, "matrix must be 2r x 2r");
    }
    if (mat.modulus() != m_) {
      throw Error(ErrorKind::ModulusMismatch, "matrix modulus differs from module modulus");
    }
  }

  std::size_t index_e(std::size_t i) const {
    if (i < 1 || i > rank_) {
      throw Error(ErrorKind::BadIndex, "basis index " + std::to_string(i) + " out of range");
    }
    return i - 1;
  }

  std::size_t index_f(std::size_t i) const { return rank_ + index_e(i); }

 private:
  RingVector unit(std::size_t k) const {
    RingVector x = zero();
    x[k] = GroupRingElement::one(m_);
    return x;
  }

  std::size_t m_;
  std::size_t rank_;
  int sign_;
  FormParameter param_;
};

// Free-function spellings of the module operations.

inline GroupRingElement lambda_eval(const QuadraticModule& q, const RingVector& x, const RingVector& y) {
  return q.lambda(x, y);
}

inline ParameterClass mu_eval(const QuadraticModule& q, const RingVector& x) { return q.mu(x); }

inline bool is_primitive(const QuadraticModule& q, const RingVector& x) { return q.is_primitive(x); }

inline bool isometry_check(const QuadraticModule& q, const RingMatrix& mat) { return q.is_isometry(mat); }

inline RingMatrix transvection(const QuadraticModule& q, TransvectionKind kind, std::size_t i,
                               std::size_t j, const GroupRingElement& c) {
  return q.transvection(kind, i, j, c);
}

/// Embed a 2x2 matrix on span(e_k, f_k) into the identity of the full module.
inline RingMatrix embed_block(const QuadraticModule& q, std::size_t k, const RingMatrix& block) {
  if (block.rows() != 2 || block.cols() != 2) {
    throw Error(ErrorKind::DimensionMismatch, "block must be 2x2");
  }
  const std::size_t idx[2] = {q.index_e(k), q.index_f(k)};
  RingMatrix out = RingMatrix::identity(q.modulus(), q.dimension());
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t b = 0; b < 2; ++b) {
      out(idx[a], idx[b]) = block(a, b);
    }
  }
  return out;
}

}  // namespace freezm
