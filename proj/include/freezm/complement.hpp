#pragma once

// Lagrangian complements: U is a complement of S when lambda and mu vanish
// on U and S + U is the whole module, i.e. the coordinate matrix of the
// combined basis has unit determinant.

#include <optional>
#include <string>
#include <vector>

#include "freezm/error.hpp"
#include "freezm/quadratic_module.hpp"

namespace freezm {

struct ComplementCertificate {
  std::vector<RingVector> s_basis;
  std::vector<RingVector> u_basis;
  std::vector<std::vector<GroupRingElement>> gram;  // lambda(u_i, u_j)
  std::vector<ParameterClass> mu;                   // mu(u_i)
  RingMatrix basis_matrix;                          // columns: S then U
  GroupRingElement determinant;
  std::optional<GroupRingElement> determinant_inverse;
  bool passed = false;
  std::string failure;  // first failed condition, empty when passed
};

/// Collect the evidence; never throws on a failed condition.
inline ComplementCertificate check_lagrangian_complement(const QuadraticModule& q,
                                                         const std::vector<RingVector>& s,
                                                         const std::vector<RingVector>& u) {
  if (s.size() != q.rank() || u.size() != q.rank()) {
    throw Error(ErrorKind::DimensionMismatch, "S and U must each have r vectors");
  }
  for (const auto& x : s) q.check(x);
  for (const auto& x : u) q.check(x);

  std::vector<RingVector> columns = s;
  columns.insert(columns.end(), u.begin(), u.end());
  RingMatrix basis = RingMatrix::from_columns(columns);
  GroupRingElement det = ring_det(basis);

  ComplementCertificate cert{s, u, {}, {}, std::move(basis), std::move(det), std::nullopt, false, {}};

  bool gram_ok = true;
  for (const auto& x : u) {
    std::vector<GroupRingElement> row;
    for (const auto& y : u) {
      row.push_back(q.lambda(x, y));
      gram_ok = gram_ok && row.back().is_zero();
    }
    cert.gram.push_back(std::move(row));
  }
  bool mu_ok = true;
  for (const auto& x : u) {
    cert.mu.push_back(q.mu(x));
    mu_ok = mu_ok && cert.mu.back().is_zero();
  }
  cert.determinant_inverse = unit_inverse(cert.determinant);

  if (!gram_ok) {
    cert.failure = "lambda does not vanish on U";
  } else if (!mu_ok) {
    cert.failure = "mu does not vanish on U";
  } else if (!cert.determinant_inverse) {
    cert.failure = "determinant of S+U is not a unit";
  } else {
    cert.passed = true;
  }
  return cert;
}

/// As above, but a failed condition raises NotComplement.
inline ComplementCertificate verify_lagrangian_complement(const QuadraticModule& q,
                                                          const std::vector<RingVector>& s,
                                                          const std::vector<RingVector>& u) {
  ComplementCertificate cert = check_lagrangian_complement(q, s, u);
  if (!cert.passed) {
    throw Error(ErrorKind::NotComplement, cert.failure);
  }
  return cert;
}

}  // namespace freezm
