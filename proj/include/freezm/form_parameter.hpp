#pragma once

// Quotients of the group ring by a form parameter, the value groups of
// quadratic refinements:
//   Tilde  = <1, x + xbar>
//   Plus   = <x + xbar>
//   Minus  = <x - xbar>

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "freezm/error.hpp"
#include "freezm/group_ring.hpp"
#include "freezm/lattice.hpp"

namespace freezm {

enum class FormParameterKind { Tilde, Plus, Minus };

constexpr std::string_view to_string(FormParameterKind kind) {
  switch (kind) {
    case FormParameterKind::Tilde: return "TILDE";
    case FormParameterKind::Plus: return "PLUS";
    case FormParameterKind::Minus: return "MINUS";
  }
  return "?";
}

inline FormParameterKind parse_form_parameter_kind(std::string_view text) {
  if (text == "TILDE" || text == "tilde") return FormParameterKind::Tilde;
  if (text == "PLUS" || text == "plus") return FormParameterKind::Plus;
  if (text == "MINUS" || text == "minus") return FormParameterKind::Minus;
  throw Error(ErrorKind::InvalidArgument, "unknown form parameter '" + std::string(text) + "'");
}

/// Z-spanning set of the parameter as a sublattice of Z^m.
inline std::vector<IntVector> parameter_generators(std::size_t m, FormParameterKind kind) {
  std::vector<IntVector> gens;
  if (kind == FormParameterKind::Tilde) {
    gens.push_back(GroupRingElement::one(m).coefficients());
  }
  for (std::size_t i = 0; i < m; ++i) {
    IntVector v(m, 0);
    const std::size_t j = (m - i) % m;
    v[i] += 1;
    v[j] += (kind == FormParameterKind::Minus) ? -1 : 1;
    if (!is_zero_vector(v)) {
      gens.push_back(std::move(v));
    }
  }
  return gens;
}

struct ParameterClass {
  FormParameterKind kind;
  GroupRingElement representative;

  bool is_zero() const { return representative.is_zero(); }
  friend bool operator==(const ParameterClass&, const ParameterClass&) = default;
};

/// The quotient map Lambda -> Lambda / parameter for a fixed modulus.
class FormParameter {
 public:
  FormParameter(std::size_t m, FormParameterKind kind)
      : m_(m), kind_(kind), lattice_(Lattice::spanned_by(m, parameter_generators(m, kind))) {}

  std::size_t modulus() const { return m_; }
  FormParameterKind kind() const { return kind_; }
  const Lattice& lattice() const { return lattice_; }

  ParameterClass reduce(const GroupRingElement& x) const {
    if (x.modulus() != m_) {
      throw Error(ErrorKind::ModulusMismatch, "element modulus differs from parameter modulus");
    }
    return {kind_, GroupRingElement(m_, lattice_.reduce(x.coefficients()))};
  }

  bool contains(const GroupRingElement& x) const { return reduce(x).is_zero(); }

  ParameterClass add(const ParameterClass& a, const ParameterClass& b) const {
    return reduce(a.representative + b.representative);
  }

 private:
  std::size_t m_;
  FormParameterKind kind_;
  Lattice lattice_;
};

inline ParameterClass param_reduce(const GroupRingElement& x, FormParameterKind kind) {
  return FormParameter(x.modulus(), kind).reduce(x);
}

}  // namespace freezm
