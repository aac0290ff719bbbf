#pragma once

// Ideals A of the group ring with A + (s) = Lambda are principal, generated
// by u = 1 + gen + ... + gen^(l-1) with gcd(l, m) = 1. This header builds u
// and the companion element v with u*v = 1 - a*s.

#include <cstddef>
#include <span>
#include <vector>

#include "freezm/error.hpp"
#include "freezm/group_ring.hpp"
#include "freezm/lattice.hpp"

namespace freezm {

struct NormData {
  GroupRingElement u;
  GroupRingElement v;  // -gen * (1 + gen^l + ... + gen^((b-1)l))
  Integer l;
  Integer a;
  Integer b;           // a*m - b*l == 1, b > 0

  /// The companion with the other sign: v' = 1 + gen^l + ... + gen^((b'-1)l)
  /// where b'*l + a'*m == 1, b' > 0, so that u*v' + a'*s == 1.
  struct UnitConvention {
    GroupRingElement v;
    Integer a;
    Integer b;
  };

  UnitConvention unit_convention() const;
};

namespace detail {

// sum_{j<count} gen^(j*step)
inline GroupRingElement stepped_sum(std::size_t m, const Integer& step, const Integer& count) {
  GroupRingElement x(m);
  IntVector c = x.coefficients();
  const Integer step_mod = floor_mod(step, m);
  Integer exponent = 0;
  for (Integer j = 0; j < count; ++j) {
    c[static_cast<std::size_t>(exponent)] += 1;
    exponent = floor_mod(exponent + step_mod, m);
  }
  return GroupRingElement(m, std::move(c));
}

}  // namespace detail

/// NormData for a given l coprime to m.
inline NormData norm_data_for(std::size_t m, const Integer& l) {
  if (l <= 0) {
    throw Error(ErrorKind::InvalidArgument, "l must be positive");
  }
  const Integer mm = m;
  const ExtendedGcd eg = extended_gcd(floor_mod(l, mm), mm);
  if (eg.gcd != 1) {
    throw Error(ErrorKind::InvalidArgument, "l is not coprime to m");
  }
  // eg.x is an inverse of l mod m; b = -l^{-1} mod m lies in [1, m-1].
  Integer b = floor_mod(-eg.x, mm);
  if (b == 0) {
    b = mm;  // only possible for m == 1, excluded upstream
  }
  const Integer a = (1 + b * l) / mm;
  NormData nd{GroupRingElement::geometric_sum(m, l),
              -(GroupRingElement::monomial(m, 1) * detail::stepped_sum(m, l, b)), l, a, b};
  return nd;
}

inline NormData::UnitConvention NormData::unit_convention() const {
  const std::size_t m = u.modulus();
  const Integer mm = m;
  const Integer b2 = mm - b;
  const Integer a2 = (1 - b2 * l) / mm;
  return {detail::stepped_sum(m, l, b2), a2, b2};
}

/// Z-lattice of the ideal generated by `generators` (all gen-shifts).
inline Lattice ideal_lattice(std::span<const GroupRingElement> generators) {
  if (generators.empty()) {
    throw Error(ErrorKind::Degenerate, "no generators");
  }
  const std::size_t m = generators.front().modulus();
  Lattice lattice(m);
  for (const auto& x : generators) {
    generators.front().same_modulus(x);
    for (std::size_t j = 0; j < m; ++j) {
      lattice.insert((x * GroupRingElement::monomial(m, static_cast<long long>(j))).coefficients());
    }
  }
  return lattice;
}

/// True when the ideal generated by `generators` together with s is everything.
inline bool comaximal_with_norm(std::span<const GroupRingElement> generators) {
  Lattice lattice = ideal_lattice(generators);
  const std::size_t m = lattice.dimension();
  lattice.insert(GroupRingElement::norm_element(m).coefficients());
  return lattice.contains(GroupRingElement::one(m).coefficients());
}

inline NormData ideal_normalize(std::span<const GroupRingElement> generators) {
  if (generators.empty()) {
    throw Error(ErrorKind::Degenerate, "no generators");
  }
  bool all_zero = true;
  for (const auto& x : generators) {
    all_zero = all_zero && x.is_zero();
  }
  if (all_zero) {
    throw Error(ErrorKind::Degenerate, "all generators are zero");
  }
  const std::size_t m = generators.front().modulus();
  const Lattice ideal = ideal_lattice(generators);
  {
    Lattice with_norm = ideal;
    with_norm.insert(GroupRingElement::norm_element(m).coefficients());
    if (!with_norm.contains(GroupRingElement::one(m).coefficients())) {
      throw Error(ErrorKind::PreconditionFailed, "A + (s) is a proper ideal");
    }
  }
  Integer l = 0;
  for (const auto& x : generators) {
    l = gcd(l, augmentation(x));
  }
  NormData nd = norm_data_for(m, l);

  const GroupRingElement s = GroupRingElement::norm_element(m);
  if (nd.u * nd.v != GroupRingElement::one(m) - nd.a * s) {
    throw Error(ErrorKind::NormalizationFailed, "u*v != 1 - a*s");
  }
  const GroupRingElement principal[] = {nd.u};
  const Lattice u_ideal = ideal_lattice(principal);
  if (!ideal.contains(u_ideal) || !u_ideal.contains(ideal)) {
    throw Error(ErrorKind::NormalizationFailed, "u*Lambda differs from the input ideal");
  }
  return nd;
}

inline NormData ideal_normalize(std::initializer_list<GroupRingElement> generators) {
  const std::vector<GroupRingElement> gens(generators);
  return ideal_normalize(std::span<const GroupRingElement>(gens));
}

}  // namespace freezm
