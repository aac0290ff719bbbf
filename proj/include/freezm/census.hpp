#pragma once

// Arithmetic of free Z/m-actions on #genus(S^n x S^n): the existence gate,
// class counts, the prime bound table and the model quotients.
//
// Note on names: the genus of the manifold is `genus` here, never g; the
// group generator is `gen` elsewhere in the library. Descriptor strings
// keep the customary letter g for the genus.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "freezm/error.hpp"
#include "freezm/integer.hpp"

namespace freezm {

struct ActionQuery {
  int n = 2;
  std::uint64_t m = 2;
  Integer genus = 0;
  std::optional<std::vector<Integer>> pontryagin;  // floor(n/4) residues mod m
};

struct Existence {
  bool exists = false;
  std::string reason;
  Integer euler_numerator;    // 2(1 + (-1)^n genus)
  Integer euler_denominator;  // m
  bool euler_integral = false;
};

inline Integer sign_power(int n) { return n % 2 == 0 ? 1 : -1; }

inline Existence existence_check(const ActionQuery& q) {
  if (q.m < 2 || q.n < 2 || q.genus < 0) {
    throw Error(ErrorKind::InvalidArgument, "need n >= 2, m >= 2, genus >= 0");
  }
  const Integer m = q.m;
  const Integer shifted = q.genus + sign_power(q.n);
  Existence e;
  e.exists = floor_mod(shifted, m) == 0;
  e.euler_numerator = 2 * (1 + sign_power(q.n) * q.genus);
  e.euler_denominator = m;
  e.euler_integral = floor_mod(e.euler_numerator, m) == 0;
  e.reason = "genus + (-1)^n = " + shifted.str() + (e.exists ? " is" : " is not") + " divisible by m = " +
             m.str() + "; chi(M) = 2(1 + (-1)^n genus)/m = " + e.euler_numerator.str() + "/" + m.str();
  return e;
}

/// The prime bound C(n), tabulated for 4 <= n <= 9.
inline int c_of_n(int n) {
  static constexpr int table[] = {3, 3, 3, 3, 5, 5};
  if (n < 4 || n > 9) {
    throw Error(ErrorKind::OutOfTable, "C(n) is tabulated only for 4 <= n <= 9, got " + std::to_string(n));
  }
  return table[n - 4];
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t m) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      out.push_back(p);
      while (m % p == 0) m /= p;
    }
  }
  if (m > 1) out.push_back(m);
  return out;
}

enum class ConjugationKind { Topological, Smooth };

constexpr std::string_view to_string(ConjugationKind k) {
  return k == ConjugationKind::Topological ? "TOPOLOGICAL" : "SMOOTH";
}

struct CensusReport {
  ActionQuery query;
  Existence existence;
  bool out_of_range = false;
  std::optional<Integer> class_count;
  std::string parameterization;
  std::optional<ConjugationKind> conjugation;
  std::vector<std::string> descriptors;
  std::optional<Integer> summand_copies;  // copies of S^n x S^n in the model
  std::string realizable_module;
  std::string class_descriptor;  // echo of a supplied Pontryagin tuple
  std::vector<std::string> notes;
};

namespace detail {

inline std::string superscript(int n) {
  static const char* digits[] = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};
  std::string out;
  for (char c : std::to_string(n)) out += digits[c - '0'];
  return out;
}

inline std::string sphere_pair(int n) {
  const std::string s = superscript(n);
  return "(S" + s + "×S" + s + ")";
}

}  // namespace detail

inline CensusReport classification(const ActionQuery& q) {
  CensusReport rep;
  rep.query = q;
  rep.existence = existence_check(q);
  if (!rep.existence.exists) {
    return rep;
  }
  const Integer m = q.m;
  const int n = q.n;
  const std::string pair = detail::sphere_pair(n);

  if (n == 2) {
    rep.class_count = 1;
    rep.conjugation = ConjugationKind::Topological;
    rep.parameterization = "unique";
    rep.notes.push_back("classification up to topological conjugation; the smooth classification is open");
    return rep;
  }

  const Integer r_odd = (q.genus - 1) / m;
  if (n == 3) {
    rep.conjugation = ConjugationKind::Smooth;
    rep.summand_copies = r_odd;
    rep.descriptors.push_back("(L³_m×S³)#((g−1)/m)" + pair);
    if (q.m % 2 == 0) {
      rep.class_count = 2;
      rep.parameterization = "w2 of the quotient";
      rep.descriptors.push_back("S(ξ)#((g−1)/m)" + pair);
    } else {
      rep.class_count = 1;
      rep.parameterization = "unique";
    }
    rep.realizable_module = "Z²⊕Z[Z/m]^{2r}, r = " + r_odd.str();
    return rep;
  }

  int bound = 0;
  try {
    bound = c_of_n(n);
  } catch (const Error& e) {
    rep.out_of_range = true;
    rep.notes.push_back(e.what());
    return rep;
  }
  for (auto p : prime_factors(q.m)) {
    if (p <= static_cast<std::uint64_t>(bound)) {
      rep.out_of_range = true;
      rep.notes.push_back("prime factor " + std::to_string(p) + " of m does not exceed C(" + std::to_string(n) +
                          ") = " + std::to_string(bound));
      return rep;
    }
  }

  const unsigned k = static_cast<unsigned>(n / 4);
  rep.conjugation = ConjugationKind::Smooth;
  rep.class_count = boost::multiprecision::pow(m, k);
  rep.parameterization = "Pontryagin classes (p1..p" + std::to_string(k) + ") in (Z/m)^" + std::to_string(k);
  if (n % 2 == 1) {
    rep.summand_copies = r_odd;
    rep.descriptors.push_back("S(ξ)#((g−1)/m)" + pair + "#(1/m)Σ");
    rep.realizable_module = "Z²⊕Z[Z/m]^{2r}, r = " + r_odd.str();
  } else {
    // The universal cover of N(xi) is already #(m-1)(S^n x S^n), so the
    // model needs (g+1-m)/m further copies.
    const Integer r_even = (q.genus + 1 - m) / m;
    rep.summand_copies = r_even;
    rep.descriptors.push_back("N(ξ)#((g+1−m)/m)" + pair + "#(1/m)Σ");
    rep.realizable_module = "I²⊕Z[Z/m]^{2r}, r = " + r_even.str();
    rep.notes.push_back("the classification displays (g+1)/m copies; the model construction uses (g+1-m)/m");
  }
  rep.notes.push_back("(1/m)Σ presumes m invertible in the group of homotopy 2n-spheres, which holds when every "
                      "prime factor of m exceeds C(n)");

  if (q.pontryagin) {
    if (q.pontryagin->size() != k) {
      throw Error(ErrorKind::InvalidArgument, "expected " + std::to_string(k) + " Pontryagin residues");
    }
    std::string tuple;
    for (const auto& r : *q.pontryagin) {
      if (!tuple.empty()) tuple += ",";
      tuple += floor_mod(r, m).str();
    }
    rep.class_descriptor = "(p1..p" + std::to_string(k) + ") = (" + tuple + ") mod " + m.str();
  }
  return rep;
}

}  // namespace freezm
