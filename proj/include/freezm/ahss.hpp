#pragma once

// Mod-2 cohomology of K(Z/m, 1) for even m, Steenrod squares from the
// Cartan formula, and the E2/E3 bookkeeping of the spin bordism spectral
// sequence of K(Z/m, 1) in total degree <= 8.
//
//   m = 2 mod 4:  Z/2[x],          |x| = 1, Sq x = x + x^2
//   m = 0 mod 4:  Z/2[x, y]/(x^2), |y| = 2, Sq x = x, Sq y = y + y^2

#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "freezm/error.hpp"

namespace freezm {

enum class RingCase { Poly, Trunc };

constexpr std::string_view to_string(RingCase c) { return c == RingCase::Poly ? "POLY" : "TRUNC"; }

inline RingCase ring_case(std::size_t m) {
  if (m < 2 || m % 2 != 0) {
    throw Error(ErrorKind::OddModulus, "mod-2 cohomology ring is only modelled for even m");
  }
  return m % 4 == 2 ? RingCase::Poly : RingCase::Trunc;
}

/// x^i y^j
struct Monomial {
  unsigned x = 0;
  unsigned y = 0;
  unsigned degree() const { return x + 2 * y; }
  auto operator<=>(const Monomial&) const = default;
};

/// A mod-2 class: the set of monomials with coefficient 1.
class CohomologyClass {
 public:
  CohomologyClass(std::size_t m, unsigned degree) : m_(m), ring_(ring_case(m)), degree_(degree) {}

  static CohomologyClass monomial(std::size_t m, unsigned x, unsigned y) {
    CohomologyClass c(m, x + 2 * y);
    c.toggle({x, y});
    return c;
  }

  std::size_t modulus() const { return m_; }
  RingCase ring() const { return ring_; }
  unsigned degree() const { return degree_; }
  const std::set<Monomial>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Add a monomial mod 2. Monomials that vanish in the ring are dropped.
  void toggle(Monomial mono) {
    if (mono.degree() != degree_) {
      throw Error(ErrorKind::InvalidArgument, "monomial degree does not match class degree");
    }
    if (vanishes(mono)) {
      return;
    }
    if (!terms_.erase(mono)) {
      terms_.insert(mono);
    }
  }

  bool vanishes(Monomial mono) const {
    return ring_ == RingCase::Poly ? mono.y != 0 : mono.x >= 2;
  }

  CohomologyClass& operator+=(const CohomologyClass& o) {
    check(o);
    if (o.degree_ != degree_) {
      throw Error(ErrorKind::InvalidArgument, "adding classes of different degree");
    }
    for (const auto& t : o.terms_) {
      toggle(t);
    }
    return *this;
  }

  friend CohomologyClass operator+(CohomologyClass a, const CohomologyClass& b) { return a += b; }

  friend CohomologyClass operator*(const CohomologyClass& a, const CohomologyClass& b) {
    a.check(b);
    CohomologyClass out(a.m_, a.degree_ + b.degree_);
    for (const auto& s : a.terms_) {
      for (const auto& t : b.terms_) {
        out.toggle({s.x + t.x, s.y + t.y});
      }
    }
    return out;
  }

  friend bool operator==(const CohomologyClass& a, const CohomologyClass& b) {
    return a.m_ == b.m_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }

  std::string str() const {
    if (terms_.empty()) {
      return "0";
    }
    std::string out;
    for (const auto& t : terms_) {
      if (!out.empty()) {
        out += " + ";
      }
      out += monomial_string(t);
    }
    return out;
  }

  static std::string monomial_string(Monomial t) {
    std::string s;
    auto put = [&](char v, unsigned e) {
      if (e == 0) return;
      s += v;
      if (e > 1) s += "^" + std::to_string(e);
    };
    put('x', t.x);
    put('y', t.y);
    return s.empty() ? "1" : s;
  }

 private:
  void check(const CohomologyClass& o) const {
    if (o.m_ != m_) {
      throw Error(ErrorKind::ModulusMismatch, "classes live over different m");
    }
  }

  std::size_t m_;
  RingCase ring_;
  unsigned degree_;
  std::set<Monomial> terms_;
};

/// Parse monomials such as "x^3", "x y^2", "xy", "y2" or "1".
inline CohomologyClass parse_monomial(std::size_t m, std::string_view text) {
  unsigned ex = 0, ey = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i++];
    if (c == ' ' || c == '*' || (c == '1' && text.size() == 1)) {
      continue;
    }
    if (c != 'x' && c != 'y') {
      throw Error(ErrorKind::InvalidArgument, "bad monomial '" + std::string(text) + "'");
    }
    if (i < text.size() && text[i] == '^') {
      ++i;
    }
    unsigned e = 0;
    const std::size_t first = i;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
      e = e * 10 + static_cast<unsigned>(text[i++] - '0');
    }
    (c == 'x' ? ex : ey) += (i == first) ? 1 : e;
  }
  return CohomologyClass::monomial(m, ex, ey);
}

/// Basis of H^d(K(Z/m,1); Z/2): a single monomial in each degree.
inline std::vector<CohomologyClass> cohomology_basis(std::size_t m, unsigned d) {
  if (ring_case(m) == RingCase::Poly) {
    return {CohomologyClass::monomial(m, d, 0)};
  }
  return {d % 2 == 0 ? CohomologyClass::monomial(m, 0, d / 2) : CohomologyClass::monomial(m, 1, (d - 1) / 2)};
}

namespace detail {

// Total square of one monomial, as a map degree -> class, truncated above
// `max_degree`.
inline std::map<unsigned, CohomologyClass> total_square(std::size_t m, Monomial mono, unsigned max_degree) {
  const RingCase rc = ring_case(m);
  // Sq(x) and Sq(y) as graded pieces.
  std::map<unsigned, CohomologyClass> acc;
  acc.emplace(0, CohomologyClass::monomial(m, 0, 0));
  auto multiply = [&](const std::map<unsigned, CohomologyClass>& factor) {
    std::map<unsigned, CohomologyClass> next;
    for (const auto& [da, a] : acc) {
      for (const auto& [db, b] : factor) {
        if (da + db > max_degree) continue;
        auto it = next.find(da + db);
        if (it == next.end()) {
          next.emplace(da + db, a * b);
        } else {
          it->second += a * b;
        }
      }
    }
    acc = std::move(next);
  };
  std::map<unsigned, CohomologyClass> sq_x;
  sq_x.emplace(1, CohomologyClass::monomial(m, 1, 0));
  if (rc == RingCase::Poly) {
    sq_x.emplace(2, CohomologyClass::monomial(m, 2, 0));
  }
  std::map<unsigned, CohomologyClass> sq_y;
  if (rc == RingCase::Trunc) {
    sq_y.emplace(2, CohomologyClass::monomial(m, 0, 1));
    sq_y.emplace(4, CohomologyClass::monomial(m, 0, 2));
  }
  for (unsigned i = 0; i < mono.x; ++i) multiply(sq_x);
  for (unsigned j = 0; j < mono.y; ++j) multiply(sq_y);
  return acc;
}

}  // namespace detail

/// Sq^k(c), read off the total square (a ring map) of each monomial.
inline CohomologyClass steenrod_square(unsigned k, const CohomologyClass& c) {
  const std::size_t m = c.modulus();
  CohomologyClass out(m, c.degree() + k);
  for (const auto& t : c.terms()) {
    auto parts = detail::total_square(m, t, c.degree() + k);
    auto it = parts.find(c.degree() + k);
    if (it != parts.end()) {
      out += it->second;
    }
  }
  return out;
}

/// The nonzero class of H^2: x^2 or y.
inline CohomologyClass w2_class(std::size_t m) {
  return ring_case(m) == RingCase::Poly ? CohomologyClass::monomial(m, 2, 0) : CohomologyClass::monomial(m, 0, 1);
}

/// Sq^2 (+ w2 cup) on a class.
inline CohomologyClass d2_dual_map(const CohomologyClass& c, bool twisted) {
  CohomologyClass out = steenrod_square(2, c);
  if (twisted) {
    out += w2_class(c.modulus()) * c;
  }
  return out;
}

/// Rank over Z/2 of Sq^2 (+ w2 cup) : H^(p-2) -> H^p.
inline std::size_t d2_rank(std::size_t m, unsigned p, bool twisted) {
  ring_case(m);
  if (p < 2) {
    throw Error(ErrorKind::InvalidArgument, "d2 rank needs p >= 2");
  }
  // Both degrees are one-dimensional, so the rank is 0 or 1.
  const auto basis = cohomology_basis(m, p - 2);
  return d2_dual_map(basis.front(), twisted).is_zero() ? 0 : 1;
}

// ----------------------------------------------------------------------
// Pages.

/// Spin bordism of a point in degrees 0..8; 0 stands for Z.
/// Standard values (Milnor; Anderson-Brown-Peterson):
///   Z, Z/2, Z/2, 0, Z, 0, 0, 0, Z+Z.
inline const std::vector<std::vector<std::uint64_t>>& spin_coefficients() {
  static const std::vector<std::vector<std::uint64_t>> table = {
      {0}, {2}, {2}, {}, {0}, {}, {}, {}, {0, 0}};
  return table;
}

/// H_p(K(Z/m,1); Z/n) for n = 0 (integers) or n > 1, as a list of cyclic
/// orders (0 = Z, empty = trivial group).
inline std::vector<std::uint64_t> cyclic_group_homology(std::uint64_t m, unsigned p, std::uint64_t n) {
  if (p == 0) {
    return {n};
  }
  if (n == 0) {
    return p % 2 == 1 ? std::vector<std::uint64_t>{m} : std::vector<std::uint64_t>{};
  }
  // Universal coefficients: H_p (x) Z/n  +  Tor(H_(p-1), Z/n); both
  // contribute Z/gcd(m, n) in the appropriate parity.
  const std::uint64_t d = std::gcd(m, n);
  if (d == 1) {
    return {};
  }
  return {d};
}

enum class Provenance { Computed, PaperCited };

constexpr std::string_view to_string(Provenance p) {
  return p == Provenance::Computed ? "COMPUTED" : "PAPER_CITED";
}

struct Bidegree {
  int p = 0;
  int q = 0;
  auto operator<=>(const Bidegree&) const = default;
};

struct Differential {
  int page = 2;
  Bidegree source;
  Bidegree target;
  std::size_t rank = 0;  // over Z/2 for the maps recorded here
  Provenance provenance = Provenance::Computed;
  std::string note;
  friend bool operator==(const Differential&, const Differential&) = default;
};

struct SpectralPage {
  int page = 2;
  std::map<Bidegree, std::vector<std::uint64_t>> entries;
  std::vector<Differential> differentials;

  const std::vector<std::uint64_t>& at(int p, int q) const {
    static const std::vector<std::uint64_t> empty;
    auto it = entries.find({p, q});
    return it == entries.end() ? empty : it->second;
  }
};

inline std::string group_string(const std::vector<std::uint64_t>& g) {
  if (g.empty()) {
    return "0";
  }
  std::string out;
  for (auto n : g) {
    if (!out.empty()) out += "+";
    out += n == 0 ? "Z" : "Z/" + std::to_string(n);
  }
  return out;
}

/// Z/2-dimension of a group that is a sum of copies of Z/2; nullopt
/// otherwise.
inline std::optional<std::size_t> f2_dimension(const std::vector<std::uint64_t>& g) {
  for (auto n : g) {
    if (n != 2) return std::nullopt;
  }
  return g.size();
}

namespace detail {

// Twisting only matters when H^2(K(Z/m,1); Z/2) is nonzero.
inline bool effective_twist(std::size_t m, bool twisted) { return twisted && m % 2 == 0; }

// Rank over Z/2 of d2 between the two listed bidegrees for even m, or 0.
inline std::size_t d2_between(std::size_t m, Bidegree src, bool twisted) {
  if (m % 2 != 0 || src.p < 2) {
    return 0;
  }
  const unsigned p = static_cast<unsigned>(src.p);
  if (src.q == 1) {
    // E_{p,1} -> E_{p-2,2}: dual to Sq^2 (+ w2) : H^{p-2} -> H^p.
    return d2_rank(m, p, twisted);
  }
  if (src.q == 0) {
    // E_{p,0} -> E_{p-2,1}: reduce mod 2 (onto for odd p, p = 0 excluded
    // here, zero group for even p > 0), then the same dual map.
    if (p % 2 == 0) {
      return 0;
    }
    return d2_rank(m, p, twisted);
  }
  return 0;
}

}  // namespace detail

inline SpectralPage e2_page(std::size_t m, bool twisted) {
  if (m < 2) {
    throw Error(ErrorKind::InvalidArgument, "m must be at least 2");
  }
  SpectralPage page;
  const auto& coeffs = spin_coefficients();
  for (int total = 0; total <= 8; ++total) {
    for (int q = 0; q <= total; ++q) {
      const int p = total - q;
      std::vector<std::uint64_t> group;
      for (auto n : coeffs[static_cast<std::size_t>(q)]) {
        const auto h = cyclic_group_homology(m, static_cast<unsigned>(p), n);
        group.insert(group.end(), h.begin(), h.end());
      }
      page.entries[{p, q}] = std::move(group);
    }
  }
  const bool tw = detail::effective_twist(m, twisted);
  for (const auto& [src, group] : page.entries) {
    if (src.q > 1 || group.empty()) {
      continue;
    }
    const Bidegree dst{src.p - 2, src.q + 1};
    if (dst.p < 0 || page.at(dst.p, dst.q).empty()) {
      continue;
    }
    Differential d{2, src, dst, detail::d2_between(m, src, tw), Provenance::Computed,
                   src.q == 1 ? (tw ? "dual of Sq^2 + w2" : "dual of Sq^2")
                              : (tw ? "mod 2 reduction, then dual of Sq^2 + w2"
                                    : "mod 2 reduction, then dual of Sq^2")};
    page.differentials.push_back(std::move(d));
  }
  return page;
}

struct ReportStep {
  std::string text;
  Provenance provenance;
  friend bool operator==(const ReportStep&, const ReportStep&) = default;
};

struct LineEntry {
  Bidegree at;
  std::vector<std::uint64_t> e2;
  std::size_t rank_in = 0;
  std::size_t rank_out = 0;
  std::vector<std::uint64_t> e3;
  bool killed_later = false;  // by a higher differential
  friend bool operator==(const LineEntry&, const LineEntry&) = default;
};

struct SpinLineReport {
  std::size_t m = 0;
  bool twisted = false;
  bool effective_twisted = false;
  int line = 6;
  SpectralPage e2;
  std::vector<LineEntry> entries;
  std::vector<Differential> higher;  // d3 and beyond
  std::vector<ReportStep> steps;
  bool conclusion_zero = false;
  std::vector<std::string> bibliography;

  bool all_computed_except_cited_d3() const {
    for (const auto& s : steps) {
      if (s.provenance == Provenance::PaperCited) {
        return false;
      }
    }
    for (const auto& d : higher) {
      if (d.provenance == Provenance::PaperCited && !(d.page == 3 && d.source == Bidegree{4, 2})) {
        return false;
      }
    }
    return true;
  }
};

/// Restriction along Z/2 -> Z/m on H^d( ; Z/2): nonzero?  x |-> t in the
/// polynomial case; x |-> 0, y |-> t^2 in the truncated case.
inline bool restriction_to_order_two_nonzero(std::size_t m, unsigned d) {
  if (ring_case(m) == RingCase::Poly) {
    return true;
  }
  return d % 2 == 0;
}

/// Image of the generator of H_1(Z/2; Z) = Z/2 in H_1(Z/m; Z) = Z/m.
inline std::uint64_t inclusion_on_h1(std::size_t m) {
  if (m % 2 != 0) {
    throw Error(ErrorKind::OddModulus, "Z/2 is not a subgroup of Z/m for odd m");
  }
  return m / 2;
}

inline SpinLineReport spin_line_report(std::size_t m, bool twisted) {
  SpinLineReport rep;
  rep.m = m;
  rep.twisted = twisted;
  rep.effective_twisted = detail::effective_twist(m, twisted);
  rep.e2 = e2_page(m, twisted);
  rep.bibliography = {"Omega_5^{Pin-} = 0", "Omega^spin_q, q <= 8: Z, Z/2, Z/2, 0, Z, 0, 0, 0, Z+Z"};
  if (twisted && !rep.effective_twisted) {
    rep.steps.push_back({"m odd: H^2(K(Z/m,1); Z/2) = 0, so w2 vanishes and the twisted sequence is the untwisted one",
                         Provenance::Computed});
  }

  auto rank_from = [&](Bidegree src) -> std::size_t {
    for (const auto& d : rep.e2.differentials) {
      if (d.source == src) return d.rank;
    }
    return 0;
  };
  auto rank_into = [&](Bidegree dst) -> std::size_t {
    for (const auto& d : rep.e2.differentials) {
      if (d.target == dst) return d.rank;
    }
    return 0;
  };

  bool all_zero = true;
  for (int q = 0; q <= rep.line; ++q) {
    const Bidegree at{rep.line - q, q};
    LineEntry entry;
    entry.at = at;
    entry.e2 = rep.e2.at(at.p, at.q);
    if (entry.e2.empty()) {
      rep.entries.push_back(entry);
      continue;
    }
    entry.rank_out = rank_from(at);
    entry.rank_in = rank_into(at);
    const auto dim = f2_dimension(entry.e2);
    if (!dim) {
      throw Error(ErrorKind::InvalidArgument, "line entry is not an F2 vector space");
    }
    const std::size_t left = *dim - entry.rank_out - entry.rank_in;
    entry.e3.assign(left, 2);
    std::ostringstream text;
    text << "E2(" << at.p << "," << at.q << ") = " << group_string(entry.e2) << ", d2 out rank "
         << entry.rank_out << ", d2 in rank " << entry.rank_in << ", E3 = " << group_string(entry.e3);
    rep.steps.push_back({text.str(), Provenance::Computed});
    rep.entries.push_back(entry);
  }

  for (auto& entry : rep.entries) {
    if (entry.e3.empty()) {
      continue;
    }
    if (entry.at == Bidegree{4, 2} && !rep.effective_twisted && m % 2 == 0) {
      // d3 is geometric (compare with m = 2 through Z/2 -> Z/m); only the
      // comparison maps are checked here.
      entry.killed_later = true;
      rep.higher.push_back({3, {4, 2}, {1, 4}, 1, Provenance::PaperCited,
                            "d3: E3(4,2) -> E3(1,4) is injective; cited, not computed"});
      rep.steps.push_back(
          {"restriction Z/2 -> Z/m is an isomorphism on H^4( ; Z/2): " +
               std::string(restriction_to_order_two_nonzero(m, 4) ? "yes" : "no"),
           Provenance::Computed});
      rep.steps.push_back({"Z/2 -> Z/m on H_1( ; Z) sends 1 to " + std::to_string(inclusion_on_h1(m)) +
                               " (nonzero)",
                           Provenance::Computed});
      continue;
    }
    all_zero = false;
  }
  rep.conclusion_zero = all_zero;
  rep.steps.push_back({std::string("line p+q=6 ") + (all_zero ? "vanishes at E-infinity" : "does not vanish"),
                       Provenance::Computed});
  return rep;
}

}  // namespace freezm
