#pragma once

// Lagrangian complements for rank-2 embeddings S = span(v1, v2) into H^2,
// with v1 = e1 and v2 = a1 e1 + a2 e2 + c f1 + b2 f2:
//   ODD_M_SKEW   skew form, tilde parameter, m odd,  c = s
//   EVEN_M_SKEW  skew form, tilde parameter, m even, c = s
//   EVEN_N_SYM   symmetric form, parameter <x - xbar>, c = 1 - gen
// Each solver moves S by recorded ambient isometries until a complement
// can be written down, then pulls that complement back.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "freezm/complement.hpp"
#include "freezm/error.hpp"
#include "freezm/form_parameter.hpp"
#include "freezm/group_ring.hpp"
#include "freezm/lattice.hpp"
#include "freezm/norm_ideal.hpp"
#include "freezm/quadratic_module.hpp"
#include "freezm/ring_matrix.hpp"

namespace freezm {

enum class Branch { OddMSkew, EvenMSkew, EvenNSym };

constexpr std::string_view to_string(Branch b) {
  switch (b) {
    case Branch::OddMSkew: return "ODD_M_SKEW";
    case Branch::EvenMSkew: return "EVEN_M_SKEW";
    case Branch::EvenNSym: return "EVEN_N_SYM";
  }
  return "?";
}

inline Branch parse_branch(std::string_view text) {
  if (text == "ODD_M_SKEW" || text == "odd-m") return Branch::OddMSkew;
  if (text == "EVEN_M_SKEW" || text == "even-m") return Branch::EvenMSkew;
  if (text == "EVEN_N_SYM" || text == "even-n") return Branch::EvenNSym;
  throw Error(ErrorKind::InvalidArgument, "unknown branch '" + std::string(text) + "'");
}

struct EmbeddingSpec {
  std::size_t m;
  Branch branch;
  GroupRingElement a1;
  GroupRingElement a2;
  GroupRingElement b2;

  QuadraticModule module() const {
    return branch == Branch::EvenNSym ? QuadraticModule(m, 2, 1, FormParameterKind::Minus)
                                      : QuadraticModule(m, 2, -1, FormParameterKind::Tilde);
  }

  /// The fixed f1-coefficient of v2.
  GroupRingElement f1_coefficient() const {
    if (branch == Branch::EvenNSym) {
      return GroupRingElement::one(m) - GroupRingElement::monomial(m, 1);
    }
    return GroupRingElement::norm_element(m);
  }

  RingVector v1() const { return module().e(1); }
  RingVector v2() const { return RingVector{a1, a2, f1_coefficient(), b2}; }
  std::vector<RingVector> s_basis() const { return {v1(), v2()}; }
};

struct NamedIsometry {
  std::string name;
  RingMatrix matrix;
};

struct SolverTrace {
  explicit SolverTrace(const EmbeddingSpec& spec)
      : input(spec), s_input(spec.s_basis()), s_working(s_input), s_normalized(s_input) {}

  EmbeddingSpec input;
  std::vector<RingVector> s_input;
  bool replaced_v2 = false;               // even m: v2 -> v1 + v2
  std::vector<RingVector> s_working;      // S basis after any replacement
  std::vector<NamedIsometry> isometries;  // applied in order
  std::vector<RingVector> s_normalized;   // isometries applied to s_working
  std::optional<NormData> norm;
  std::optional<GroupRingElement> v_used;  // v with u*v = 1 - a*s actually used
  std::optional<Integer> a_used;
  std::optional<GroupRingElement> alpha, beta;
  std::optional<GroupRingElement> r, k, t;  // r a2 + k s + t b2 = -a1
  std::optional<Integer> h;                 // e1-coefficient after R, T is h*s
  std::optional<GroupRingElement> a_even;   // a2 = 1 + a(1 - gen)
  bool division_ambiguous = false;
  std::string rank2_method;
  std::vector<RingVector> u_normalized;
  std::vector<RingVector> u_basis;
  std::optional<ComplementCertificate> certificate;

  RingMatrix composite() const {
    RingMatrix out = RingMatrix::identity(input.m, 4);
    for (const auto& iso : isometries) {
      out = iso.matrix * out;
    }
    return out;
  }
};

struct Rank2Options {
  std::size_t max_word_length = 4;
  std::size_t coefficient_height = 0;  // 0 means 2m
  std::size_t state_budget = 200000;
  bool constructive = true;
};

struct Rank2Isometry {
  RingMatrix matrix;
  std::string method;  // identity | transvection | completion | search
};

namespace detail {

// p, q with alpha p + beta q = 1, if they exist.
inline std::optional<std::pair<GroupRingElement, GroupRingElement>> unimodular_row(
    const GroupRingElement& alpha, const GroupRingElement& beta) {
  const std::size_t m = alpha.modulus();
  std::vector<IntVector> cols = multiplication_columns(alpha);
  const auto more = multiplication_columns(beta);
  cols.insert(cols.end(), more.begin(), more.end());
  auto sol = solve_integer_system(cols, GroupRingElement::one(m).coefficients());
  if (!sol) {
    return std::nullopt;
  }
  IntVector p(sol->particular.begin(), sol->particular.begin() + static_cast<std::ptrdiff_t>(m));
  IntVector q(sol->particular.begin() + static_cast<std::ptrdiff_t>(m), sol->particular.end());
  return std::pair{GroupRingElement(m, std::move(p)), GroupRingElement(m, std::move(q))};
}

// delta with delta + eps * conj(delta) == 0: these shift a hyperbolic
// partner without breaking lambda.
inline std::vector<GroupRingElement> partner_shifts(std::size_t m, int sign) {
  std::vector<GroupRingElement> out{GroupRingElement(m)};
  for (std::size_t i = 0; i <= m / 2; ++i) {
    GroupRingElement d = GroupRingElement::monomial(m, static_cast<long long>(i));
    d = (sign == -1) ? d + involution(d) : d - involution(d);
    if (d.is_zero()) {
      continue;
    }
    if (sign == -1 && (i == 0 || 2 * i == m)) {
      d = GroupRingElement::monomial(m, static_cast<long long>(i));
    }
    out.push_back(d);
    out.push_back(-d);
  }
  return out;
}

struct Completion {
  RingVector partner;
  ParameterClass mu;
};

// Vectors x'' with lambda(x, x'') = 1, lambda(x'', x'') = 0, for x with
// lambda(x, x) = 0 in a rank-1 block.
inline std::vector<Completion> hyperbolic_partners(const QuadraticModule& q1, const RingVector& x) {
  const std::size_t m = q1.modulus();
  const auto row = unimodular_row(x[0], x[1]);
  if (!row) {
    return {};
  }
  const auto& [p, qq] = *row;
  const GroupRingElement eps_qbar = q1.sign() == 1 ? involution(qq) : -involution(qq);
  const RingVector xp{eps_qbar, involution(p)};  // lambda(x, xp) = alpha p + beta q = 1
  // lambda(xp, xp) = w + eps conj(w) with w a lift of mu(xp), so c = -w
  // kills it.
  const GroupRingElement c0 = -q1.mu_lift(xp);
  std::vector<Completion> out;
  for (const auto& delta : partner_shifts(m, q1.sign())) {
    RingVector cand = xp + (c0 + delta) * x;
    if (q1.lambda(x, cand) != GroupRingElement::one(m) || !q1.lambda(cand, cand).is_zero()) {
      continue;
    }
    out.push_back({cand, q1.mu(cand)});
  }
  return out;
}

inline std::string state_key(const RingVector& x) {
  std::string key;
  for (const auto& c : x.coords()) {
    for (const auto& v : c.coefficients()) {
      key += v.str();
      key += ',';
    }
    key += ';';
  }
  return key;
}

inline bool within_height(const RingVector& x, const Integer& bound) {
  for (const auto& c : x.coords()) {
    for (const auto& v : c.coefficients()) {
      if (abs(v) > bound) {
        return false;
      }
    }
  }
  return true;
}

inline std::vector<RingMatrix> block_generators(const QuadraticModule& q1) {
  const std::size_t m = q1.modulus();
  std::vector<RingMatrix> gens;
  auto push = [&](RingMatrix mat) {
    if (mat == RingMatrix::identity(m, 2)) {
      return;
    }
    if (std::find(gens.begin(), gens.end(), mat) == gens.end()) {
      gens.push_back(std::move(mat));
    }
  };
  for (std::size_t i = 0; i < m; ++i) {
    for (int k : {1, -1}) {
      const auto c = GroupRingElement::monomial(m, static_cast<long long>(i), k);
      push(q1.transvection(TransvectionKind::EF, 1, 1, c));
      push(q1.transvection(TransvectionKind::FE, 1, 1, c));
    }
    const auto gi = GroupRingElement::monomial(m, static_cast<long long>(i));
    push(RingMatrix(m, {{gi, GroupRingElement(m)}, {GroupRingElement(m), gi}}));
  }
  push(RingMatrix(m, {{-GroupRingElement::one(m), GroupRingElement(m)},
                      {GroupRingElement(m), -GroupRingElement::one(m)}}));
  push(RingMatrix(m, {{GroupRingElement(m), GroupRingElement::constant(m, q1.sign())},
                      {GroupRingElement::one(m), GroupRingElement(m)}}));
  return gens;
}

// Meet in the middle over words of block generators.
inline std::optional<RingMatrix> search_block_isometry(const QuadraticModule& q1, const RingVector& from,
                                                       const RingVector& to, const Rank2Options& opt) {
  const std::size_t m = q1.modulus();
  const Integer bound = opt.coefficient_height ? Integer(opt.coefficient_height) : Integer(2 * m);
  const auto gens = block_generators(q1);
  std::vector<RingMatrix> inverses;
  for (const auto& g : gens) {
    inverses.push_back(q1.isometry_inverse(g));
  }
  const std::size_t fwd_depth = (opt.max_word_length + 1) / 2;
  const std::size_t bwd_depth = opt.max_word_length / 2;
  std::size_t states = 0;

  using Layer = std::vector<std::pair<RingVector, RingMatrix>>;
  auto grow = [&](const RingVector& start, const std::vector<RingMatrix>& steps, std::size_t depth,
                  std::unordered_map<std::string, RingMatrix>& seen) {
    Layer frontier{{start, RingMatrix::identity(m, 2)}};
    seen.emplace(state_key(start), RingMatrix::identity(m, 2));
    for (std::size_t d = 0; d < depth && states < opt.state_budget; ++d) {
      Layer next;
      for (const auto& [vec, word] : frontier) {
        for (const auto& step : steps) {
          RingVector nv = step * vec;
          if (!within_height(nv, bound)) {
            continue;
          }
          auto key = state_key(nv);
          if (seen.count(key)) {
            continue;
          }
          RingMatrix nw = step * word;
          seen.emplace(std::move(key), nw);
          next.emplace_back(std::move(nv), std::move(nw));
          if (++states >= opt.state_budget) {
            return;
          }
        }
      }
      frontier = std::move(next);
    }
  };

  std::unordered_map<std::string, RingMatrix> forward, backward;
  grow(from, gens, fwd_depth, forward);
  grow(to, inverses, bwd_depth, backward);
  for (const auto& [key, back_word] : backward) {
    auto it = forward.find(key);
    if (it == forward.end()) {
      continue;
    }
    // back_word * to == it->second * from
    RingMatrix candidate = q1.isometry_inverse(back_word) * it->second;
    if (candidate * from == to && q1.is_isometry(candidate)) {
      return candidate;
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// An isometry of a rank-1 block taking `from` to `to`. Tries, in order:
/// the identity, a single shear, a hyperbolic-partner construction and a
/// bounded word search.
inline Rank2Isometry find_rank2_isometry(const QuadraticModule& q1, const RingVector& from,
                                         const RingVector& to, const Rank2Options& opt = {}) {
  if (q1.rank() != 1) {
    throw Error(ErrorKind::DimensionMismatch, "rank-2 isometries live on a rank-1 block");
  }
  q1.check(from);
  q1.check(to);
  const std::size_t m = q1.modulus();
  if (from.is_zero() || to.is_zero() || !q1.is_primitive(from) || !q1.is_primitive(to)) {
    throw Error(ErrorKind::PreconditionFailed, "both vectors must be primitive");
  }
  if (q1.mu(from) != q1.mu(to)) {
    throw Error(ErrorKind::PreconditionFailed, "mu classes differ");
  }
  if (q1.lambda(from, from) != q1.lambda(to, to)) {
    throw Error(ErrorKind::PreconditionFailed, "lambda(x, x) differs");
  }
  if (from == to) {
    return {RingMatrix::identity(m, 2), "identity"};
  }

  // One shear: e-coordinate fixed, f-coordinate moved (or the reverse).
  for (int side = 0; side < 2; ++side) {
    const std::size_t keep = side, move = 1 - side;
    if (from[keep] != to[keep] || from[keep].is_zero()) {
      continue;
    }
    try {
      const auto d = exact_divide(to[move] - from[move], from[keep]).quotient;
      RingMatrix shear = RingMatrix::identity(m, 2);
      shear(move, keep) = d;
      if (q1.is_isometry(shear) && shear * from == to) {
        return {shear, "transvection"};
      }
    } catch (const Error&) {
    }
  }

  if (opt.constructive && q1.lambda(from, from).is_zero()) {
    const auto from_partners = detail::hyperbolic_partners(q1, from);
    const auto to_partners = detail::hyperbolic_partners(q1, to);
    if (!from_partners.empty()) {
      // Gram of (from, partner) is G, so [from partner]^-1 = eps G P^dagger G.
      const auto& xp = from_partners.front();
      const RingMatrix p = RingMatrix::from_columns({from, xp.partner});
      const RingMatrix p_inv = q1.isometry_inverse(p);
      for (const auto& yp : to_partners) {
        if (yp.mu != xp.mu) {
          continue;
        }
        RingMatrix mat = RingMatrix::from_columns({to, yp.partner}) * p_inv;
        if (mat * from == to && q1.is_isometry(mat)) {
          return {std::move(mat), "completion"};
        }
      }
    }
  }

  if (auto found = detail::search_block_isometry(q1, from, to, opt)) {
    return {std::move(*found), "search"};
  }
  throw Error(ErrorKind::SearchExhausted, "no block isometry found within budget");
}

inline RingMatrix rank2_vector_isometry(const QuadraticModule& q1, const RingVector& from,
                                        const RingVector& to, const Rank2Options& opt = {}) {
  return find_rank2_isometry(q1, from, to, opt).matrix;
}

namespace detail {

inline std::vector<RingVector> apply_all(const RingMatrix& mat, const std::vector<RingVector>& xs) {
  std::vector<RingVector> out;
  for (const auto& x : xs) {
    out.push_back(mat * x);
  }
  return out;
}

inline void record(SolverTrace& trace, std::string name, RingMatrix mat) {
  trace.isometries.push_back({std::move(name), std::move(mat)});
}

inline bool is_multiple_of_norm(const GroupRingElement& x, Integer& h) {
  const auto& c = x.coefficients();
  h = c.front();
  return std::all_of(c.begin(), c.end(), [&](const Integer& v) { return v == h; });
}

inline void check_skew_invariants(const QuadraticModule& q, const EmbeddingSpec& spec) {
  const RingVector v2 = spec.v2();
  if (!q.lambda(v2, v2).is_zero()) {
    throw Error(ErrorKind::PreconditionFailed, "lambda(v2, v2) != 0");
  }
  const RingVector tail{GroupRingElement(spec.m), spec.a2, spec.f1_coefficient(), spec.b2};
  if (!q.is_primitive(tail)) {
    throw Error(ErrorKind::PreconditionFailed, "a2 e2 + c f1 + b2 f2 is not primitive");
  }
}

// Shared tail of both skew branches. v2 already has e1-coefficient that the
// complement does not care about; normalizes (a2, b2) and moves the
// (e2, f2)-part to v e2 + s f2.
inline void finish_skew(SolverTrace& trace, const QuadraticModule& q, const Rank2Options& opt) {
  const std::size_t m = q.modulus();
  const RingVector& v2 = trace.s_normalized[1];
  const GroupRingElement a2 = v2[1], b2 = v2[3];
  const GroupRingElement gens[] = {a2, b2};
  NormData nd = ideal_normalize(std::span<const GroupRingElement>(gens));
  const auto alpha = exact_divide(a2, nd.u);
  const auto beta = exact_divide(b2, nd.u);
  trace.division_ambiguous = alpha.ambiguous || beta.ambiguous;
  trace.alpha = alpha.quotient;
  trace.beta = beta.quotient;

  // For the unit ideal take v = 1, a = 0 instead of the b > 0 normal form,
  // so U comes out as {f1, f2}. b and m - b have the same parity for m even,
  // so the mu class of the target is unchanged.
  GroupRingElement v = nd.v;
  Integer a_int = nd.a;
  if (nd.l == 1) {
    v = GroupRingElement::one(m);
    a_int = 0;
  }
  const QuadraticModule block(m, 1, q.sign(), q.kind());
  const RingVector from{alpha.quotient, beta.quotient};
  const RingVector to{v, GroupRingElement::norm_element(m)};
  if (trace.input.branch == Branch::EvenMSkew && block.mu(from) != block.mu(to)) {
    throw Error(ErrorKind::ParityObstruction, "mu(alpha e2 + beta f2) is not [gen^(m/2)]");
  }
  Rank2Isometry phi = find_rank2_isometry(block, from, to, opt);
  trace.rank2_method = phi.method;
  record(trace, "block(e2,f2)", embed_block(q, 2, phi.matrix));
  trace.s_normalized = apply_all(trace.isometries.back().matrix, trace.s_normalized);
  trace.norm = nd;
  trace.v_used = v;
  trace.a_used = a_int;

  const GroupRingElement a = GroupRingElement::constant(m, a_int);
  const GroupRingElement zero(m), one = GroupRingElement::one(m);
  trace.u_normalized = {RingVector{zero, -a, one, zero}, RingVector{-a, zero, zero, one}};
}

inline void finish(SolverTrace& trace, const QuadraticModule& q) {
  const RingMatrix back = q.isometry_inverse(trace.composite());
  trace.u_basis = apply_all(back, trace.u_normalized);
  trace.certificate = verify_lagrangian_complement(q, trace.s_input, trace.u_basis);
}

inline SolverTrace start_trace(const EmbeddingSpec& spec) {
  return SolverTrace(spec);
}

}  // namespace detail

inline SolverTrace solve_odd_m(const EmbeddingSpec& spec, const Rank2Options& opt = {}) {
  if (spec.branch != Branch::OddMSkew) {
    throw Error(ErrorKind::PreconditionFailed, "spec is not ODD_M_SKEW");
  }
  if (spec.m % 2 == 0) {
    throw Error(ErrorKind::PreconditionFailed, "m must be odd");
  }
  const QuadraticModule q = spec.module();
  detail::check_skew_invariants(q, spec);
  if (!q.mu(spec.v2()).is_zero()) {
    throw Error(ErrorKind::PreconditionFailed, "mu(v2) != 0");
  }
  SolverTrace trace = detail::start_trace(spec);
  detail::finish_skew(trace, q, opt);
  detail::finish(trace, q);
  return trace;
}

inline SolverTrace solve_even_m(const EmbeddingSpec& spec, const Rank2Options& opt = {}) {
  if (spec.branch != Branch::EvenMSkew) {
    throw Error(ErrorKind::PreconditionFailed, "spec is not EVEN_M_SKEW");
  }
  if (spec.m % 2 != 0) {
    throw Error(ErrorKind::PreconditionFailed, "m must be even");
  }
  const std::size_t m = spec.m;
  const QuadraticModule q = spec.module();
  detail::check_skew_invariants(q, spec);

  const auto half = param_reduce(GroupRingElement::monomial(m, static_cast<long long>(m / 2)),
                                 FormParameterKind::Tilde);
  const ParameterClass mu2 = q.mu(spec.v2());
  SolverTrace trace = detail::start_trace(spec);
  if (mu2.is_zero()) {
    // v1 + v2 has mu = [s] = [gen^(m/2)] and the same span.
    trace.replaced_v2 = true;
    trace.s_working[1] = trace.s_working[0] + trace.s_working[1];
    trace.s_normalized = trace.s_working;
  } else if (mu2 != half) {
    throw Error(ErrorKind::PreconditionFailed, "mu(v2) is neither 0 nor [gen^(m/2)]");
  }

  const RingVector& v2 = trace.s_working[1];
  const GroupRingElement s = GroupRingElement::norm_element(m);
  std::vector<IntVector> cols = multiplication_columns(v2[1]);
  for (const auto& part : {s, v2[3]}) {
    const auto more = multiplication_columns(part);
    cols.insert(cols.end(), more.begin(), more.end());
  }
  const auto sol = solve_integer_system(cols, (-v2[0]).coefficients());
  if (!sol) {
    throw Error(ErrorKind::PreconditionFailed, "r a2 + k s + t b2 = -a1 has no solution");
  }
  auto slice = [&](std::size_t k) {
    const auto begin = sol->particular.begin() + static_cast<std::ptrdiff_t>(k * m);
    return GroupRingElement(m, IntVector(begin, begin + static_cast<std::ptrdiff_t>(m)));
  };
  trace.r = slice(0);
  trace.k = slice(1);
  trace.t = slice(2);

  detail::record(trace, "T", q.transvection(TransvectionKind::EF, 1, 2, *trace.t));
  detail::record(trace, "R", q.transvection(TransvectionKind::EE, 1, 2, *trace.r));
  trace.s_normalized = detail::apply_all(trace.composite(), trace.s_working);
  Integer h;
  if (!detail::is_multiple_of_norm(trace.s_normalized[1][0], h)) {
    throw Error(ErrorKind::NormalizationFailed, "e1-coefficient after R, T is not a multiple of s");
  }
  trace.h = h;

  detail::finish_skew(trace, q, opt);
  detail::finish(trace, q);
  return trace;
}

inline SolverTrace solve_even_n(const EmbeddingSpec& spec) {
  if (spec.branch != Branch::EvenNSym) {
    throw Error(ErrorKind::PreconditionFailed, "spec is not EVEN_N_SYM");
  }
  const std::size_t m = spec.m;
  const QuadraticModule q = spec.module();
  const RingVector v2 = spec.v2();
  if (augmentation(q.lambda(v2, v2)) != 0) {
    throw Error(ErrorKind::PreconditionFailed, "augmentation of lambda(v2, v2) is not 0");
  }
  const Integer ea = augmentation(spec.a2), eb = augmentation(spec.b2);
  if (abs(ea) != 1 && (ea != 0 || abs(eb) != 1)) {
    throw Error(ErrorKind::AugmentationObstruction, "neither augmentation of a2 nor of b2 is +-1");
  }
  const RingVector tail{GroupRingElement(m), spec.a2, spec.f1_coefficient(), spec.b2};
  if (!q.is_primitive(tail)) {
    throw Error(ErrorKind::PreconditionFailed, "a2 e2 + (1 - gen) f1 + b2 f2 is not primitive");
  }

  SolverTrace trace = detail::start_trace(spec);
  const GroupRingElement zero(m), one = GroupRingElement::one(m);
  Integer lead = ea;
  if (abs(ea) != 1) {
    detail::record(trace, "swap(e2,f2)", embed_block(q, 2, RingMatrix(m, {{zero, one}, {one, zero}})));
    lead = eb;
  }
  if (lead == -1) {
    detail::record(trace, "negate(e2,f2)", embed_block(q, 2, RingMatrix(m, {{-one, zero}, {zero, -one}})));
  }
  trace.s_normalized = detail::apply_all(trace.composite(), trace.s_working);

  const GroupRingElement a2 = trace.s_normalized[1][1];
  const auto div = exact_divide(a2 - one, one - GroupRingElement::monomial(m, 1));
  trace.division_ambiguous = div.ambiguous;
  trace.a_even = div.quotient;
  const GroupRingElement& a = div.quotient;
  trace.u_normalized = {RingVector{zero, a, one, zero}, RingVector{-involution(a), zero, zero, one}};
  detail::finish(trace, q);
  return trace;
}

inline SolverTrace solve(const EmbeddingSpec& spec, const Rank2Options& opt = {}) {
  switch (spec.branch) {
    case Branch::OddMSkew: return solve_odd_m(spec, opt);
    case Branch::EvenMSkew: return solve_even_m(spec, opt);
    case Branch::EvenNSym: return solve_even_n(spec);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown branch");
}

// Random valid inputs.

inline GroupRingElement random_element(std::mt19937_64& rng, std::size_t m, int height) {
  std::uniform_int_distribution<int> dist(-height, height);
  IntVector c(m);
  for (auto& v : c) {
    v = dist(rng);
  }
  return GroupRingElement(m, std::move(c));
}

/// Sparse element: a few +-gen^i terms.
inline GroupRingElement random_sparse(std::mt19937_64& rng, std::size_t m, int terms) {
  std::uniform_int_distribution<std::size_t> pos(0, m - 1);
  std::uniform_int_distribution<int> sign(0, 1);
  GroupRingElement x(m);
  for (int i = 0; i < terms; ++i) {
    x += GroupRingElement::monomial(m, static_cast<long long>(pos(rng)), sign(rng) ? 1 : -1);
  }
  return x;
}

/// A random word in isometries of span(e_k, f_k), of the given length.
inline RingMatrix random_block_isometry(const QuadraticModule& q, std::size_t k, std::mt19937_64& rng,
                                        std::size_t length) {
  const std::size_t m = q.modulus();
  const QuadraticModule block(m, 1, q.sign(), q.kind());
  const GroupRingElement zero(m), one = GroupRingElement::one(m);
  std::uniform_int_distribution<int> pick(0, 4);
  std::uniform_int_distribution<std::size_t> pos(0, m - 1);
  RingMatrix word = RingMatrix::identity(m, 2);
  for (std::size_t i = 0; i < length; ++i) {
    RingMatrix step = RingMatrix::identity(m, 2);
    switch (pick(rng)) {
      case 0: step = block.transvection(TransvectionKind::EF, 1, 1, random_sparse(rng, m, 1)); break;
      case 1: step = block.transvection(TransvectionKind::FE, 1, 1, random_sparse(rng, m, 1)); break;
      case 2: {
        const auto gi = GroupRingElement::monomial(m, static_cast<long long>(pos(rng)));
        step = RingMatrix(m, {{gi, zero}, {zero, gi}});
        break;
      }
      case 3: step = RingMatrix(m, {{-one, zero}, {zero, -one}}); break;
      default: step = RingMatrix(m, {{zero, GroupRingElement::constant(m, q.sign())}, {one, zero}}); break;
    }
    word = step * word;
  }
  return embed_block(q, k, word);
}

inline std::size_t random_unit_length(std::mt19937_64& rng, std::size_t m) {
  std::uniform_int_distribution<std::size_t> dist(1, 2 * m);
  for (;;) {
    const std::size_t l = dist(rng);
    if (std::gcd(l, m) == 1) {
      return l;
    }
  }
}

/// A valid skew-branch spec for the branch matching the parity of m.
inline EmbeddingSpec random_skew_spec(std::size_t m, std::mt19937_64& rng) {
  const QuadraticModule q(m, 2, -1, FormParameterKind::Tilde);
  const NormData nd = norm_data_for(m, random_unit_length(rng, m));
  const GroupRingElement s = GroupRingElement::norm_element(m);
  RingVector v2{random_sparse(rng, m, 2), nd.u * nd.v, s, nd.u * s};
  // Every move below fixes e1 and the f1-coordinate, so v1 = e1 and
  // lambda(v1, v2) = s survive.
  std::uniform_int_distribution<int> coin(0, 1);
  RingMatrix mix = random_block_isometry(q, 2, rng, 3);
  if (coin(rng)) {
    mix = q.transvection(TransvectionKind::EF, 1, 2, random_sparse(rng, m, 1)) * mix;
  }
  if (coin(rng)) {
    mix = q.transvection(TransvectionKind::EE, 1, 2, random_sparse(rng, m, 1)) * mix;
  }
  mix = random_block_isometry(q, 2, rng, 2) * mix;
  v2 = mix * v2;
  return {m, m % 2 ? Branch::OddMSkew : Branch::EvenMSkew, v2[0], v2[1], v2[3]};
}

inline EmbeddingSpec random_even_n_spec(std::size_t m, std::mt19937_64& rng) {
  const QuadraticModule q(m, 2, 1, FormParameterKind::Minus);
  const GroupRingElement one = GroupRingElement::one(m), zero(m);
  const GroupRingElement c = one - GroupRingElement::monomial(m, 1);
  RingVector v2{random_sparse(rng, m, 2), one + random_sparse(rng, m, 2) * c, c,
                random_sparse(rng, m, 2) * c};
  std::uniform_int_distribution<int> coin(0, 1);
  if (coin(rng)) {
    v2 = q.transvection(TransvectionKind::EF, 1, 2, random_sparse(rng, m, 1)) * v2;
  }
  if (coin(rng)) {
    v2 = q.transvection(TransvectionKind::EE, 1, 2, random_sparse(rng, m, 1)) * v2;
  }
  if (coin(rng)) {
    v2 = embed_block(q, 2, RingMatrix(m, {{zero, one}, {one, zero}})) * v2;
  }
  if (coin(rng)) {
    v2 = embed_block(q, 2, RingMatrix(m, {{-one, zero}, {zero, -one}})) * v2;
  }
  return {m, Branch::EvenNSym, v2[0], v2[1], v2[3]};
}

inline EmbeddingSpec random_spec(Branch branch, std::size_t m, std::mt19937_64& rng) {
  if (branch == Branch::EvenNSym) {
    return random_even_n_spec(m, rng);
  }
  if ((branch == Branch::OddMSkew) != (m % 2 == 1)) {
    throw Error(ErrorKind::PreconditionFailed, "branch does not match the parity of m");
  }
  return random_skew_spec(m, rng);
}

struct SweepReport {
  Branch branch;
  std::size_t m = 0;
  std::uint64_t seed = 0;
  std::size_t count = 0;
  std::size_t passed = 0;
  std::size_t not_complement = 0;
  std::size_t search_exhausted = 0;
  std::size_t other_errors = 0;
  std::map<std::string, std::size_t> rank2_methods;
  std::vector<std::string> incidents;

  double exhausted_rate() const { return count ? double(search_exhausted) / double(count) : 0.0; }
  friend bool operator==(const SweepReport&, const SweepReport&) = default;
};

/// Specs are drawn sequentially from one generator, then solved on `jobs`
/// worker threads; the report does not depend on `jobs`.
inline SweepReport sweep(Branch branch, std::size_t m, std::size_t count, std::uint64_t seed,
                         const Rank2Options& opt = {}, std::size_t jobs = 1) {
  std::mt19937_64 rng(seed ^ (std::uint64_t(m) << 32) ^ std::uint64_t(branch));
  std::vector<EmbeddingSpec> specs;
  for (std::size_t i = 0; i < count; ++i) {
    specs.push_back(random_spec(branch, m, rng));
  }

  struct Outcome {
    std::optional<ErrorKind> error;
    std::string text;  // rank-2 method, or the error message
  };
  std::vector<Outcome> outcomes(count);
  auto run = [&](std::size_t i) {
    try {
      outcomes[i].text = solve(specs[i], opt).rank2_method;
    } catch (const Error& e) {
      outcomes[i] = {e.kind(), e.what()};
    }
  };
  jobs = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(count, 1));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) run(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    for (std::size_t w = 0; w < jobs; ++w) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) run(i);
      });
    }
    for (auto& t : workers) t.join();
  }

  SweepReport rep;
  rep.branch = branch;
  rep.m = m;
  rep.seed = seed;
  rep.count = count;
  for (std::size_t i = 0; i < count; ++i) {
    const auto& o = outcomes[i];
    if (!o.error) {
      ++rep.passed;
      if (!o.text.empty()) ++rep.rank2_methods[o.text];
      continue;
    }
    if (*o.error == ErrorKind::NotComplement) {
      ++rep.not_complement;
    } else if (*o.error == ErrorKind::SearchExhausted) {
      ++rep.search_exhausted;
    } else {
      ++rep.other_errors;
    }
    rep.incidents.push_back("#" + std::to_string(i) + " " + o.text);
  }
  return rep;
}

}  // namespace freezm
