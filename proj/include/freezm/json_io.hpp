#pragma once

// JSON encodings. Integers that fit in 64 bits are numbers, larger ones are
// decimal strings; decoders accept both.

#include <string>
#include <vector>

#include "json.hpp"

#include "freezm/ahss.hpp"
#include "freezm/census.hpp"
#include "freezm/complement.hpp"
#include "freezm/error.hpp"
#include "freezm/form_parameter.hpp"
#include "freezm/group_ring.hpp"
#include "freezm/lagrangian.hpp"
#include "freezm/norm_ideal.hpp"
#include "freezm/ring_matrix.hpp"
#include "freezm/selftest.hpp"

namespace freezm::io {

using json = nlohmann::json;

inline json encode(const Integer& v) {
  if (auto small = to_int64(v)) {
    return *small;
  }
  return v.str();
}

inline Integer decode_integer(const json& j) {
  if (j.is_number_integer()) {
    return Integer(j.get<std::int64_t>());
  }
  if (j.is_string()) {
    try {
      return Integer(j.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  throw Error(ErrorKind::InvalidArgument, "expected an integer, got " + j.dump());
}

inline json encode(const GroupRingElement& x) {
  json coeffs = json::array();
  for (const auto& c : x.coefficients()) {
    coeffs.push_back(encode(c));
  }
  return {{"m", x.modulus()}, {"coeffs", coeffs}};
}

/// Accepts {"m": m, "coeffs": [...]} or a bare coefficient array. When
/// `m` is nonzero it must agree with the element.
inline GroupRingElement decode_element(const json& j, std::size_t m = 0) {
  const json* coeffs = &j;
  std::size_t declared = 0;
  if (j.is_object()) {
    if (!j.contains("coeffs")) {
      throw Error(ErrorKind::InvalidArgument, "element object needs \"coeffs\"");
    }
    coeffs = &j.at("coeffs");
    if (j.contains("m")) {
      declared = j.at("m").get<std::size_t>();
    }
  }
  if (!coeffs->is_array()) {
    throw Error(ErrorKind::InvalidArgument, "element coefficients must be an array");
  }
  IntVector c;
  for (const auto& v : *coeffs) {
    c.push_back(decode_integer(v));
  }
  if (declared == 0) {
    declared = c.size();
  }
  if (m != 0 && declared != m) {
    throw Error(ErrorKind::ModulusMismatch,
                "element has m = " + std::to_string(declared) + ", expected " + std::to_string(m));
  }
  return GroupRingElement(declared, std::move(c));
}

inline json encode(const ParameterClass& c) {
  json j = encode(c.representative);
  j["kind"] = std::string(to_string(c.kind));
  return j;
}

inline json encode(const RingVector& x) {
  json out = json::array();
  for (const auto& c : x.coords()) {
    out.push_back(encode(c));
  }
  return out;
}

inline RingVector decode_vector(const json& j, std::size_t m = 0) {
  if (!j.is_array() || j.empty()) {
    throw Error(ErrorKind::InvalidArgument, "vector must be a nonempty array of elements");
  }
  std::vector<GroupRingElement> coords;
  for (const auto& c : j) {
    coords.push_back(decode_element(c, m));
  }
  return RingVector(std::move(coords));
}

inline std::vector<RingVector> decode_vectors(const json& j, std::size_t m = 0) {
  std::vector<RingVector> out;
  for (const auto& x : j) {
    out.push_back(decode_vector(x, m));
  }
  return out;
}

inline json encode(const std::vector<RingVector>& xs) {
  json out = json::array();
  for (const auto& x : xs) {
    out.push_back(encode(x));
  }
  return out;
}

inline json encode(const RingMatrix& a) {
  json rows = json::array();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < a.cols(); ++j) {
      row.push_back(encode(a(i, j)));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

inline RingMatrix decode_matrix(const json& j, std::size_t m) {
  if (!j.is_array() || j.empty() || !j.front().is_array()) {
    throw Error(ErrorKind::InvalidArgument, "matrix must be a nested array");
  }
  const std::size_t rows = j.size(), cols = j.front().size();
  RingMatrix a(m, rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (j[i].size() != cols) {
      throw Error(ErrorKind::DimensionMismatch, "ragged matrix");
    }
    for (std::size_t k = 0; k < cols; ++k) {
      a(i, k) = decode_element(j[i][k], m);
    }
  }
  return a;
}

inline json encode(const NormData& nd) {
  const auto alt = nd.unit_convention();
  return {{"u", encode(nd.u)},
          {"v", encode(nd.v)},
          {"l", encode(nd.l)},
          {"a", encode(nd.a)},
          {"b", encode(nd.b)},
          {"unit_convention", {{"v", encode(alt.v)}, {"a", encode(alt.a)}, {"b", encode(alt.b)}}}};
}

inline json encode(const ComplementCertificate& c) {
  json gram = json::array();
  for (const auto& row : c.gram) {
    json r = json::array();
    for (const auto& x : row) r.push_back(encode(x));
    gram.push_back(std::move(r));
  }
  json mu = json::array();
  for (const auto& x : c.mu) mu.push_back(encode(x));
  return {{"passed", c.passed},
          {"failure", c.failure},
          {"S", encode(c.s_basis)},
          {"U", encode(c.u_basis)},
          {"gram_evidence", gram},
          {"mu_evidence", mu},
          {"det_evidence",
           {{"matrix", encode(c.basis_matrix)},
            {"determinant", encode(c.determinant)},
            {"inverse", c.determinant_inverse ? encode(*c.determinant_inverse) : json(nullptr)}}}};
}

inline json encode(const EmbeddingSpec& s) {
  return {{"m", s.m},
          {"branch", std::string(to_string(s.branch))},
          {"a1", encode(s.a1)},
          {"a2", encode(s.a2)},
          {"b2", encode(s.b2)}};
}

/// Fields missing from `j` fall back to the given m and branch.
inline EmbeddingSpec decode_spec(const json& j, std::size_t m, Branch branch) {
  if (j.contains("m")) {
    const auto declared = j.at("m").get<std::size_t>();
    if (m != 0 && declared != m) {
      throw Error(ErrorKind::ModulusMismatch, "spec m differs from --m");
    }
    m = declared;
  }
  if (j.contains("branch")) {
    branch = parse_branch(j.at("branch").get<std::string>());
  }
  if (m == 0) {
    throw Error(ErrorKind::InvalidArgument, "spec needs m");
  }
  auto field = [&](const char* name) {
    return j.contains(name) ? decode_element(j.at(name), m) : GroupRingElement(m);
  };
  return {m, branch, field("a1"), field("a2"), field("b2")};
}

inline json encode(const SolverTrace& t) {
  json isos = json::array();
  for (const auto& iso : t.isometries) {
    isos.push_back({{"name", iso.name}, {"matrix", encode(iso.matrix)}});
  }
  json j = {{"input", encode(t.input)},
            {"S_input", encode(t.s_input)},
            {"replaced_v2", t.replaced_v2},
            {"S_working", encode(t.s_working)},
            {"isometries", isos},
            {"S_normalized", encode(t.s_normalized)},
            {"division_ambiguous", t.division_ambiguous},
            {"U_normalized", encode(t.u_normalized)},
            {"U", encode(t.u_basis)}};
  if (!t.rank2_method.empty()) j["rank2_method"] = t.rank2_method;
  if (t.norm) j["norm"] = encode(*t.norm);
  if (t.v_used) j["v_used"] = encode(*t.v_used);
  if (t.a_used) j["a_used"] = encode(*t.a_used);
  if (t.alpha) j["alpha"] = encode(*t.alpha);
  if (t.beta) j["beta"] = encode(*t.beta);
  if (t.r) j["r"] = encode(*t.r);
  if (t.k) j["k"] = encode(*t.k);
  if (t.t) j["t"] = encode(*t.t);
  if (t.h) j["h"] = encode(*t.h);
  if (t.a_even) j["a"] = encode(*t.a_even);
  if (t.certificate) j["certificate"] = encode(*t.certificate);
  return j;
}

inline json encode(const SweepReport& r) {
  return {{"branch", std::string(to_string(r.branch))},
          {"m", r.m},
          {"seed", r.seed},
          {"count", r.count},
          {"passed", r.passed},
          {"not_complement", r.not_complement},
          {"search_exhausted", r.search_exhausted},
          {"search_exhausted_rate", r.exhausted_rate()},
          {"other_errors", r.other_errors},
          {"rank2_methods", r.rank2_methods},
          {"incidents", r.incidents}};
}

inline json encode(const CohomologyClass& c) {
  json terms = json::array();
  for (const auto& t : c.terms()) {
    terms.push_back(CohomologyClass::monomial_string(t));
  }
  return {{"m", c.modulus()},
          {"ring", std::string(to_string(c.ring()))},
          {"degree", c.degree()},
          {"terms", terms},
          {"text", c.str()}};
}

inline json encode(const Differential& d) {
  return {{"page", d.page},
          {"source", {d.source.p, d.source.q}},
          {"target", {d.target.p, d.target.q}},
          {"rank", d.rank},
          {"provenance", std::string(to_string(d.provenance))},
          {"note", d.note}};
}

inline json encode(const SpectralPage& page) {
  json entries = json::array();
  for (const auto& [at, group] : page.entries) {
    entries.push_back({{"p", at.p}, {"q", at.q}, {"group", group}, {"text", group_string(group)}});
  }
  json diffs = json::array();
  for (const auto& d : page.differentials) diffs.push_back(encode(d));
  return {{"page", page.page}, {"entries", entries}, {"differentials", diffs}};
}

inline json encode(const SpinLineReport& r) {
  json line = json::array();
  for (const auto& e : r.entries) {
    line.push_back({{"p", e.at.p},
                    {"q", e.at.q},
                    {"E2", group_string(e.e2)},
                    {"d2_in_rank", e.rank_in},
                    {"d2_out_rank", e.rank_out},
                    {"E3", group_string(e.e3)},
                    {"killed_by_higher_differential", e.killed_later}});
  }
  json higher = json::array();
  for (const auto& d : r.higher) higher.push_back(encode(d));
  json steps = json::array();
  bool cited = false;
  for (const auto& s : r.steps) {
    steps.push_back({{"text", s.text}, {"provenance", std::string(to_string(s.provenance))}});
  }
  for (const auto& d : r.higher) cited = cited || d.provenance == Provenance::PaperCited;
  return {{"m", r.m},
          {"twisted", r.twisted},
          {"effective_twisted", r.effective_twisted},
          {"line", r.line},
          {"entries", encode(r.e2)},
          {"line_entries", line},
          {"differentials", higher},
          {"steps", steps},
          {"conclusion", r.conclusion_zero ? "zero" : "nonzero"},
          {"provenance", cited ? "COMPUTED+PAPER_CITED" : "COMPUTED"},
          {"bibliography", r.bibliography}};
}

inline json encode(const CensusReport& r) {
  json j = {{"n", r.query.n},
            {"m", r.query.m},
            {"genus", encode(r.query.genus)},
            {"exists", r.existence.exists},
            {"reason", r.existence.reason},
            {"euler_char",
             {{"numerator", encode(r.existence.euler_numerator)},
              {"denominator", encode(r.existence.euler_denominator)},
              {"integral", r.existence.euler_integral}}},
            {"descriptors", r.descriptors},
            {"realizable_module", r.realizable_module},
            {"notes", r.notes}};
  if (r.existence.euler_integral) {
    j["euler_char"]["value"] = encode(r.existence.euler_numerator / r.existence.euler_denominator);
  }
  if (r.out_of_range) {
    j["class_count"] = "OUT_OF_RANGE";
  } else if (r.class_count) {
    j["class_count"] = encode(*r.class_count);
  } else {
    j["class_count"] = nullptr;
  }
  j["parameterization"] = r.parameterization;
  j["conjugation"] = r.conjugation ? json(std::string(to_string(*r.conjugation))) : json(nullptr);
  if (r.summand_copies) j["summand_copies"] = encode(*r.summand_copies);
  if (!r.class_descriptor.empty()) j["class_descriptor"] = r.class_descriptor;
  if (r.query.pontryagin) {
    json p = json::array();
    for (const auto& v : *r.query.pontryagin) p.push_back(encode(v));
    j["pontryagin"] = p;
  }
  return j;
}

inline json encode(const RunSummary& r) {
  json suites = json::array();
  for (const auto& s : r.suites) {
    suites.push_back({{"name", s.name},
                      {"seed", s.seed},
                      {"passed", s.passed},
                      {"failed", s.failed},
                      {"skipped", s.skipped},
                      {"total", s.total()},
                      {"failures", s.failures}});
  }
  return {{"scope", r.scope},
          {"seed", r.seed},
          {"suites", suites},
          {"passed", r.passed()},
          {"failed", r.failed()},
          {"skipped", r.skipped()},
          {"total", r.total()},
          {"search_exhausted", r.search_exhausted},
          {"elapsed_seconds", r.elapsed_seconds}};
}

inline json encode_error(const Error& e) {
  return {{"error", {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}}}};
}

}  // namespace freezm::io
