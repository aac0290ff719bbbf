#pragma once

// Command line front end. JSON results go to `out`, human-readable lines to
// `err` (silenced by --json). Exit codes: 0 success, 1 error, 2 no such
// action (census), 3 out of range (census), 4 a check came back negative.

#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "freezm/freezm.hpp"

namespace freezm::cli {

using io::json;

struct Globals {
  std::uint64_t seed = 1;
  bool json_only = false;
  std::size_t jobs = 1;
};

template <class T>
std::string text(const T& x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

inline json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::InvalidArgument, "cannot parse JSON from " + origin + ": " + e.what());
  }
}

/// Inline JSON when the text starts like JSON, otherwise a file path.
inline json load_json_argument(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (text[first] == '{' || text[first] == '[')) {
    return parse_json_text(text, "argument");
  }
  std::ifstream file(text);
  if (!file) {
    throw Error(ErrorKind::InvalidArgument, "cannot open '" + text + "'");
  }
  return parse_json_text(std::string(std::istreambuf_iterator<char>(file), {}), text);
}

/// The first "m" found anywhere in the document.
inline std::size_t find_modulus(const json& j) {
  if (j.is_object()) {
    if (j.contains("m") && j.at("m").is_number_unsigned()) return j.at("m").get<std::size_t>();
    for (const auto& [key, value] : j.items()) {
      if (auto m = find_modulus(value)) return m;
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (auto m = find_modulus(v)) return m;
    }
  }
  return 0;
}

inline const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) {
    throw Error(ErrorKind::InvalidArgument, std::string("input needs \"") + name + "\"");
  }
  return j.at(name);
}

inline CohomologyClass parse_class(std::size_t m, const std::string& text) {
  std::optional<CohomologyClass> sum;
  std::stringstream ss(text);
  std::string term;
  while (std::getline(ss, term, '+')) {
    const auto c = parse_monomial(m, term);
    sum = sum ? *sum + c : c;
  }
  if (!sum) {
    throw Error(ErrorKind::InvalidArgument, "empty class");
  }
  return *sum;
}

inline int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  Globals g;
  CLI::App app{"Free cyclic actions on connected sums of sphere products: algebra, spectral sequence and census"};
  app.name("freezm");
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--seed", g.seed, "random seed for sweeps and the selftest")->capture_default_str();
  app.add_flag("--json", g.json_only, "machine output only: silence the human-readable stream");
  app.add_option("--jobs", g.jobs, "worker threads for sweeps and the selftest")
      ->capture_default_str()
      ->check(CLI::Range(std::size_t(1), std::size_t(256)));

  std::function<int()> action;
  std::string input_arg;
  auto input = [&]() -> json {
    if (!input_arg.empty()) return load_json_argument(input_arg);
    return parse_json_text(std::string(std::istreambuf_iterator<char>(in), {}), "standard input");
  };
  auto emit = [&](const json& j) { out << j.dump(2) << "\n"; };
  auto say = [&](const std::string& line) {
    if (!g.json_only) err << line << "\n";
  };

  // ---- ring ----
  auto* ring = app.add_subcommand("ring", "group ring arithmetic on Z[Z/m]");
  ring->require_subcommand(1);
  std::size_t ring_m = 0;
  std::string ring_param = "TILDE";
  ring->add_option("--m", ring_m, "group order (needed for bare coefficient arrays)");
  ring->add_option("--input", input_arg, "JSON text or file; standard input otherwise");
  auto ring_element = [&](const json& j, const char* name) {
    const std::size_t m = ring_m ? ring_m : find_modulus(j);
    return io::decode_element(field(j, name), m);
  };
  ring->add_subcommand("mul", "product of x and y")->callback([&] {
    action = [&] {
      const json j = input();
      const auto p = ring_element(j, "x") * ring_element(j, "y");
      emit({{"product", io::encode(p)}});
      say("x*y = " + text(p));
      return 0;
    };
  });
  ring->add_subcommand("conj", "involution gen -> gen^-1")->callback([&] {
    action = [&] {
      const auto c = involution(ring_element(input(), "x"));
      emit({{"conjugate", io::encode(c)}});
      say("conj(x) = " + text(c));
      return 0;
    };
  });
  ring->add_subcommand("aug", "augmentation")->callback([&] {
    action = [&] {
      const auto x = ring_element(input(), "x");
      const Integer a = augmentation(x);
      emit({{"augmentation", io::encode(a)}, {"mod2", augmentation_mod2(x)}});
      say("aug(x) = " + a.str());
      return 0;
    };
  });
  ring->add_subcommand("divide", "exact division x / d")->callback([&] {
    action = [&] {
      const json j = input();
      const auto r = exact_divide(ring_element(j, "x"), ring_element(j, "d"));
      emit({{"quotient", io::encode(r.quotient)}, {"ambiguous", r.ambiguous}});
      say("x/d = " + text(r.quotient) + (r.ambiguous ? "  (one of several)" : ""));
      return 0;
    };
  });
  ring->add_subcommand("normalize", "write the ideal A with A + (s) = Lambda as u*Lambda")->callback([&] {
    action = [&] {
      const json j = input();
      const std::size_t m = ring_m ? ring_m : find_modulus(j);
      std::vector<GroupRingElement> gens;
      for (const auto& e : field(j, "generators")) gens.push_back(io::decode_element(e, m));
      const NormData nd = ideal_normalize(std::span<const GroupRingElement>(gens));
      emit(io::encode(nd));
      say("l = " + nd.l.str() + ", a = " + nd.a.str() + ", b = " + nd.b.str());
      return 0;
    };
  });
  auto* ring_reduce = ring->add_subcommand("reduce", "class of x modulo a form parameter");
  ring_reduce->add_option("--param", ring_param, "TILDE, PLUS or MINUS")->capture_default_str();
  ring_reduce->callback([&] {
    action = [&] {
      const auto c = param_reduce(ring_element(input(), "x"), parse_form_parameter_kind(ring_param));
      emit({{"class", io::encode(c)}, {"zero", c.is_zero()}});
      say("[x] = " + text(c.representative));
      return 0;
    };
  });

  // ---- form ----
  auto* form = app.add_subcommand("form", "hyperbolic quadratic forms over Z[Z/m]");
  form->require_subcommand(1);
  std::size_t form_m = 0, form_rank = 0;
  int form_sign = -1;
  std::string form_param;
  form->add_option("--m", form_m, "group order (read from the input when absent)");
  form->add_option("--rank", form_rank, "hyperbolic rank r (inferred from the input when absent)");
  form->add_option("--sign", form_sign, "symmetry sign, -1 or 1")->capture_default_str()->check(CLI::IsMember({-1, 1}));
  form->add_option("--param", form_param, "TILDE, PLUS or MINUS (default TILDE for -1, MINUS for 1)");
  form->add_option("--input", input_arg, "JSON text or file; standard input otherwise");
  auto module_for = [&](const json& j, std::size_t inferred_dim) {
    const std::size_t m = form_m ? form_m : find_modulus(j);
    if (m == 0) throw Error(ErrorKind::InvalidArgument, "cannot tell m; pass --m");
    const std::size_t rank = form_rank ? form_rank : inferred_dim / 2;
    const auto kind = form_param.empty() ? (form_sign < 0 ? FormParameterKind::Tilde : FormParameterKind::Minus)
                                         : parse_form_parameter_kind(form_param);
    return QuadraticModule(m, rank, form_sign, kind);
  };
  auto form_vector = [&](const json& j, const char* name) { return io::decode_vector(field(j, name), form_m); };
  form->add_subcommand("eval", "lambda(x, y)")->callback([&] {
    action = [&] {
      const json j = input();
      const auto x = form_vector(j, "x"), y = form_vector(j, "y");
      const auto q = module_for(j, x.size());
      const auto l = lambda_eval(q, x, y);
      emit({{"lambda", io::encode(l)}});
      say("lambda(x, y) = " + text(l));
      return 0;
    };
  });
  form->add_subcommand("mu", "mu(x) in Lambda modulo the form parameter")->callback([&] {
    action = [&] {
      const json j = input();
      const auto x = form_vector(j, "x");
      const auto q = module_for(j, x.size());
      const auto c = mu_eval(q, x);
      emit({{"mu", io::encode(c)}, {"lift", io::encode(q.mu_lift(x))}, {"zero", c.is_zero()}});
      say("mu(x) = [" + text(c.representative) + "]");
      return 0;
    };
  });
  form->add_subcommand("primitive", "is x part of a basis")->callback([&] {
    action = [&] {
      const json j = input();
      const auto x = form_vector(j, "x");
      const bool p = is_primitive(module_for(j, x.size()), x);
      emit({{"primitive", p}});
      say(p ? "primitive" : "not primitive");
      return 0;
    };
  });
  form->add_subcommand("isometry", "does the matrix preserve lambda and mu")->callback([&] {
    action = [&] {
      const json j = input();
      const std::size_t m = form_m ? form_m : find_modulus(j);
      const auto mat = io::decode_matrix(field(j, "matrix"), m);
      const auto q = module_for(j, mat.rows());
      const bool iso = isometry_check(q, mat);
      emit({{"isometry", iso},
            {"preserves_lambda", q.preserves_lambda(mat)},
            {"unitary_relation", q.preserves_unitary_relation(mat)}});
      say(iso ? "isometry" : "not an isometry");
      return iso ? 0 : 4;
    };
  });
  form->add_subcommand("det", "determinant of a square matrix over Lambda")->callback([&] {
    action = [&] {
      const json j = input();
      const std::size_t m = form_m ? form_m : find_modulus(j);
      if (m == 0) throw Error(ErrorKind::InvalidArgument, "cannot tell m; pass --m");
      const auto mat = io::decode_matrix(field(j, "matrix"), m);
      const auto d = ring_det(mat);
      const auto inv = unit_inverse(d);
      emit({{"determinant", io::encode(d)}, {"unit", inv.has_value()}, {"inverse", inv ? io::encode(*inv) : json()}});
      say("det = " + text(d) + (inv ? " (a unit)" : ""));
      return 0;
    };
  });
  form->add_subcommand("verify", "is U a Lagrangian complement of S")->callback([&] {
    action = [&] {
      const json j = input();
      const auto s = io::decode_vectors(field(j, "S"), form_m);
      const auto u = io::decode_vectors(field(j, "U"), form_m);
      if (s.empty()) throw Error(ErrorKind::DimensionMismatch, "S is empty");
      const auto q = module_for(j, s.front().size());
      const auto cert = check_lagrangian_complement(q, s, u);
      emit(io::encode(cert));
      say(cert.passed ? "U is a Lagrangian complement of S" : "not a complement: " + cert.failure);
      return cert.passed ? 0 : 4;
    };
  });
  form->add_subcommand("transvection", "matrix of an elementary isometry")->callback([&] {
    action = [&] {
      const json j = input();
      const std::size_t m = form_m ? form_m : find_modulus(j);
      if (m == 0) throw Error(ErrorKind::InvalidArgument, "cannot tell m; pass --m");
      const QuadraticModule q = module_for(j, 2 * (form_rank ? form_rank : 2));
      const auto kind = parse_transvection_kind(field(j, "kind").get<std::string>());
      const auto mat = transvection(q, kind, field(j, "i").get<std::size_t>(), field(j, "j").get<std::size_t>(),
                                    io::decode_element(field(j, "c"), m));
      emit({{"matrix", io::encode(mat)}});
      say(std::string(to_string(kind)) + " transvection on rank " + std::to_string(q.rank()));
      return 0;
    };
  });

  // ---- lagrangian ----
  auto* lag = app.add_subcommand("lagrangian", "Lagrangian complements of rank-2 embeddings");
  lag->require_subcommand(1);
  std::size_t lag_m = 0, lag_count = 100;
  std::string lag_branch, lag_spec;
  Rank2Options opt;
  bool no_constructive = false;
  auto add_budget = [&](CLI::App* sub) {
    sub->add_option("--max-word-length", opt.max_word_length, "rank-2 search word length")->capture_default_str();
    sub->add_option("--height", opt.coefficient_height, "coefficient bound for the search (0 means 2m)")
        ->capture_default_str();
    sub->add_option("--budget", opt.state_budget, "search state budget")->capture_default_str();
    sub->add_flag("--no-constructive", no_constructive, "skip the constructive rank-2 step and search directly");
  };
  auto* solve_cmd = lag->add_subcommand("solve", "solve one embedding and certify the complement");
  solve_cmd->add_option("--branch", lag_branch, "odd-m, even-m or even-n")->required();
  solve_cmd->add_option("--m", lag_m, "group order")->required()->check(CLI::PositiveNumber);
  solve_cmd->add_option("--spec", lag_spec, "JSON {a1, a2, b2} inline or as a file")->required();
  add_budget(solve_cmd);
  solve_cmd->callback([&] {
    action = [&] {
      opt.constructive = !no_constructive;
      const auto spec = io::decode_spec(load_json_argument(lag_spec), lag_m, parse_branch(lag_branch));
      const SolverTrace trace = solve(spec, opt);
      emit(io::encode(trace));
      say(std::string(to_string(spec.branch)) + " m=" + std::to_string(spec.m) + ": complement certified" +
          (trace.rank2_method.empty() ? "" : " (rank-2 step: " + trace.rank2_method + ")"));
      return 0;
    };
  });
  auto* sweep_cmd = lag->add_subcommand("sweep", "randomized sweep over valid embeddings");
  sweep_cmd->add_option("--m", lag_m, "group order")->required()->check(CLI::Range(2, 64));
  sweep_cmd->add_option("--count", lag_count, "specs per branch")->capture_default_str();
  sweep_cmd->add_option("--branch", lag_branch, "restrict to one branch");
  add_budget(sweep_cmd);
  sweep_cmd->callback([&] {
    action = [&] {
      opt.constructive = !no_constructive;
      std::vector<Branch> branches;
      if (!lag_branch.empty()) {
        branches.push_back(parse_branch(lag_branch));
      } else {
        branches = {lag_m % 2 ? Branch::OddMSkew : Branch::EvenMSkew, Branch::EvenNSym};
      }
      json reports = json::array();
      bool clean = true;
      for (auto b : branches) {
        const auto rep = sweep(b, lag_m, lag_count, g.seed, opt, g.jobs);
        reports.push_back(io::encode(rep));
        clean = clean && rep.not_complement == 0 && rep.other_errors == 0;
        std::ostringstream line;
        line << to_string(b) << " m=" << lag_m << ": " << rep.passed << "/" << rep.count << " certified, "
             << rep.search_exhausted << " SearchExhausted, " << rep.not_complement << " NotComplement, "
             << rep.other_errors << " other";
        say(line.str());
      }
      emit({{"seed", g.seed}, {"reports", reports}});
      return clean ? 0 : 1;
    };
  });

  // ---- ahss ----
  auto* ahss = app.add_subcommand("ahss", "Atiyah-Hirzebruch spectral sequence for spin bordism of K(Z/m,1)");
  ahss->require_subcommand(1);
  std::size_t ahss_m = 0;
  bool twisted = false;
  unsigned sq_k = 0, d2_p = 0;
  std::string class_text;
  auto* report_cmd = ahss->add_subcommand("report", "the line p+q = 6");
  report_cmd->add_option("--m", ahss_m, "group order")->required()->check(CLI::Range(2, 1 << 20));
  report_cmd->add_flag("--twisted", twisted, "twist by the nontrivial class w2");
  report_cmd->callback([&] {
    action = [&] {
      const auto rep = spin_line_report(ahss_m, twisted);
      emit(io::encode(rep));
      for (const auto& e : rep.entries) {
        std::ostringstream line;
        line << "E(" << e.at.p << "," << e.at.q << "): E2 " << group_string(e.e2) << ", E3 " << group_string(e.e3)
             << (e.killed_later ? ", killed later" : "");
        say(line.str());
      }
      say(std::string("conclusion: ") + (rep.conclusion_zero ? "zero" : "nonzero"));
      return 0;
    };
  });
  auto* page_cmd = ahss->add_subcommand("page", "the E2 page for p+q <= 8");
  page_cmd->add_option("--m", ahss_m, "group order")->required()->check(CLI::Range(2, 1 << 20));
  page_cmd->add_flag("--twisted", twisted, "twist by the nontrivial class w2");
  page_cmd->callback([&] {
    action = [&] {
      emit(io::encode(e2_page(ahss_m, twisted)));
      return 0;
    };
  });
  auto* sq_cmd = ahss->add_subcommand("sq", "Steenrod square of a class in H*(K(Z/m,1); Z/2)");
  sq_cmd->add_option("--m", ahss_m, "group order (even)")->required();
  sq_cmd->add_option("--k", sq_k, "square index")->required();
  sq_cmd->add_option("--class", class_text, "monomial or sum, e.g. x^3 or x y")->required();
  sq_cmd->callback([&] {
    action = [&] {
      const auto c = parse_class(ahss_m, class_text);
      const auto r = steenrod_square(sq_k, c);
      emit({{"input", io::encode(c)}, {"k", sq_k}, {"result", io::encode(r)}});
      say("Sq^" + std::to_string(sq_k) + "(" + c.str() + ") = " + r.str());
      return 0;
    };
  });
  auto* d2_cmd = ahss->add_subcommand("d2", "rank of Sq^2 (+ w2) from degree p-2 to p");
  d2_cmd->add_option("--m", ahss_m, "group order (even)")->required();
  d2_cmd->add_option("--p", d2_p, "target degree")->required();
  d2_cmd->add_flag("--twisted", twisted, "add cup product with w2");
  d2_cmd->callback([&] {
    action = [&] {
      const auto rank = d2_rank(ahss_m, d2_p, twisted);
      emit({{"m", ahss_m}, {"p", d2_p}, {"twisted", twisted}, {"rank", rank}});
      say("rank " + std::to_string(rank));
      return 0;
    };
  });

  // ---- census ----
  auto* census = app.add_subcommand("census", "existence and classification of free Z/m actions");
  int census_n = 0;
  std::uint64_t census_m = 0;
  std::string census_g, census_p;
  census->add_option("--n", census_n, "sphere dimension n")->required();
  census->add_option("--m", census_m, "group order")->required();
  census->add_option("--g", census_g, "genus of the connected sum")->required();
  census->add_option("--pontryagin", census_p, "residues r1,r2,... mod m");
  census->callback([&] {
    action = [&] {
      ActionQuery q;
      q.n = census_n;
      q.m = census_m;
      try {
        q.genus = Integer(census_g);
      } catch (const std::exception&) {
        throw Error(ErrorKind::InvalidArgument, "genus must be an integer");
      }
      if (!census_p.empty()) {
        std::vector<Integer> residues;
        std::stringstream ss(census_p);
        std::string item;
        while (std::getline(ss, item, ',')) {
          try {
            residues.emplace_back(item);
          } catch (const std::exception&) {
            throw Error(ErrorKind::InvalidArgument, "bad Pontryagin residue '" + item + "'");
          }
        }
        q.pontryagin = residues;
      }
      const CensusReport rep = classification(q);
      emit(io::encode(rep));
      say(rep.existence.reason);
      if (!rep.existence.exists) return 2;
      if (rep.out_of_range) {
        say("class count: OUT_OF_RANGE");
        return 3;
      }
      say("classes: " + rep.class_count->str() + " (" + rep.parameterization + ")");
      for (const auto& d : rep.descriptors) say("model: " + d);
      return 0;
    };
  });

  // ---- selftest ----
  auto* self = app.add_subcommand("selftest", "run the invariant and acceptance suites");
  std::string scope = "all";
  self->add_option("--scope", scope, "ring, forms, lagrangian, ahss, census or all")
      ->capture_default_str()
      ->check(CLI::IsMember({"ring", "forms", "lagrangian", "ahss", "census", "all"}));
  self->callback([&] {
    action = [&] {
      const RunSummary sum = selftest(scope, g.seed, g.jobs);
      emit(io::encode(sum));
      for (const auto& s : sum.suites) {
        say(s.name + ": " + std::to_string(s.passed) + " passed, " + std::to_string(s.failed) + " failed, " +
            std::to_string(s.skipped) + " skipped");
        for (const auto& f : s.failures) say("  FAIL " + f);
      }
      for (const auto& inc : sum.search_exhausted) say("  SearchExhausted " + inc);
      return sum.ok() ? 0 : 1;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }
  if (!action) {
    err << app.help() << "\n";
    return 1;
  }
  try {
    return action();
  } catch (const Error& e) {
    emit(io::encode_error(e));
    err << e.what() << "\n";
    return 1;
  } catch (const json::exception& e) {
    const Error wrapped(ErrorKind::InvalidArgument, e.what());
    emit(io::encode_error(wrapped));
    err << wrapped.what() << "\n";
    return 1;
  }
}

}  // namespace freezm::cli
