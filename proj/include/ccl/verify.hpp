#pragma once

// Verification harness: crystal-side checks, monodromy-vs-crystal comparisons, and JSON / JUnit
// reports. Each case carries the acceptance criterion it belongs to.

#include "ccl/character.hpp"
#include "ccl/monodromy.hpp"
#include "ccl/suite.hpp"

#include <chrono>
#include <cstdlib>
#include <optional>
#include <set>

namespace ccl {

enum class Verdict { Equal, Mismatch, Inconclusive };

inline std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Equal: return "equal";
    case Verdict::Mismatch: return "mismatch";
    default: return "inconclusive";
  }
}

struct VerificationReport {
  std::string id;
  int criterion = 0;
  std::string claim;
  Verdict verdict = Verdict::Equal;
  std::optional<Perm> crystal_perm, monodromy_perm;
  std::string message;
  std::optional<Diagnostics> diag;
  std::optional<std::uint64_t> seed;
  double seconds = 0;
  nlohmann::ordered_json details = nlohmann::ordered_json::object();

  bool equal() const { return verdict == Verdict::Equal; }

  nlohmann::ordered_json to_json(bool with_timing = false) const {
    nlohmann::ordered_json j;
    j["id"] = id;
    j["criterion"] = criterion;
    j["claim"] = claim;
    j["verdict"] = verdict_name(verdict);
    j["crystal_permutation"] = crystal_perm ? nlohmann::ordered_json(*crystal_perm) : nlohmann::ordered_json(nullptr);
    j["monodromy_permutation"] = monodromy_perm ? nlohmann::ordered_json(*monodromy_perm) : nlohmann::ordered_json(nullptr);
    j["message"] = message;
    j["seed"] = seed ? nlohmann::ordered_json(*seed) : nlohmann::ordered_json(nullptr);
    j["diagnostics"] = diag ? diag->to_json() : nlohmann::ordered_json(nullptr);
    j["details"] = details;
    if (with_timing) j["seconds"] = seconds;
    return j;
  }
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  Tolerances tol;
};

namespace detail {

// Runs a case body, timing it and mapping numeric failures to "inconclusive".
template <class F>
VerificationReport run_case(std::string id, int criterion, std::string claim, F&& body) {
  VerificationReport r;
  r.id = std::move(id);
  r.criterion = criterion;
  r.claim = std::move(claim);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(r);
  } catch (const NumericFailure& e) {
    r.verdict = Verdict::Inconclusive;
    r.message = e.what();
  } catch (const std::exception& e) {
    r.verdict = Verdict::Mismatch;
    r.message = std::string("error: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

inline std::string join_ints(const std::vector<int>& v, const char* sep = ",") {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? sep : "") + std::to_string(v[k]);
  return s;
}

inline CrystalPtr gen(const std::string& type, const std::vector<int>& lambda) {
  return share(generate_crystal(RootSystem::build(type), make_weight(lambda)));
}

inline std::string node_set_name(const NodeSet& J) {
  std::vector<int> one;
  for (int j : J) one.push_back(j + 1);
  return "s{" + join_ints(one) + "}";
}

}  // namespace detail

// ---------------------------------------------------------------------------------------------
// Crystal-side cases.

inline VerificationReport verify_crystal_size(const SuiteEntry& s) {
  return detail::run_case("crystal-size/" + s.type + "/" + detail::join_ints(s.lambda), 1,
                          "|B(lambda)| equals the Weyl dimension", [&](VerificationReport& r) {
                            auto rs = RootSystem::build(s.type);
                            const auto lam = make_weight(s.lambda);
                            const auto B = generate_crystal(rs, lam);
                            const auto d = weyl_dimension(rs, lam);
                            r.details["size"] = B.size();
                            r.details["weyl_dimension"] = d;
                            if (static_cast<std::uint64_t>(B.size()) != d) r.verdict = Verdict::Mismatch;
                          });
}

inline VerificationReport verify_tensor_decomposition(const SuiteEntry& a, const SuiteEntry& b) {
  return detail::run_case(
      "tensor-decomposition/" + a.type + "/" + detail::join_ints(a.lambda) + "x" + detail::join_ints(b.lambda), 2,
      "components of B(l1) (x) B(l2) match the character-product decomposition", [&](VerificationReport& r) {
        auto rs = RootSystem::build(a.type);
        const auto l1 = make_weight(a.lambda), l2 = make_weight(b.lambda);
        const auto T = tensor(share(generate_crystal(rs, l1)), share(generate_crystal(rs, l2)));
        std::map<std::vector<long long>, long long> from_crystal;
        for (const auto& c : components(T)) ++from_crystal[to_ints(T.wt[c.highest])];
        const auto oracle = decompose_character(rs, character_product(character(rs, l1), character(rs, l2)));
        nlohmann::ordered_json dec = nlohmann::ordered_json::array();
        for (const auto& [mu, m] : from_crystal) dec.push_back({{"mu", mu}, {"multiplicity", m}});
        r.details["decomposition"] = dec;
        if (from_crystal != oracle) r.verdict = Verdict::Mismatch;
      });
}

inline VerificationReport verify_schutzenberger_identities(const SuiteEntry& s) {
  return detail::run_case("schutzenberger/" + s.type + "/" + detail::join_ints(s.lambda), 3,
                          "xi is an involution intertwining e_i with f_theta(i) at every element",
                          [&](VerificationReport& r) {
                            const auto B = generate_crystal(RootSystem::build(s.type), make_weight(s.lambda));
                            const Perm xi = schutzenberger(B);
                            const auto th = B.rs.theta(B.rs.all_nodes());
                            for (int b = 0; b < B.size() && r.equal(); ++b) {
                              bool ok = xi[xi[b]] == b;
                              for (int i = 0; i < B.rank(); ++i) {
                                const int t = th.at(i);
                                ok = ok && B.e[i][xi[b]] == (B.f[t][b] == kNone ? kNone : xi[B.f[t][b]]);
                                ok = ok && B.f[i][xi[b]] == (B.e[t][b] == kNone ? kNone : xi[B.e[t][b]]);
                              }
                              if (!ok) {
                                r.verdict = Verdict::Mismatch;
                                r.message = "identity fails at element " + std::to_string(b);
                              }
                            }
                          });
}

inline VerificationReport verify_internal_relations(const SuiteEntry& s) {
  return detail::run_case("internal-cactus-relations/" + s.type + "/" + detail::join_ints(s.lambda), 4,
                          "xi_J satisfy the internal cactus relations", [&](VerificationReport& r) {
                            InternalCactus act(detail::gen(s.type, s.lambda));
                            const auto c = check_internal_relations(act);
                            if (!c.ok) {
                              r.verdict = Verdict::Mismatch;
                              r.message = c.witness;
                            }
                          });
}

inline VerificationReport verify_external_relations(const std::string& type, const std::vector<int>& lambda, int n) {
  return detail::run_case("external-cactus-relations/" + type + "/" + detail::join_ints(lambda) + "^" + std::to_string(n), 4,
                          "s_pq satisfy the relations of C_n on B^(x)n", [&](VerificationReport& r) {
                            ExternalCactus act;
                            const auto c = check_external_relations(act, detail::gen(type, lambda), n);
                            if (!c.ok) {
                              r.verdict = Verdict::Mismatch;
                              r.message = c.witness;
                            }
                          });
}

inline VerificationReport verify_hexagon(const std::string& type, const std::vector<std::vector<int>>& lams) {
  std::string id = "hexagon/" + type;
  for (const auto& l : lams) id += "/" + detail::join_ints(l);
  return detail::run_case(id, 5, "hexagon holds for sigma; the plain flip fails it", [&](VerificationReport& r) {
    const CommutorFn sig = [](const CrystalPtr& a, const CrystalPtr& b) { return commutor(a, b); };
    const CommutorFn flip = [](const CrystalPtr& a, const CrystalPtr& b) { return flip_map(a, b); };
    auto A = detail::gen(type, lams[0]), B = detail::gen(type, lams[1]), C = detail::gen(type, lams[2]);
    const auto good = check_hexagon(A, B, C, sig);
    const auto bad = check_hexagon(A, B, C, flip);
    r.details["sigma"] = good.ok;
    r.details["flip_control_fails"] = !bad.ok;
    if (!good.ok || bad.ok) {
      r.verdict = Verdict::Mismatch;
      r.message = good.ok ? "flip control unexpectedly passes" : good.witness;
    }
  });
}

// ---------------------------------------------------------------------------------------------
// Monodromy cases.

struct ExternalCase {
  std::vector<int> lambda = {1};
  int n = 3;
  int mu = 1;
  int p = 1, q = 2;
};

inline std::vector<double> standard_base(int n) {
  std::vector<double> z(n);
  for (int k = 0; k < n; ++k) z[k] = k;
  return z;
}

// Monodromy of s_pq on sl2 E(lambda^n)^mu compared with the crystal action on the highest weight
// elements of weight mu in B(lambda)^(x)n. Lines and crystal elements are matched by their
// nested-cluster highest weights; the comparison is repeated in a re-gauged configuration and with
// another seed.
inline VerificationReport verify_external(const ExternalCase& c, const VerifyOptions& opt) {
  const std::string id = "external/sl2/" + detail::join_ints(std::vector<int>(c.n, c.lambda[0])) + "/mu=" +
                         std::to_string(c.mu) + "/s" + std::to_string(c.p) + std::to_string(c.q);
  return detail::run_case(id, 6, "monodromy of s_pq equals the crystal cactus action on the multiplicity set",
                          [&](VerificationReport& r) {
    auto B = detail::gen("A1", c.lambda);
    std::vector<CrystalPtr> fs(c.n, B);
    ExternalCactus act;
    const auto res = act.act(CactusWord{{ext(c.p, c.q)}}, fs);
    const auto ms = multiplicity_set(*res.domain, make_weight({c.mu}));
    const int k = static_cast<int>(ms.members.size());
    if (k == 0) throw Error("empty multiplicity set");
    Perm cperm(k);
    for (int m = 0; m < k; ++m) {
      const auto it = std::find(ms.members.begin(), ms.members.end(), res.map[ms.members[m]]);
      if (it == ms.members.end()) throw Error("crystal action leaves the multiplicity set");
      cperm[m] = static_cast<int>(it - ms.members.begin());
    }
    const auto clabels = crystal_prefix_labels(fs, ms.members);
    r.crystal_perm = cperm;
    r.seed = opt.seed;
    Diagnostics all;
    auto run = [&](const std::vector<double>& base, std::uint64_t seed) {
      Engine eng(seed, opt.tol);
      ExternalSetup s;
      s.spins.assign(c.n, c.lambda);
      s.mu = {c.mu};
      s.p = c.p;
      s.q = c.q;
      s.base = base;
      const auto mr = monodromy_external(s, eng);
      const auto lab = k == 1 ? clabels : caterpillar_labels(s, mr.lines, eng);
      std::vector<int> line_to_member(k, -1), member_to_line(k, -1);
      for (int l = 0; l < k; ++l)
        for (int m = 0; m < k; ++m)
          if (lab[l] == clabels[m]) {
            if (line_to_member[l] != -1 || member_to_line[m] != -1)
              throw HandoffFailure("nested-cluster labels do not separate the multiplicity set");
            line_to_member[l] = m;
            member_to_line[m] = l;
          }
      for (int m = 0; m < k; ++m)
        if (member_to_line[m] == -1) throw HandoffFailure("no eigenline with the labels of crystal element " + std::to_string(m));
      Perm out(k);
      for (int m = 0; m < k; ++m) out[m] = line_to_member[mr.perm[member_to_line[m]]];
      all.merge(eng.diag);
      return out;
    };
    const auto z = standard_base(c.n);
    std::vector<double> z2;
    for (double x : z) z2.push_back(2 * x + 3);
    const Perm m0 = run(z, opt.seed), m1 = run(z2, opt.seed), m2 = run(z, opt.seed + 1);
    r.monodromy_perm = m0;
    r.diag = all;
    r.details["fiber_size"] = k;
    r.details["regauged_permutation"] = m1;
    r.details["reseeded_permutation"] = m2;
    r.details["invariant"] = m0 == m1 && m0 == m2;
    if (m0 != cperm) {
      r.verdict = Verdict::Mismatch;
      r.message = "monodromy permutation differs from the crystal permutation";
    } else if (!(m0 == m1 && m0 == m2)) {
      r.verdict = Verdict::Mismatch;
      r.message = "monodromy permutation changes under re-gauging or reseeding";
    }
  });
}

struct InternalCase {
  std::string tag = "sl2";
  std::vector<int> lambda = {1};
  NodeSet J = {0};
};

// Monodromy of s_J on E_chi(lambda) transported to B(lambda) along the isomorphism of crystals,
// against the partial Schutzenberger involution. Repeated with 2 chi and with another seed.
inline VerificationReport verify_internal(const InternalCase& c, const VerifyOptions& opt) {
  const std::string id = "internal/" + c.tag + "/" + detail::join_ints(c.lambda) + "/" + detail::node_set_name(c.J);
  return detail::run_case(id, 7, "monodromy of s_J equals the partial Schutzenberger involution xi_J",
                          [&](VerificationReport& r) {
    const auto B = generate_crystal(RootSystem::build(lie_type_label(c.tag)), make_weight(c.lambda));
    const Perm xi = partial_schutzenberger(B, c.J);
    r.crystal_perm = xi;
    r.seed = opt.seed;
    Diagnostics all;
    auto run = [&](double scale, std::uint64_t seed) {
      Engine eng(seed, opt.tol);
      std::vector<double> chi = rho_coweight(lie_rank(c.tag));
      for (double& x : chi) x *= scale;
      const auto E = irrep_eigenline_crystal(c.tag, c.lambda, chi, eng);
      const auto iso = find_isomorphism(*E.crystal, B);
      if (!iso) throw Error("eigenline crystal is not isomorphic to B(lambda)");
      const auto mr = monodromy_internal(E, c.J, eng);
      Perm out(B.size());
      for (int l = 0; l < B.size(); ++l) out[(*iso)[l]] = (*iso)[mr.perm[l]];
      all.merge(eng.diag);
      return out;
    };
    const Perm m0 = run(1.0, opt.seed), m1 = run(2.0, opt.seed), m2 = run(1.0, opt.seed + 1);
    r.monodromy_perm = m0;
    r.diag = all;
    r.details["rescaled_permutation"] = m1;
    r.details["reseeded_permutation"] = m2;
    r.details["invariant"] = m0 == m1 && m0 == m2;
    if (m0 != xi) {
      r.verdict = Verdict::Mismatch;
      r.message = "monodromy permutation differs from xi_J";
    } else if (!(m0 == m1 && m0 == m2)) {
      r.verdict = Verdict::Mismatch;
      r.message = "monodromy permutation changes under rescaling chi or reseeding";
    }
  });
}

inline VerificationReport verify_eigenline_crystal(const std::string& tag, const std::vector<int>& lambda,
                                                   const VerifyOptions& opt) {
  return detail::run_case("eigenline-crystal/" + tag + "/" + detail::join_ints(lambda), 8,
                          "the eigenline crystal is normal and isomorphic to B(lambda)", [&](VerificationReport& r) {
                            Engine eng(opt.seed, opt.tol);
                            r.seed = opt.seed;
                            const auto E = irrep_eigenline_crystal(tag, lambda, rho_coweight(lie_rank(tag)), eng);
                            const auto B = generate_crystal(RootSystem::build(lie_type_label(tag)), make_weight(lambda));
                            const auto normal = check_normal(*E.crystal);
                            const auto iso = find_isomorphism(*E.crystal, B);
                            r.diag = eng.diag;
                            r.details["size"] = E.crystal->size();
                            r.details["normal"] = normal.ok;
                            r.details["isomorphic"] = iso.has_value();
                            if (iso) r.details["isomorphism"] = *iso;
                            if (!normal.ok || !iso) {
                              r.verdict = Verdict::Mismatch;
                              r.message = normal.ok ? "not isomorphic to B(lambda)" : normal.witness;
                            }
                          });
}

inline VerificationReport verify_tensor_transport(const std::string& tag, const std::vector<int>& l1,
                                                  const std::vector<int>& l2, const VerifyOptions& opt) {
  return detail::run_case(
      "tensor-transport/" + tag + "/" + detail::join_ints(l1) + "x" + detail::join_ints(l2), 9,
      "transport from z = infinity to z = 0 is a crystal isomorphism", [&](VerificationReport& r) {
        r.seed = opt.seed;
        const std::vector<double> chi = rho_coweight(lie_rank(tag));
        auto run = [&](std::uint64_t seed, Diagnostics& d) {
          Engine eng(seed, opt.tol);
          const auto E1 = irrep_eigenline_crystal(tag, l1, chi, eng);
          const auto E2 = irrep_eigenline_crystal(tag, l2, chi, eng);
          auto T = tensor_transport(tag, l1, l2, E1, E2, chi, eng);
          d.merge(eng.diag);
          return T;
        };
        Diagnostics all;
        const auto T = run(opt.seed, all);
        const auto T2 = run(opt.seed + 1, all);
        r.diag = all;
        r.monodromy_perm = T.map;
        std::vector<int> left_sizes, right_sizes;
        for (const auto& c : components(*T.left)) left_sizes.push_back(static_cast<int>(c.elements.size()));
        for (const auto& c : components(*T.right)) right_sizes.push_back(static_cast<int>(c.elements.size()));
        std::sort(left_sizes.begin(), left_sizes.end());
        std::sort(right_sizes.begin(), right_sizes.end());
        r.details["component_sizes"] = right_sizes;
        r.details["isomorphism"] = T.iso.ok;
        if (lie_rank(tag) == 1) r.details["order_property"] = T.order_property;
        r.details["invariant"] = T.map == T2.map;
        if (!T.iso.ok) {
          r.verdict = Verdict::Mismatch;
          r.message = T.iso.witness;
        } else if (!T.order_property) {
          r.verdict = Verdict::Mismatch;
          r.message = "eigenvalue order property fails";
        } else if (left_sizes != right_sizes) {
          r.verdict = Verdict::Mismatch;
          r.message = "component sizes differ";
        } else if (T.map != T2.map) {
          r.verdict = Verdict::Mismatch;
          r.message = "transport map changes under reseeding";
        }
      });
}

inline VerificationReport verify_commutor_square(const std::string& tag, const std::vector<int>& l1,
                                                 const std::vector<int>& l2, const VerifyOptions& opt) {
  return detail::run_case("commutor-square/" + tag + "/" + detail::join_ints(l1) + "x" + detail::join_ints(l2), 0,
                          "transport intertwines the crystal commutor with the factor flip", [&](VerificationReport& r) {
                            Engine eng(opt.seed, opt.tol);
                            r.seed = opt.seed;
                            const auto sq = commutor_square(tag, l1, l2, rho_coweight(lie_rank(tag)), eng);
                            r.diag = eng.diag;
                            r.crystal_perm = sq.via_sigma;
                            r.monodromy_perm = sq.via_flip;
                            if (!sq.tensor_iso_12.ok || !sq.tensor_iso_21.ok) {
                              r.verdict = Verdict::Mismatch;
                              r.message = "tensor transport is not a crystal isomorphism";
                            } else if (!sq.equal) {
                              r.verdict = Verdict::Mismatch;
                              r.message = "square does not commute";
                            }
                          });
}

inline VerificationReport verify_pentagon(const std::vector<std::vector<int>>& spins, bool reversed, const VerifyOptions& opt) {
  std::string id = "pentagon/sl2/";
  for (std::size_t k = 0; k < spins.size(); ++k) id += (k ? "," : "") + detail::join_ints(spins[k]);
  id += reversed ? "/reversed" : "/forward";
  return detail::run_case(id, 10, "the five-edge loop acts trivially on eigenlines", [&](VerificationReport& r) {
    r.seed = opt.seed;
    Diagnostics all;
    auto run = [&](std::uint64_t seed) {
      Engine eng(seed, opt.tol);
      auto P = pentagon_numeric("sl2", spins, {1.0}, reversed, eng);
      all.merge(eng.diag);
      return P;
    };
    const auto P = run(opt.seed);
    const auto P2 = run(opt.seed + 1);
    r.diag = all;
    r.monodromy_perm = P.perm;
    r.crystal_perm = identity_perm(static_cast<int>(P.perm.size()));
    r.details["vertex_fidelity"] = P.vertex_fidelity;
    r.details["eps"] = P.eps;
    r.details["big"] = P.big;
    r.details["invariant"] = P.perm == P2.perm;
    if (!P.identity || !P2.identity) {
      r.verdict = Verdict::Mismatch;
      r.message = "loop permutation is not the identity";
    }
  });
}

// ---------------------------------------------------------------------------------------------
// Suites.

inline std::vector<ExternalCase> external_cases() {
  std::vector<ExternalCase> out;
  for (int mu : {3, 1})
    for (auto [p, q] : std::vector<std::pair<int, int>>{{1, 2}, {2, 3}, {1, 3}}) out.push_back({{1}, 3, mu, p, q});
  for (auto [p, q] : std::vector<std::pair<int, int>>{{1, 2}, {3, 4}, {1, 4}}) out.push_back({{1}, 4, 0, p, q});
  return out;
}

inline std::vector<InternalCase> internal_cases() {
  std::vector<InternalCase> out;
  for (int m : {1, 2, 3}) out.push_back({"sl2", {m}, {0}});
  for (std::vector<int> lam : {std::vector<int>{1, 0}, std::vector<int>{1, 1}})
    for (NodeSet J : {NodeSet{0}, NodeSet{1}, NodeSet{0, 1}}) out.push_back({"sl3", lam, J});
  return out;
}

// Aggregate hygiene verdict over the numeric reports: tolerances met and invariance checks passed.
inline VerificationReport hygiene_report(const std::vector<VerificationReport>& reports, const Tolerances& tol) {
  return detail::run_case("numeric-hygiene", 11, "commutator and residual bounds hold; results invariant under gauge and seed",
                          [&](VerificationReport& r) {
                            double comm = 0, res = 0;
                            int numeric = 0;
                            std::vector<std::string> bad;
                            for (const auto& x : reports) {
                              if (x.verdict == Verdict::Inconclusive) bad.push_back(x.id + " (inconclusive)");
                              if (!x.diag) continue;
                              ++numeric;
                              comm = std::max(comm, x.diag->max_commutator);
                              res = std::max(res, x.diag->max_residual);
                              if (x.details.contains("invariant") && !x.details["invariant"].get<bool>())
                                bad.push_back(x.id + " (not invariant)");
                            }
                            r.details["numeric_cases"] = numeric;
                            r.details["max_commutator"] = comm;
                            r.details["max_residual"] = res;
                            r.details["failures"] = bad;
                            if (numeric == 0) {
                              r.verdict = Verdict::Inconclusive;
                              r.message = "no numeric cases ran";
                            } else if (comm > tol.commutator || res > tol.residual || !bad.empty()) {
                              r.verdict = Verdict::Mismatch;
                              r.message = "hygiene bounds or invariance violated";
                            }
                          });
}

inline std::vector<std::string> suite_names() { return {"desk", "crystal", "numeric"}; }

// Every case of the named suite, in a fixed order.
inline std::vector<VerificationReport> verify_suite(const std::string& suite, const VerifyOptions& opt) {
  if (suite != "desk" && suite != "crystal" && suite != "numeric") throw Error("unknown suite '" + suite + "'");
  std::vector<VerificationReport> out;
  const auto ds = desk_suite();
  if (suite != "numeric") {
    for (const auto& s : ds) out.push_back(verify_crystal_size(s));
    for (std::size_t x = 0; x < ds.size(); ++x)
      for (std::size_t y = x; y < ds.size(); ++y) {
        if (ds[x].type != ds[y].type) continue;
        auto rs = RootSystem::build(ds[x].type);
        if (weyl_dimension(rs, make_weight(ds[x].lambda)) * weyl_dimension(rs, make_weight(ds[y].lambda)) > 400) continue;
        out.push_back(verify_tensor_decomposition(ds[x], ds[y]));
      }
    for (const auto& s : ds) out.push_back(verify_schutzenberger_identities(s));
    for (const auto& s : ds)
      if (s.type == "A2" || s.type == "A3" || s.type == "B2") out.push_back(verify_internal_relations(s));
    out.push_back(verify_external_relations("A1", {1}, 3));
    out.push_back(verify_external_relations("A1", {1}, 4));
    out.push_back(verify_external_relations("A2", {1, 0}, 3));
    out.push_back(verify_hexagon("A1", {{1}, {1}, {1}}));
    out.push_back(verify_hexagon("A1", {{1}, {2}, {1}}));
    out.push_back(verify_hexagon("A1", {{2}, {1}, {1}}));
    out.push_back(verify_hexagon("A2", {{1, 0}, {1, 0}, {0, 1}}));
    out.push_back(verify_hexagon("A2", {{1, 0}, {0, 1}, {1, 0}}));
  }
  if (suite != "crystal") {
    std::vector<VerificationReport> num;
    for (const auto& c : external_cases()) num.push_back(verify_external(c, opt));
    for (const auto& c : internal_cases()) num.push_back(verify_internal(c, opt));
    num.push_back(verify_eigenline_crystal("sl3", {1, 0}, opt));
    num.push_back(verify_eigenline_crystal("sl3", {1, 1}, opt));
    num.push_back(verify_tensor_transport("sl2", {1}, {1}, opt));
    num.push_back(verify_tensor_transport("sl2", {1}, {2}, opt));
    num.push_back(verify_tensor_transport("sl3", {1, 0}, {1, 0}, opt));
    num.push_back(verify_commutor_square("sl2", {1}, {1}, opt));
    num.push_back(verify_commutor_square("sl2", {1}, {2}, opt));
    num.push_back(verify_commutor_square("sl2", {2}, {0}, opt));
    num.push_back(verify_commutor_square("sl3", {1, 0}, {1, 0}, opt));
    num.push_back(verify_pentagon({{1}, {1}, {1}}, false, opt));
    num.push_back(verify_pentagon({{1}, {1}, {1}}, true, opt));
    num.push_back(hygiene_report(num, opt.tol));
    out.insert(out.end(), num.begin(), num.end());
  }
  return out;
}

// Overall exit status: 0 all equal, 1 some mismatch, 2 otherwise some inconclusive.
inline int exit_status(const std::vector<VerificationReport>& reports) {
  bool inconclusive = false;
  for (const auto& r : reports) {
    if (r.verdict == Verdict::Mismatch) return 1;
    if (r.verdict == Verdict::Inconclusive) inconclusive = true;
  }
  return inconclusive ? 2 : 0;
}

inline nlohmann::ordered_json reports_json(const std::vector<VerificationReport>& reports, bool with_timing = false) {
  nlohmann::ordered_json j;
  int counts[3] = {0, 0, 0};
  nlohmann::ordered_json cases = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    ++counts[static_cast<int>(r.verdict)];
    cases.push_back(r.to_json(with_timing));
  }
  j["summary"] = {{"cases", reports.size()}, {"equal", counts[0]}, {"mismatch", counts[1]}, {"inconclusive", counts[2]}};
  j["cases"] = cases;
  return j;
}

inline std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

// JUnit XML: one testsuite per criterion; mismatches are failures, inconclusive cases are errors.
inline std::string reports_junit(const std::vector<VerificationReport>& reports, const std::string& name = "ccl") {
  std::map<int, std::vector<const VerificationReport*>> by;
  for (const auto& r : reports) by[r.criterion].push_back(&r);
  std::ostringstream os;
  os.precision(6);
  os << std::fixed;
  int failures = 0, errors = 0;
  for (const auto& r : reports) {
    failures += r.verdict == Verdict::Mismatch;
    errors += r.verdict == Verdict::Inconclusive;
  }
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<testsuites name=\"" << xml_escape(name) << "\" tests=\"" << reports.size() << "\" failures=\"" << failures
     << "\" errors=\"" << errors << "\">\n";
  for (const auto& [crit, rs] : by) {
    const std::string suite = crit == 0 ? "supplementary" : "criterion-" + std::to_string(crit);
    int f = 0, e = 0;
    double t = 0;
    for (const auto* r : rs) {
      f += r->verdict == Verdict::Mismatch;
      e += r->verdict == Verdict::Inconclusive;
      t += r->seconds;
    }
    os << "  <testsuite name=\"" << suite << "\" tests=\"" << rs.size() << "\" failures=\"" << f
       << "\" errors=\"" << e << "\" time=\"" << t << "\">\n";
    for (const auto* r : rs) {
      os << "    <testcase classname=\"" << suite << "\" name=\"" << xml_escape(r->id) << "\" time=\""
         << r->seconds << "\"";
      if (r->verdict == Verdict::Equal) {
        os << "/>\n";
        continue;
      }
      os << ">\n";
      const char* tag = r->verdict == Verdict::Mismatch ? "failure" : "error";
      os << "      <" << tag << " type=\"" << verdict_name(r->verdict) << "\" message=\"" << xml_escape(r->message)
         << "\"/>\n";
      os << "    </testcase>\n";
    }
    os << "  </testsuite>\n";
  }
  os << "</testsuites>\n";
  return os.str();
}

// Seed from an explicit value, else CCL_SEED, else the given default.
inline std::uint64_t resolve_seed(std::optional<std::uint64_t> explicit_seed, std::uint64_t fallback = 1) {
  if (explicit_seed) return *explicit_seed;
  if (const char* env = std::getenv("CCL_SEED")) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw Error(std::string("CCL_SEED is not a non-negative integer: '") + env + "'");
  }
  return fallback;
}

}  // namespace ccl
