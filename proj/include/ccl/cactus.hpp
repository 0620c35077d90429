#pragma once

// Schutzenberger involutions, the commutor, cactus words and their actions on crystals.

#include "ccl/crystal.hpp"

#include <cctype>

namespace ccl {

using Perm = std::vector<int>;

inline Perm compose(const Perm& outer, const Perm& inner) {
  Perm r(inner.size());
  for (std::size_t b = 0; b < inner.size(); ++b) r[b] = outer[inner[b]];
  return r;
}

inline Perm identity_perm(int n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

inline Perm inverse(const Perm& p) {
  Perm r(p.size());
  for (std::size_t b = 0; b < p.size(); ++b) r[p[b]] = static_cast<int>(b);
  return r;
}

inline Weight apply_theta_w0(const RootSystem& rs, const Weight& w) { return rs.apply(rs.longest_element(), w); }

// Full Schutzenberger involution of a normal crystal by raising to the source, recording the
// e-steps, and rebuilding from the sink with e_{theta(i)} (since xi(f_j b) = e_{theta j} xi(b)).
// All defining identities are re-verified; any failure throws.
inline Perm schutzenberger(const Crystal& B, bool verify_normal = true) {
  if (verify_normal) {
    if (auto c = check_normal(B); !c.ok) throw Error("schutzenberger: crystal is not normal: " + c.witness);
  }
  const int r = B.rank();
  if (r == 0) return identity_perm(B.size());
  const auto th = B.rs.theta(B.rs.all_nodes());
  const WeylWord w0 = B.rs.longest_element();
  Perm xi(B.size(), kNone);
  for (const auto& comp : components(B)) {
    int low = kNone;
    for (int b : comp.elements) {
      bool sink = true;
      for (int i = 0; i < r; ++i) sink = sink && B.f[i][b] == kNone;
      if (sink) {
        if (low != kNone) throw Error("schutzenberger: component with several sinks");
        low = b;
      }
    }
    for (int b : comp.elements) {
      std::vector<int> word;
      int cur = b;
      for (;;) {
        int step = kNone;
        for (int i = 0; i < r && step == kNone; ++i)
          if (B.e[i][cur] != kNone) step = i;
        if (step == kNone) break;
        word.push_back(step);
        cur = B.e[step][cur];
      }
      int img = low;
      for (auto it = word.rbegin(); it != word.rend(); ++it) {
        img = B.e[th.at(*it)][img];
        if (img == kNone) throw Error("schutzenberger: rebuild step undefined");
      }
      xi[b] = img;
    }
  }
  for (int b = 0; b < B.size(); ++b) {
    if (xi[xi[b]] != b) throw Error("schutzenberger: not an involution");
    if (B.wt[xi[b]] != B.rs.apply(w0, B.wt[b])) throw Error("schutzenberger: weight is not mapped by w0");
    for (int i = 0; i < r; ++i) {
      const int t = th.at(i);
      const int lhs_e = B.e[i][xi[b]], rhs_e = B.f[t][b] == kNone ? kNone : xi[B.f[t][b]];
      const int lhs_f = B.f[i][xi[b]], rhs_f = B.e[t][b] == kNone ? kNone : xi[B.e[t][b]];
      if (lhs_e != rhs_e || lhs_f != rhs_f) throw Error("schutzenberger: intertwining identity fails");
    }
  }
  return xi;
}

inline Perm partial_schutzenberger(const Crystal& B, const NodeSet& J, bool verify_normal = true) {
  if (!B.rs.is_connected(J)) throw Error("partial_schutzenberger: J must be nonempty and connected");
  return schutzenberger(restrict(B, J), verify_normal);
}

// Single-node case: reflection of each i-string.
inline Perm string_reflection(const Crystal& B, int i) {
  Perm p(B.size());
  for (int b = 0; b < B.size(); ++b) {
    const long long k = B.wt[b][i].numerator();
    int c = b;
    for (long long s = 0; s < (k >= 0 ? k : -k); ++s) c = k >= 0 ? B.f[i][c] : B.e[i][c];
    p[b] = c;
  }
  return p;
}

// sigma : B1 (x) B2 -> B2 (x) B1, sigma(b1,b2) = xi_{B2 (x) B1}(xi(b2), xi(b1)).
struct Commutor {
  CrystalPtr domain, codomain;
  Perm map;
};

inline Commutor commutor(const CrystalPtr& B1, const CrystalPtr& B2, bool verify = true) {
  auto D = share(tensor(B1, B2));
  auto C = share(tensor(B2, B1));
  const Perm x1 = schutzenberger(*B1, verify), x2 = schutzenberger(*B2, verify);
  const Perm x21 = schutzenberger(*C, verify);
  const int n2 = B2->size(), n1 = B1->size();
  Perm m(D->size());
  for (int a = 0; a < n1; ++a)
    for (int b = 0; b < n2; ++b) m[a * n2 + b] = x21[x2[b] * n1 + x1[a]];
  if (verify) {
    if (auto c = check_isomorphism(*D, *C, m); !c.ok) throw Error("commutor is not a crystal isomorphism: " + c.witness);
  }
  return {D, C, m};
}

inline Commutor flip_map(const CrystalPtr& B1, const CrystalPtr& B2) {
  auto D = share(tensor(B1, B2));
  auto C = share(tensor(B2, B1));
  const int n2 = B2->size(), n1 = B1->size();
  Perm m(D->size());
  for (int a = 0; a < n1; ++a)
    for (int b = 0; b < n2; ++b) m[a * n2 + b] = b * n1 + a;
  return {D, C, m};
}

// ---------------------------------------------------------------------------------------------
// Cactus words.

struct Generator {
  bool external = false;
  NodeSet J;     // internal: 0-based connected node set
  int p = 0, q = 0;  // external: 1-based segment
  bool operator==(const Generator&) const = default;
};

struct CactusWord {
  std::vector<Generator> letters;  // product letters[0] * letters[1] * ...; the last acts first

  void reduce() {
    std::vector<Generator> out;
    for (const auto& g : letters) {
      if (!out.empty() && out.back() == g)
        out.pop_back();
      else
        out.push_back(g);
    }
    letters = std::move(out);
  }
};

// Grammar. Internal: "sI" (all nodes), "s" followed by node digits ("s1", "s12"), or
// "s{1,2}". External: "s" followed by two digits ("s12", "s23"), or "s_p_q" / "s{p,q}" for
// multi-digit indices.
inline std::vector<int> parse_indices(const std::string& body) {
  std::vector<int> out;
  if (body.empty()) throw Error("generator has no indices");
  if (body.front() == '{') {
    if (body.back() != '}') throw Error("unterminated generator braces: " + body);
    std::stringstream ss(body.substr(1, body.size() - 2));
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
  } else if (body.front() == '_') {
    std::stringstream ss(body.substr(1));
    std::string tok;
    while (std::getline(ss, tok, '_')) out.push_back(std::stoi(tok));
  } else {
    for (char c : body) {
      if (!std::isdigit(static_cast<unsigned char>(c))) throw Error("bad generator index: " + body);
      out.push_back(c - '0');
    }
  }
  return out;
}

inline Generator parse_internal_generator(const std::string& s, const RootSystem& rs) {
  if (s.size() < 2 || s[0] != 's') throw Error("bad generator: " + s);
  Generator g;
  if (s == "sI") {
    g.J = rs.all_nodes();
    return g;
  }
  for (int k : parse_indices(s.substr(1))) {
    if (k < 1 || k > rs.rank()) throw Error("generator node out of range: " + s);
    g.J.push_back(k - 1);
  }
  std::sort(g.J.begin(), g.J.end());
  g.J.erase(std::unique(g.J.begin(), g.J.end()), g.J.end());
  if (!rs.is_connected(g.J)) throw Error("generator node set is not connected: " + s);
  return g;
}

inline Generator parse_external_generator(const std::string& s, int n) {
  if (s.size() < 2 || s[0] != 's') throw Error("bad generator: " + s);
  auto idx = parse_indices(s.substr(1));
  if (idx.size() != 2 || idx[0] < 1 || idx[0] >= idx[1] || idx[1] > n)
    throw Error("external generator must be s_pq with 1 <= p < q <= n: " + s);
  Generator g;
  g.external = true;
  g.p = idx[0];
  g.q = idx[1];
  return g;
}

inline std::string generator_name(const Generator& g) {
  std::string s = "s";
  if (g.external) return s + (g.q < 10 ? std::to_string(g.p) + std::to_string(g.q)
                                       : "_" + std::to_string(g.p) + "_" + std::to_string(g.q));
  for (int j : g.J) s += std::to_string(j + 1);
  return s;
}

inline Generator ext(int p, int q) {
  Generator g;
  g.external = true;
  g.p = p;
  g.q = q;
  return g;
}

inline Generator inner(NodeSet J) {
  Generator g;
  g.J = std::move(J);
  return g;
}

// ---------------------------------------------------------------------------------------------
// Internal action s_J -> xi_J.

class InternalCactus {
 public:
  explicit InternalCactus(CrystalPtr B, bool verify_normal = true) : B_(std::move(B)) {
    if (verify_normal) {
      if (auto c = check_normal(*B_); !c.ok) throw Error("internal cactus action needs a normal crystal: " + c.witness);
    }
  }

  const Perm& xi(const NodeSet& J) {
    auto it = cache_.find(J);
    if (it == cache_.end()) it = cache_.emplace(J, partial_schutzenberger(*B_, J, false)).first;
    return it->second;
  }

  Perm act(const CactusWord& w) {
    Perm p = identity_perm(B_->size());
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) p = compose(xi(it->J), p);
    return p;
  }

  // Image of the word in W, as a Weyl word.
  WeylWord weyl_image(const CactusWord& w) const {
    WeylWord r;
    for (const auto& g : w.letters) {
      auto s = B_->rs.longest_element(g.J);
      r.letters.insert(r.letters.end(), s.letters.begin(), s.letters.end());
    }
    return r;
  }

  const Crystal& crystal() const { return *B_; }

 private:
  CrystalPtr B_;
  std::map<NodeSet, Perm> cache_;
};

inline std::vector<NodeSet> connected_subsets(const RootSystem& rs) {
  std::vector<NodeSet> out;
  const int r = rs.rank();
  for (int mask = 1; mask < (1 << r); ++mask) {
    NodeSet J;
    for (int i = 0; i < r; ++i)
      if (mask & (1 << i)) J.push_back(i);
    if (rs.is_connected(J)) out.push_back(J);
  }
  return out;
}

// All three defining relations of C_Delta plus compatibility with the map to W.
inline CheckResult check_internal_relations(InternalCactus& act) {
  const Crystal& B = act.crystal();
  const RootSystem& rs = B.rs;
  const auto subsets = connected_subsets(rs);
  auto name = [](const NodeSet& J) { return generator_name(inner(J)); };
  for (const auto& J : subsets) {
    const Perm& x = act.xi(J);
    if (compose(x, x) != identity_perm(B.size())) return CheckResult::fail("s_J^2 != 1 for " + name(J));
    const WeylWord w = rs.longest_element(J);
    for (int b = 0; b < B.size(); ++b)
      if (B.wt[x[b]] != rs.apply(w, B.wt[b])) return CheckResult::fail("weight compatibility fails for " + name(J));
  }
  for (const auto& K : subsets) {
    const auto th = rs.theta(K);
    for (const auto& J : subsets) {
      const bool proper_subset =
          J.size() < K.size() && std::includes(K.begin(), K.end(), J.begin(), J.end());
      if (proper_subset) {
        NodeSet tJ;
        for (int j : J) tJ.push_back(th.at(j));
        std::sort(tJ.begin(), tJ.end());
        if (compose(act.xi(K), act.xi(J)) != compose(act.xi(tJ), act.xi(K)))
          return CheckResult::fail("s_K s_J = s_theta(J) s_K fails for K=" + name(K) + ", J=" + name(J));
      }
      bool far = true;
      for (int j : J)
        for (int k : K) far = far && j != k && rs.cartan()[j][k] == 0;
      if (far && compose(act.xi(K), act.xi(J)) != compose(act.xi(J), act.xi(K)))
        return CheckResult::fail("commutation fails for " + name(J) + ", " + name(K));
    }
  }
  return {};
}

// ---------------------------------------------------------------------------------------------
// External action of C_n on B_1 (x) ... (x) B_n.

class ExternalCactus {
 public:
  explicit ExternalCactus(bool verify = true) : verify_(verify) {}

  const Perm& xi_of(const CrystalPtr& B) {
    auto it = xi_.find(B.get());
    if (it == xi_.end()) {
      keep_.push_back(B);
      it = xi_.emplace(B.get(), schutzenberger(*B, verify_)).first;
    }
    return it->second;
  }

  CrystalPtr tensor_of(const std::vector<CrystalPtr>& fs) {
    std::vector<const Crystal*> key;
    for (const auto& x : fs) key.push_back(x.get());
    auto it = tensors_.find(key);
    if (it == tensors_.end()) {
      keep_.insert(keep_.end(), fs.begin(), fs.end());
      it = tensors_.emplace(key, tensor_all(fs)).first;
    }
    return it->second;
  }

  // Apply s_pq (1-based) to a tuple of factor elements; returns the new tuple. factors is updated
  // to the reversed factor list.
  std::vector<int> apply(const Generator& g, std::vector<CrystalPtr>& factors, std::vector<int> tuple) {
    const int n = static_cast<int>(factors.size());
    if (g.p < 1 || g.q > n || g.p >= g.q) throw Error("external generator index out of range");
    const int a = g.p - 1, b = g.q - 1;
    std::vector<CrystalPtr> mid;
    std::vector<int> mid_el;
    for (int k = b; k >= a; --k) {
      mid.push_back(factors[k]);
      mid_el.push_back(xi_of(factors[k])[tuple[k]]);
    }
    auto S = tensor_of(mid);
    const int s = S->encode(mid_el);
    const auto out = S->decode(xi_of(S)[s]);
    for (int k = a; k <= b; ++k) {
      factors[k] = mid[k - a];
      tuple[k] = out[k - a];
    }
    return tuple;
  }

  struct Result {
    CrystalPtr domain, codomain;
    std::vector<CrystalPtr> codomain_factors;
    Perm map;
  };

  Result act(const CactusWord& w, const std::vector<CrystalPtr>& factors) {
    Result res;
    res.domain = tensor_of(factors);
    std::vector<CrystalPtr> final_factors = factors;
    res.map.resize(res.domain->size());
    for (int x = 0; x < res.domain->size(); ++x) {
      std::vector<CrystalPtr> fs = factors;
      auto t = res.domain->decode(x);
      for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) t = apply(*it, fs, t);
      final_factors = fs;
      res.codomain = tensor_of(fs);
      res.map[x] = res.codomain->encode(t);
    }
    res.codomain_factors = final_factors;
    return res;
  }

  // s_{1k} on a block by iterated commutors: s_{1,k} = sigma_{B_{k-1}..B_1, B_k} o (s_{1,k-1} x id).
  std::vector<int> iterated_block(std::vector<CrystalPtr> fs, const std::vector<int>& t) {
    const int k = static_cast<int>(fs.size());
    if (k == 1) return t;
    std::vector<CrystalPtr> head(fs.begin(), fs.end() - 1);
    std::vector<int> th(t.begin(), t.end() - 1);
    std::vector<int> rh = iterated_block(head, th);
    std::vector<CrystalPtr> rev_head(head.rbegin(), head.rend());
    auto X = tensor_of(rev_head);
    auto Y = fs.back();
    const Commutor& c = commutor_of(X, Y);
    const int x = X->encode(rh);
    const int img = c.map[x * Y->size() + t.back()];
    std::vector<CrystalPtr> rev(fs.rbegin(), fs.rend());
    return tensor_of(rev)->decode(img);
  }

  Result act_iterated(const Generator& g, const std::vector<CrystalPtr>& factors) {
    Result res;
    res.domain = tensor_of(factors);
    std::vector<CrystalPtr> fs = factors;
    std::reverse(fs.begin() + (g.p - 1), fs.begin() + g.q);
    res.codomain_factors = fs;
    res.codomain = tensor_of(fs);
    res.map.resize(res.domain->size());
    for (int x = 0; x < res.domain->size(); ++x) {
      auto t = res.domain->decode(x);
      std::vector<CrystalPtr> blk(factors.begin() + (g.p - 1), factors.begin() + g.q);
      std::vector<int> tb(t.begin() + (g.p - 1), t.begin() + g.q);
      auto out = iterated_block(blk, tb);
      std::copy(out.begin(), out.end(), t.begin() + (g.p - 1));
      res.map[x] = res.codomain->encode(t);
    }
    return res;
  }

  const Commutor& commutor_of(const CrystalPtr& X, const CrystalPtr& Y) {
    auto key = std::make_pair(X.get(), Y.get());
    auto it = commutors_.find(key);
    if (it == commutors_.end()) {
      keep_.push_back(X);
      keep_.push_back(Y);
      it = commutors_.emplace(key, commutor(X, Y, verify_)).first;
    }
    return it->second;
  }

 private:
  bool verify_;
  std::vector<CrystalPtr> keep_;
  std::map<const Crystal*, Perm> xi_;
  std::map<std::vector<const Crystal*>, CrystalPtr> tensors_;
  std::map<std::pair<const Crystal*, const Crystal*>, Commutor> commutors_;
};

// Relations of C_n as permutation identities on B^{(x) n} (all factors equal).
inline CheckResult check_external_relations(ExternalCactus& act, const CrystalPtr& B, int n) {
  std::vector<CrystalPtr> fs(n, B);
  std::map<std::pair<int, int>, Perm> s;
  for (int p = 1; p <= n; ++p)
    for (int q = p + 1; q <= n; ++q) s[{p, q}] = act.act(CactusWord{{ext(p, q)}}, fs).map;
  const int N = static_cast<int>(s.begin()->second.size());
  auto nm = [](int p, int q) { return generator_name(ext(p, q)); };
  for (auto& [pq, m] : s)
    if (compose(m, m) != identity_perm(N)) return CheckResult::fail(nm(pq.first, pq.second) + "^2 != 1");
  for (auto& [pq, m] : s)
    for (auto& [kl, m2] : s) {
      auto [p, q] = pq;
      auto [k, l] = kl;
      if (p <= k && l <= q) {
        const Perm& rhs = s.at({p + q - l, p + q - k});
        if (compose(m, m2) != compose(rhs, m))
          return CheckResult::fail("nesting relation fails for " + nm(p, q) + ", " + nm(k, l));
      }
      if ((q < k || l < p) && compose(m, m2) != compose(m2, m))
        return CheckResult::fail("disjoint commutation fails for " + nm(p, q) + ", " + nm(k, l));
    }
  return {};
}

// Hexagon: (id x sigma_{A,B}) o sigma_{A(x)B,C} == (sigma_{B,C} x id) o sigma_{A,B(x)C} as maps
// (A(x)B)(x)C -> (C(x)B)(x)A, associators being regroupings. Each commutor used must also be a
// crystal isomorphism.
using CommutorFn = std::function<Commutor(const CrystalPtr&, const CrystalPtr&)>;

inline CheckResult check_hexagon(const CrystalPtr& A, const CrystalPtr& B, const CrystalPtr& C, const CommutorFn& sig) {
  auto AB = share(tensor(A, B));
  auto BC = share(tensor(B, C));
  const Commutor s_ab_c = sig(AB, C), s_ab = sig(A, B), s_a_bc = sig(A, BC), s_bc = sig(B, C);
  for (const Commutor* c : {&s_ab_c, &s_ab, &s_a_bc, &s_bc})
    if (auto chk = check_isomorphism(*c->domain, *c->codomain, c->map); !chk.ok)
      return CheckResult::fail("commutor is not a crystal morphism: " + chk.witness);
  const int na = A->size(), nb = B->size(), nc = C->size();
  for (int x = 0; x < na * nb * nc; ++x) {
    // left: (a,b,c) -> (c, x') in C(x)(A(x)B) -> (c, sigma_{A,B}(x'))
    const int y = s_ab_c.map[x];
    const int cpart = y / (na * nb), ab = y % (na * nb);
    const int left = cpart * (nb * na) + s_ab.map[ab];
    // right: (a,b,c) -> (y', a) in (B(x)C)(x)A -> (sigma_{B,C}(y'), a)
    const int z = s_a_bc.map[x];
    const int bc = z / na, apart = z % na;
    const int right = s_bc.map[bc] * na + apart;
    if (left != right) return CheckResult::fail("hexagon fails at element " + std::to_string(x));
  }
  return {};
}

}  // namespace ccl
