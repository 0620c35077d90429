#pragma once

#include "ccl/path.hpp"

#include <nlohmann/json.hpp>

#include <functional>
#include <memory>
#include <numeric>
#include <sstream>

namespace ccl {

constexpr int kNone = -1;

// Finite crystal graph. Tensor products flatten their primitive factors so that element ids are
// mixed-radix tuples with the first factor most significant; regrouping is then the identity.
struct Crystal {
  RootSystem rs;
  std::vector<Weight> wt;
  std::vector<std::vector<int>> e, f;  // e[i][b], f[i][b]; kNone if undefined
  std::vector<std::string> labels;
  std::vector<Path> paths;                             // for path-model crystals
  std::vector<std::shared_ptr<const Crystal>> factors;  // primitive factors of a tensor product
  std::string name;

  int size() const { return static_cast<int>(wt.size()); }
  int rank() const { return rs.rank(); }
  bool is_tensor() const { return factors.size() > 1; }

  int epsilon(int i, int b) const {
    int n = 0;
    for (int c = e[i][b]; c != kNone; c = e[i][c]) ++n;
    return n;
  }
  int phi(int i, int b) const {
    int n = 0;
    for (int c = f[i][b]; c != kNone; c = f[i][c]) ++n;
    return n;
  }

  std::vector<int> shape() const {
    if (factors.empty()) return {size()};
    std::vector<int> s;
    for (const auto& c : factors) s.push_back(c->size());
    return s;
  }

  std::vector<int> decode(int b) const {
    const auto s = shape();
    std::vector<int> t(s.size());
    for (int k = static_cast<int>(s.size()) - 1; k >= 0; --k) {
      t[k] = b % s[k];
      b /= s[k];
    }
    return t;
  }

  int encode(const std::vector<int>& t) const {
    const auto s = shape();
    int b = 0;
    for (std::size_t k = 0; k < s.size(); ++k) b = b * s[k] + t[k];
    return b;
  }

  int find_weight_element(const Weight& w) const {
    for (int b = 0; b < size(); ++b)
      if (wt[b] == w) return b;
    return kNone;
  }
};

using CrystalPtr = std::shared_ptr<const Crystal>;

inline Crystal generate_crystal(const RootSystem& rs, const Weight& lambda) {
  if (static_cast<int>(lambda.size()) != rs.rank()) throw Error("generate_crystal: weight has wrong rank");
  if (!rs.is_dominant(lambda)) throw Error("generate_crystal: weight is not dominant");
  Crystal B;
  B.rs = rs;
  B.name = "B" + to_string(lambda);
  const int r = rs.rank();
  std::map<Path, int> id;
  std::vector<Path> order{Path::straight(lambda)};
  id[order[0]] = 0;
  B.f.assign(r, {});
  for (std::size_t head = 0; head < order.size(); ++head) {
    const Path cur = order[head];
    for (int i = 0; i < r; ++i) {
      auto nxt = littelmann_f(rs, i, cur);
      int target = kNone;
      if (nxt) {
        auto [it, inserted] = id.emplace(*nxt, static_cast<int>(order.size()));
        if (inserted) order.push_back(*nxt);
        target = it->second;
      }
      B.f[i].push_back(target);
    }
  }
  const int n = static_cast<int>(order.size());
  B.e.assign(r, std::vector<int>(n, kNone));
  for (int i = 0; i < r; ++i)
    for (int b = 0; b < n; ++b)
      if (B.f[i][b] != kNone) B.e[i][B.f[i][b]] = b;
  for (int b = 0; b < n; ++b) {
    for (int i = 0; i < r; ++i) {
      auto up = littelmann_e(rs, i, order[b]);
      const int via_e = up ? id.at(*up) : kNone;
      if (via_e != B.e[i][b]) throw Error("generate_crystal: e and f are not mutually inverse");
    }
    B.wt.push_back(order[b].endpoint());
    B.labels.push_back(std::to_string(b));
  }
  B.paths = std::move(order);
  return B;
}

inline Crystal tensor(const CrystalPtr& A, const CrystalPtr& C) {
  if (A->rs.cartan() != C->rs.cartan()) throw Error("tensor: root system mismatch");
  Crystal T;
  T.rs = A->rs;
  T.name = A->name + "x" + C->name;
  const int na = A->size(), nc = C->size(), r = A->rank();
  auto push_factors = [&](const CrystalPtr& X) {
    if (X->is_tensor())
      T.factors.insert(T.factors.end(), X->factors.begin(), X->factors.end());
    else
      T.factors.push_back(X);
  };
  push_factors(A);
  push_factors(C);
  T.e.assign(r, std::vector<int>(na * nc, kNone));
  T.f.assign(r, std::vector<int>(na * nc, kNone));
  for (int a = 0; a < na; ++a)
    for (int c = 0; c < nc; ++c) {
      const int b = a * nc + c;
      T.wt.push_back(A->wt[a] + C->wt[c]);
      T.labels.push_back("(" + A->labels[a] + "," + C->labels[c] + ")");
      for (int i = 0; i < r; ++i) {
        const int ea = A->epsilon(i, a), pc = C->phi(i, c);
        if (ea > pc) {
          if (A->e[i][a] != kNone) T.e[i][b] = A->e[i][a] * nc + c;
        } else if (C->e[i][c] != kNone) {
          T.e[i][b] = a * nc + C->e[i][c];
        }
        if (ea >= pc) {
          if (A->f[i][a] != kNone) T.f[i][b] = A->f[i][a] * nc + c;
        } else if (C->f[i][c] != kNone) {
          T.f[i][b] = a * nc + C->f[i][c];
        }
      }
    }
  return T;
}

inline CrystalPtr share(Crystal c) { return std::make_shared<const Crystal>(std::move(c)); }

inline CrystalPtr tensor_all(const std::vector<CrystalPtr>& parts) {
  if (parts.empty()) throw Error("tensor_all: empty factor list");
  CrystalPtr acc = parts[0];
  for (std::size_t k = 1; k < parts.size(); ++k) acc = share(tensor(acc, parts[k]));
  return acc;
}

// Disjoint union; element ids of later parts are offset by the sizes of earlier parts.
inline Crystal disjoint_union(const std::vector<Crystal>& parts) {
  if (parts.empty()) throw Error("disjoint_union: no parts");
  Crystal U;
  U.rs = parts[0].rs;
  U.name = "union";
  U.e.assign(U.rs.rank(), {});
  U.f.assign(U.rs.rank(), {});
  int off = 0;
  for (const auto& P : parts) {
    if (P.rs.cartan() != U.rs.cartan()) throw Error("disjoint_union: root system mismatch");
    for (int b = 0; b < P.size(); ++b) {
      U.wt.push_back(P.wt[b]);
      U.labels.push_back(P.labels.empty() ? std::to_string(off + b) : P.labels[b]);
      for (int i = 0; i < U.rank(); ++i) {
        U.e[i].push_back(P.e[i][b] == kNone ? kNone : P.e[i][b] + off);
        U.f[i].push_back(P.f[i][b] == kNone ? kNone : P.f[i][b] + off);
      }
    }
    off += P.size();
  }
  return U;
}

struct Component {
  int highest;
  std::vector<int> elements;  // sorted
};

// Union-find over crystal edges. Throws if a component has zero or several sources.
inline std::vector<Component> components(const Crystal& B) {
  std::vector<int> parent(B.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> root = [&](int x) { return parent[x] == x ? x : parent[x] = root(parent[x]); };
  for (int i = 0; i < B.rank(); ++i)
    for (int b = 0; b < B.size(); ++b)
      if (B.f[i][b] != kNone) parent[root(b)] = root(B.f[i][b]);
  std::map<int, Component> comp;
  std::vector<int> rep_order;
  for (int b = 0; b < B.size(); ++b) {
    const int r = root(b);
    if (!comp.count(r)) {
      comp[r] = Component{kNone, {}};
      rep_order.push_back(r);
    }
    comp[r].elements.push_back(b);
    bool source = true;
    for (int i = 0; i < B.rank(); ++i) source = source && B.e[i][b] == kNone;
    if (source) {
      if (comp[r].highest != kNone) throw Error("components: component with several sources");
      comp[r].highest = b;
    }
  }
  std::vector<Component> out;
  for (int r : rep_order) {
    if (comp[r].highest == kNone) throw Error("components: component without a source");
    out.push_back(comp[r]);
  }
  return out;
}

inline std::vector<int> highest_weight_elements(const Crystal& B) {
  std::vector<int> out;
  for (int b = 0; b < B.size(); ++b) {
    bool source = true;
    for (int i = 0; i < B.rank(); ++i) source = source && B.e[i][b] == kNone;
    if (source) out.push_back(b);
  }
  return out;
}

struct MultiplicitySet {
  Weight mu;
  std::vector<int> members;
};

inline MultiplicitySet multiplicity_set(const Crystal& B, const Weight& mu) {
  if (!B.rs.is_dominant(mu)) throw Error("multiplicity_set: weight is not dominant");
  MultiplicitySet m{mu, {}};
  for (int b : highest_weight_elements(B))
    if (B.wt[b] == mu) m.members.push_back(b);
  return m;
}

inline Crystal restrict(const Crystal& B, const NodeSet& J) {
  Crystal R;
  R.rs = B.rs.parabolic(J);
  R.name = B.name + "|J";
  R.labels = B.labels;
  for (const auto& w : B.wt) {
    Weight p;
    for (int j : J) p.push_back(w[j]);
    R.wt.push_back(p);
  }
  for (int j : J) {
    R.e.push_back(B.e[j]);
    R.f.push_back(B.f[j]);
  }
  return R;
}

struct CheckResult {
  bool ok = true;
  std::string witness;
  static CheckResult fail(std::string w) { return {false, std::move(w)}; }
};

// Checks the crystal axioms in the form of a weight-preserving graph with inverse e, f.
inline CheckResult check_axioms(const Crystal& B) {
  for (int i = 0; i < B.rank(); ++i) {
    const Weight a = B.rs.simple_root(i);
    for (int b = 0; b < B.size(); ++b) {
      const int up = B.e[i][b], dn = B.f[i][b];
      if (up != kNone && (B.wt[up] != B.wt[b] + a || B.f[i][up] != b))
        return CheckResult::fail("e_" + std::to_string(i + 1) + " axiom fails at element " + std::to_string(b));
      if (dn != kNone && (B.wt[dn] != B.wt[b] - a || B.e[i][dn] != b))
        return CheckResult::fail("f_" + std::to_string(i + 1) + " axiom fails at element " + std::to_string(b));
    }
  }
  return {};
}

inline CheckResult check_seminormal(const Crystal& B) {
  if (auto c = check_axioms(B); !c.ok) return c;
  for (int i = 0; i < B.rank(); ++i)
    for (int b = 0; b < B.size(); ++b)
      if (Q(B.phi(i, b) - B.epsilon(i, b)) != B.wt[b][i])
        return CheckResult::fail("phi-epsilon rule fails at element " + std::to_string(b) + " for i=" +
                                 std::to_string(i + 1));
  return {};
}

// Isomorphism between the connected component of B through source b0 and the connected crystal C
// with source c0. Returns the element map on the component (indexed by B ids), or empty on failure.
inline std::map<int, int> match_component(const Crystal& B, int b0, const Crystal& C, int c0) {
  std::map<int, int> m{{b0, c0}};
  std::map<int, int> inv{{c0, b0}};
  std::deque<int> q{b0};
  if (B.wt[b0] != C.wt[c0]) return {};
  while (!q.empty()) {
    const int b = q.front();
    q.pop_front();
    const int c = m[b];
    for (int i = 0; i < B.rank(); ++i)
      for (int dir = 0; dir < 2; ++dir) {
        const int nb = dir ? B.f[i][b] : B.e[i][b];
        const int nc = dir ? C.f[i][c] : C.e[i][c];
        if ((nb == kNone) != (nc == kNone)) return {};
        if (nb == kNone) continue;
        if (auto it = m.find(nb); it != m.end()) {
          if (it->second != nc) return {};
          continue;
        }
        if (inv.count(nc) || B.wt[nb] != C.wt[nc]) return {};
        m[nb] = nc;
        inv[nc] = nb;
        q.push_back(nb);
      }
  }
  return m;
}

inline CheckResult check_normal(const Crystal& B) {
  if (auto c = check_seminormal(B); !c.ok) return c;
  const int r = B.rank();
  std::vector<NodeSet> subsets;
  for (int i = 0; i < r; ++i) subsets.push_back({i});
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) subsets.push_back({i, j});
  for (const auto& J : subsets) {
    const Crystal R = restrict(B, J);
    std::vector<Component> comps;
    try {
      comps = components(R);
    } catch (const Error& err) {
      return CheckResult::fail(std::string("restriction to J has bad component: ") + err.what());
    }
    std::map<Weight, Crystal> cache;
    for (const auto& comp : comps) {
      const Weight hw = R.wt[comp.highest];
      if (!R.rs.is_dominant(hw))
        return CheckResult::fail("non-dominant source weight at element " + std::to_string(comp.highest));
      if (!cache.count(hw)) cache.emplace(hw, generate_crystal(R.rs, hw));
      const Crystal& G = cache.at(hw);
      const auto m = match_component(R, comp.highest, G, 0);
      if (m.size() != comp.elements.size() || static_cast<int>(m.size()) != G.size())
        return CheckResult::fail("component through element " + std::to_string(comp.highest) +
                                 " is not isomorphic to the crystal of its highest weight");
    }
  }
  return {};
}

// Checks that phi : A -> C commutes with wt, e_i, f_i and is a bijection.
inline CheckResult check_isomorphism(const Crystal& A, const Crystal& C, const std::vector<int>& phi) {
  if (A.size() != C.size() || static_cast<int>(phi.size()) != A.size()) return CheckResult::fail("size mismatch");
  std::vector<int> seen(C.size(), 0);
  for (int b = 0; b < A.size(); ++b) {
    if (phi[b] < 0 || phi[b] >= C.size() || seen[phi[b]]++) return CheckResult::fail("not a bijection");
    if (A.wt[b] != C.wt[phi[b]]) return CheckResult::fail("weight mismatch at element " + std::to_string(b));
    for (int i = 0; i < A.rank(); ++i) {
      const int ea = A.e[i][b], fa = A.f[i][b];
      if ((ea == kNone ? kNone : phi[ea]) != C.e[i][phi[b]] || (fa == kNone ? kNone : phi[fa]) != C.f[i][phi[b]])
        return CheckResult::fail("operator mismatch at element " + std::to_string(b));
    }
  }
  return {};
}

// Full isomorphism between normal crystals whose components are matched greedily by highest weight.
inline std::optional<std::vector<int>> find_isomorphism(const Crystal& A, const Crystal& C) {
  if (A.size() != C.size()) return std::nullopt;
  const auto ca = components(A), cc = components(C);
  std::vector<int> used(cc.size(), 0), phi(A.size(), kNone);
  for (const auto& comp : ca) {
    bool found = false;
    for (std::size_t k = 0; k < cc.size() && !found; ++k) {
      if (used[k] || cc[k].elements.size() != comp.elements.size()) continue;
      auto m = match_component(A, comp.highest, C, cc[k].highest);
      if (m.size() != comp.elements.size()) continue;
      for (auto [b, c] : m) phi[b] = c;
      used[k] = 1;
      found = true;
    }
    if (!found) return std::nullopt;
  }
  if (!check_isomorphism(A, C, phi).ok) return std::nullopt;
  return phi;
}

inline nlohmann::ordered_json weight_json(const Weight& w) {
  auto j = nlohmann::ordered_json::array();
  for (const auto& x : w) {
    if (is_integral(x))
      j.push_back(x.numerator());
    else
      j.push_back(to_string(x));
  }
  return j;
}

inline nlohmann::ordered_json crystal_json(const Crystal& B) {
  nlohmann::ordered_json j;
  j["type"] = B.rs.type_label();
  j["size"] = B.size();
  auto els = nlohmann::ordered_json::array();
  for (int b = 0; b < B.size(); ++b) els.push_back({{"id", b}, {"wt", weight_json(B.wt[b])}});
  j["elements"] = els;
  auto edges = nlohmann::ordered_json::array();
  for (int b = 0; b < B.size(); ++b)
    for (int i = 0; i < B.rank(); ++i)
      if (B.f[i][b] != kNone) edges.push_back({{"from", b}, {"to", B.f[i][b]}, {"i", i + 1}});
  j["edges"] = edges;
  return j;
}

inline std::string crystal_dot(const Crystal& B) {
  std::ostringstream os;
  os << "digraph crystal {\n";
  for (int b = 0; b < B.size(); ++b) os << "  n" << b << " [label=\"" << b << "\\n" << to_string(B.wt[b]) << "\"];\n";
  for (int b = 0; b < B.size(); ++b)
    for (int i = 0; i < B.rank(); ++i)
      if (B.f[i][b] != kNone) os << "  n" << b << " -> n" << B.f[i][b] << " [label=\"" << i + 1 << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace ccl
