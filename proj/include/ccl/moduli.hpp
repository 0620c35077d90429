#pragma once

// Labelled binary trees, nested sets and adapted bases in type A, charts, operad grafting and
// the parameter schedules used for cactus generators.

#include "ccl/rational.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <functional>
#include <memory>
#include <map>
#include <optional>
#include <set>
#include <variant>

namespace ccl {

struct Tree {
  int leaf = 0;             // > 0 for a leaf
  std::vector<Tree> kids;   // empty or exactly two

  static Tree make_leaf(int l) { return Tree{l, {}}; }
  static Tree join(Tree a, Tree b) { return Tree{0, {std::move(a), std::move(b)}}; }

  bool is_leaf() const { return kids.empty(); }
  bool operator==(const Tree&) const = default;

  std::vector<int> leaves() const {
    if (is_leaf()) return {leaf};
    auto a = kids[0].leaves();
    auto b = kids[1].leaves();
    a.insert(a.end(), b.begin(), b.end());
    return a;
  }
  int size() const { return static_cast<int>(leaves().size()); }
};

inline std::string print_tree(const Tree& t) {
  if (t.is_leaf()) return std::to_string(t.leaf);
  return "(" + print_tree(t.kids[0]) + " " + print_tree(t.kids[1]) + ")";
}

// Compact form for n <= 9, e.g. "(12)3".
inline std::string print_tree_compact(const Tree& t, bool top = true) {
  if (t.is_leaf()) return std::to_string(t.leaf);
  std::string s = print_tree_compact(t.kids[0], false) + print_tree_compact(t.kids[1], false);
  return top ? s : "(" + s + ")";
}

namespace detail {

struct TreeParser {
  std::string s;
  std::size_t pos = 0;
  bool spaced = false;

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }

  Tree item() {
    skip();
    if (pos >= s.size()) throw Error("tree: unexpected end of input");
    if (s[pos] == '(') {
      ++pos;
      Tree t = sequence(')');
      skip();
      if (pos >= s.size() || s[pos] != ')') throw Error("tree: missing ')'");
      ++pos;
      return t;
    }
    if (!std::isdigit(static_cast<unsigned char>(s[pos]))) throw Error(std::string("tree: unexpected character '") + s[pos] + "'");
    if (!spaced) return Tree::make_leaf(s[pos++] - '0');
    int v = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) v = 10 * v + (s[pos++] - '0');
    return Tree::make_leaf(v);
  }

  Tree sequence(char closer) {
    std::vector<Tree> items;
    for (;;) {
      skip();
      if (pos >= s.size() || s[pos] == closer) break;
      items.push_back(item());
    }
    if (items.size() == 1) return items[0];
    if (items.size() == 2) return Tree::join(items[0], items[1]);
    throw Error("tree: every bracket must hold exactly two items");
  }
};

}  // namespace detail

// Accepts "((1 2) 3)" (labels separated by spaces) or the compact "(12)3" (one digit per label).
inline Tree parse_tree(const std::string& text) {
  detail::TreeParser p{text, 0, text.find(' ') != std::string::npos};
  Tree t = p.sequence('\0');
  p.skip();
  if (p.pos != text.size()) throw Error("tree: trailing characters");
  auto l = t.leaves();
  std::sort(l.begin(), l.end());
  for (std::size_t k = 0; k < l.size(); ++k)
    if (l[k] != static_cast<int>(k) + 1) throw Error("tree: leaves must be labelled 1..n exactly once");
  return t;
}

// Nested set S(T) with adapted basis b(T): one entry per internal vertex.
struct NestedSet {
  int n = 0;
  std::vector<std::vector<int>> sets;            // P_v as sorted leaf sets; sets[0] is the top
  std::vector<std::pair<int, int>> basis;        // alpha_P = eps_l - eps_r
  std::vector<int> parent;                       // index of c(P); -1 for the top
};

inline NestedSet tree_to_nested_set(const Tree& t) {
  NestedSet ns;
  ns.n = t.size();
  std::function<void(const Tree&, int)> walk = [&](const Tree& v, int par) {
    if (v.is_leaf()) return;
    auto l = v.leaves();
    std::sort(l.begin(), l.end());
    const int me = static_cast<int>(ns.sets.size());
    ns.sets.push_back(l);
    auto left = v.kids[0].leaves(), right = v.kids[1].leaves();
    ns.basis.push_back({*std::max_element(left.begin(), left.end()), *std::min_element(right.begin(), right.end())});
    ns.parent.push_back(par);
    walk(v.kids[0], me);
    walk(v.kids[1], me);
  };
  walk(t, -1);
  return ns;
}

namespace detail {

// Exact rank of a list of integer vectors.
inline int rank_of(std::vector<std::vector<Q>> m) {
  int r = 0;
  const int cols = m.empty() ? 0 : static_cast<int>(m[0].size());
  for (int c = 0; c < cols && r < static_cast<int>(m.size()); ++c) {
    int piv = r;
    while (piv < static_cast<int>(m.size()) && m[piv][c] == 0) ++piv;
    if (piv == static_cast<int>(m.size())) continue;
    std::swap(m[piv], m[r]);
    for (std::size_t i = 0; i < m.size(); ++i)
      if (static_cast<int>(i) != r && m[i][c] != 0) {
        const Q f = m[i][c] / m[r][c];
        for (int j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
      }
    ++r;
  }
  return r;
}

inline std::vector<Q> root_vector(int n, std::pair<int, int> lr) {
  std::vector<Q> v(n, Q(0));
  v[lr.first - 1] += 1;
  v[lr.second - 1] -= 1;
  return v;
}

}  // namespace detail

// P = span(alpha_Q : Q subset of P) for every P in S.
inline bool check_adapted_basis(const NestedSet& ns) {
  for (std::size_t a = 0; a < ns.sets.size(); ++a) {
    const auto& P = ns.sets[a];
    std::vector<std::vector<Q>> gens;
    for (std::size_t b = 0; b < ns.sets.size(); ++b)
      if (std::includes(P.begin(), P.end(), ns.sets[b].begin(), ns.sets[b].end()))
        gens.push_back(detail::root_vector(ns.n, ns.basis[b]));
    // every generator lies in span(eps_i - eps_j : i,j in P)
    for (const auto& g : gens)
      for (int k = 0; k < ns.n; ++k)
        if (g[k] != 0 && !std::binary_search(P.begin(), P.end(), k + 1)) return false;
    if (detail::rank_of(gens) != static_cast<int>(P.size()) - 1) return false;
  }
  return true;
}

// Dual basis alpha_P^* of h = Q^n / Q(1,...,1), represented with last coordinate 0.
inline std::vector<std::vector<Q>> dual_basis(const NestedSet& ns) {
  const int n = ns.n, m = static_cast<int>(ns.basis.size());
  std::vector<std::vector<Q>> out;
  for (int target = 0; target < m; ++target) {
    // unknowns x_1..x_{n-1} (x_n = 0); equations <alpha_Q, x> = delta
    std::vector<std::vector<Q>> a(m, std::vector<Q>(n, Q(0)));
    for (int r = 0; r < m; ++r) {
      auto v = detail::root_vector(n, ns.basis[r]);
      for (int c = 0; c < n - 1; ++c) a[r][c] = v[c];
      a[r][n - 1] = r == target ? 1 : 0;
    }
    for (int c = 0; c < n - 1; ++c) {
      int piv = c;
      while (a[piv][c] == 0) ++piv;
      std::swap(a[piv], a[c]);
      for (int r = 0; r < m; ++r)
        if (r != c && a[r][c] != 0) {
          const Q f = a[r][c] / a[c][c];
          for (int k = c; k < n; ++k) a[r][k] -= f * a[c][k];
        }
    }
    std::vector<Q> x(n, Q(0));
    for (int c = 0; c < n - 1; ++c) x[c] = a[c][n - 1] / a[c][c];
    out.push_back(x);
  }
  return out;
}

struct Degeneration {
  std::vector<std::vector<int>> collapsed;  // leaf sets whose coordinate u_P is zero
};

using ChartPoint = std::variant<std::vector<Q>, Degeneration>;

// sum_P (prod_{P subset Q} u_Q) alpha_P^* with u_top = 1, in z-coordinates with z_n = 0.
// u is indexed like ns.sets; u[0] (the top) is ignored.
inline ChartPoint chart_to_configuration(const NestedSet& ns, const std::vector<Q>& u) {
  if (u.size() != ns.sets.size()) throw Error("chart: one coordinate per nested-set member required");
  Degeneration d;
  for (std::size_t k = 1; k < u.size(); ++k)
    if (u[k] == 0) d.collapsed.push_back(ns.sets[k]);
  if (!d.collapsed.empty()) return d;
  const auto dual = dual_basis(ns);
  std::vector<Q> z(ns.n, Q(0));
  for (std::size_t k = 0; k < ns.sets.size(); ++k) {
    Q coef(1);
    for (int q = static_cast<int>(k); q > 0; q = ns.parent[q]) coef *= u[q];
    for (int c = 0; c < ns.n; ++c) z[c] += coef * dual[k][c];
  }
  return z;
}

// Operad grafting: leaf i of outer is replaced by inners[i-1], labels shifted by k_1+...+k_{i-1}.
inline Tree operad_compose(const Tree& outer, const std::vector<Tree>& inners) {
  const int n = outer.size();
  if (static_cast<int>(inners.size()) != n) throw Error("operad_compose: arity mismatch");
  std::vector<int> offset(n + 1, 0);
  for (int i = 0; i < n; ++i) offset[i + 1] = offset[i] + inners[i].size();
  std::function<Tree(const Tree&, int)> shift = [&](const Tree& t, int by) {
    if (t.is_leaf()) return Tree::make_leaf(t.leaf + by);
    return Tree::join(shift(t.kids[0], by), shift(t.kids[1], by));
  };
  std::function<Tree(const Tree&)> graft = [&](const Tree& t) {
    if (t.is_leaf()) return shift(inners[t.leaf - 1], offset[t.leaf - 1]);
    return Tree::join(graft(t.kids[0]), graft(t.kids[1]));
  };
  return graft(outer);
}

// S_n action by relabelling leaves: leaf l becomes w[l-1].
inline Tree relabel(const Tree& t, const std::vector<int>& w) {
  if (t.is_leaf()) return Tree::make_leaf(w[t.leaf - 1]);
  return Tree::join(relabel(t.kids[0], w), relabel(t.kids[1], w));
}

// ---------------------------------------------------------------------------------------------
// Parameter schedules for external cactus generators.

struct ScheduleSegment {
  double t0 = 0, t1 = 1;
  std::vector<double> z_start, z_end;
  std::optional<nlohmann::ordered_json> handoff;
};

struct PathSchedule {
  int n = 0, p = 0, q = 0;
  std::string action;  // "swap" (n = 2), "flip" (full reversal at a symmetric point), "cluster"
  std::vector<ScheduleSegment> segments;
  std::vector<double> inner_config;  // normalised symmetric configuration of the cluster
  std::shared_ptr<PathSchedule> inner;
};

inline std::vector<double> symmetric_configuration(const std::vector<double>& z) {
  const std::size_t n = z.size();
  std::vector<double> s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = 0.5 * (z[i] - z[n - 1 - i]);
  return s;
}

inline std::vector<double> standard_symmetric(int k) {
  std::vector<double> y(k);
  for (int i = 0; i < k; ++i) y[i] = k == 1 ? 0.0 : static_cast<double>(i) / (k - 1) - 0.5;
  return y;
}

inline double min_gap(const std::vector<double>& z) {
  double g = 1e300;
  for (std::size_t i = 0; i + 1 < z.size(); ++i) g = std::min(g, z[i + 1] - z[i]);
  return g;
}

inline PathSchedule cactus_path_schedule(int n, int p, int q, const std::vector<double>& base, double delta) {
  if (static_cast<int>(base.size()) != n) throw Error("schedule: base has wrong length");
  if (p < 1 || q > n || p >= q) throw Error("schedule: generator out of range");
  for (int i = 0; i + 1 < n; ++i)
    if (!(base[i] < base[i + 1])) throw Error("schedule: base must be strictly increasing");
  PathSchedule s;
  s.n = n;
  s.p = p;
  s.q = q;
  const int k = q - p + 1;
  if (n == 2) {
    s.action = "swap";
    return s;
  }
  if (k == n) {
    s.action = "flip";
    s.segments.push_back({0.0, 1.0, base, symmetric_configuration(base), std::nullopt});
    return s;
  }
  if (!(delta > 0) || !(delta < 0.5 * min_gap(base))) throw Error("schedule: delta must be below half the minimal gap");
  s.action = "cluster";
  s.inner_config = standard_symmetric(k);
  std::vector<double> end = base;
  const double c = 0.5 * (base[p - 1] + base[q - 1]);
  for (int i = p; i <= q; ++i) end[i - 1] = c + delta * s.inner_config[i - p];
  nlohmann::ordered_json h;
  h["cluster"] = {p, q};
  h["center"] = c;
  h["width"] = delta;
  h["inner_config"] = s.inner_config;
  s.segments.push_back({0.0, 1.0, base, end, h});
  s.inner = std::make_shared<PathSchedule>(k == 2 ? PathSchedule{2, 1, 2, "swap", {}, {}, nullptr}
                                                  : cactus_path_schedule(k, 1, k, s.inner_config, 0.0));
  return s;
}

inline nlohmann::ordered_json schedule_json(const PathSchedule& s) {
  nlohmann::ordered_json j;
  j["n"] = s.n;
  j["generator"] = {s.p, s.q};
  j["action"] = s.action;
  auto segs = nlohmann::ordered_json::array();
  for (const auto& g : s.segments) {
    nlohmann::ordered_json e;
    e["t0"] = g.t0;
    e["t1"] = g.t1;
    e["z_start"] = g.z_start;
    e["z_end"] = g.z_end;
    e["handoff"] = g.handoff ? *g.handoff : nlohmann::ordered_json(nullptr);
    segs.push_back(e);
  }
  j["segments"] = segs;
  j["inner"] = s.inner ? schedule_json(*s.inner) : nlohmann::ordered_json(nullptr);
  return j;
}

}  // namespace ccl
