#pragma once

#include "ccl/rational.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace ccl {

// Letters are 0-based simple reflection indices; w = s_{l[0]} s_{l[1]} ... acts right to left.
struct WeylWord {
  std::vector<int> letters;
  std::size_t length() const { return letters.size(); }
  bool operator==(const WeylWord&) const = default;
};

using NodeSet = std::vector<int>;  // sorted, 0-based

class RootSystem {
 public:
  RootSystem() = default;

  static RootSystem build(const std::string& type_label) {
    static const std::set<std::string> allowed = {"A1", "A2", "A3", "A4", "B2", "C2", "G2", "D4"};
    if (!allowed.count(type_label)) throw Error("unsupported root system type: " + type_label);
    const char family = type_label[0];
    const int r = type_label[1] - '0';
    std::vector<std::vector<int>> a(r, std::vector<int>(r, 0));
    for (int i = 0; i < r; ++i) a[i][i] = 2;
    switch (family) {
      case 'A':
        for (int i = 0; i + 1 < r; ++i) a[i][i + 1] = a[i + 1][i] = -1;
        break;
      case 'B':  // alpha_1 long, alpha_2 short
        a = {{2, -1}, {-2, 2}};
        break;
      case 'C':  // alpha_1 short, alpha_2 long
        a = {{2, -2}, {-1, 2}};
        break;
      case 'G':  // alpha_1 short, alpha_2 long
        a = {{2, -3}, {-1, 2}};
        break;
      case 'D':  // node 2 is the branch node
        a = {{2, -1, 0, 0}, {-1, 2, -1, -1}, {0, -1, 2, 0}, {0, -1, 0, 2}};
        break;
    }
    return from_cartan(type_label, a);
  }

  // Used for parabolic subsystems; not exposed as a general constructor in the CLI.
  static RootSystem from_cartan(std::string label, std::vector<std::vector<int>> a) {
    RootSystem rs;
    rs.type_label_ = std::move(label);
    rs.rank_ = static_cast<int>(a.size());
    rs.cartan_ = std::move(a);
    rs.validate_cartan();
    rs.compute_symmetrizer();
    rs.compute_positive_roots();
    return rs;
  }

  const std::string& type_label() const { return type_label_; }
  int rank() const { return rank_; }
  const std::vector<std::vector<int>>& cartan() const { return cartan_; }
  const std::vector<std::vector<int>>& positive_roots() const { return positive_roots_; }
  Q symmetrizer(int i) const { return d_[i]; }
  NodeSet all_nodes() const {
    NodeSet s(rank_);
    for (int i = 0; i < rank_; ++i) s[i] = i;
    return s;
  }

  // alpha_j in fundamental-weight coordinates: component i is <alpha_i^vee, alpha_j>.
  Weight simple_root(int j) const {
    Weight w(rank_);
    for (int i = 0; i < rank_; ++i) w[i] = cartan_[i][j];
    return w;
  }

  Weight fundamental_weight(int j) const {
    Weight w(rank_, Q(0));
    w[j] = 1;
    return w;
  }

  Weight root_weight(const std::vector<int>& c) const {
    Weight w(rank_, Q(0));
    for (int j = 0; j < rank_; ++j)
      if (c[j]) w = w + Q(c[j]) * simple_root(j);
    return w;
  }

  // <lambda, beta^vee> for a root beta given in simple-root coordinates.
  Q coroot_pairing(const Weight& lambda, const std::vector<int>& beta) const {
    Q num(0), half_norm(0);
    for (int i = 0; i < rank_; ++i) {
      num += Q(beta[i]) * d_[i] * lambda[i];
      for (int j = 0; j < rank_; ++j) half_norm += Q(beta[i] * beta[j]) * d_[i] * Q(cartan_[i][j]);
    }
    half_norm /= 2;
    return num / half_norm;
  }

  // Symmetric invariant form on weights, normalised by (alpha_i, alpha_j) = d_i a_ij.
  Q inner(const Weight& x, const Weight& y) const {
    const Weight c = to_root_coords(y);
    Q s(0);
    for (int j = 0; j < rank_; ++j) s += c[j] * d_[j] * x[j];
    return s;
  }

  // Solve y = sum_j c_j alpha_j for c (exact).
  Weight to_root_coords(const Weight& y) const {
    const int r = rank_;
    std::vector<std::vector<Q>> m(r, std::vector<Q>(r + 1));
    for (int i = 0; i < r; ++i) {
      for (int j = 0; j < r; ++j) m[i][j] = cartan_[i][j];
      m[i][r] = y[i];
    }
    for (int col = 0; col < r; ++col) {
      int piv = col;
      while (m[piv][col] == 0) ++piv;
      std::swap(m[piv], m[col]);
      for (int i = 0; i < r; ++i) {
        if (i == col || m[i][col] == 0) continue;
        const Q f = m[i][col] / m[col][col];
        for (int j = col; j <= r; ++j) m[i][j] -= f * m[col][j];
      }
    }
    Weight c(r);
    for (int i = 0; i < r; ++i) c[i] = m[i][r] / m[i][i];
    return c;
  }

  Weight reflect(int i, const Weight& lambda) const {
    return lambda - lambda[i] * simple_root(i);
  }

  Weight apply(const WeylWord& w, const Weight& lambda) const {
    Weight v = lambda;
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) v = reflect(*it, v);
    return v;
  }

  std::vector<int> reflect_root(int i, const std::vector<int>& beta) const {
    int pairing = 0;
    for (int j = 0; j < rank_; ++j) pairing += beta[j] * cartan_[i][j];
    std::vector<int> r = beta;
    r[i] -= pairing;
    return r;
  }

  std::vector<int> apply_to_root(const WeylWord& w, const std::vector<int>& beta) const {
    std::vector<int> v = beta;
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) v = reflect_root(*it, v);
    return v;
  }

  Weight rho() const { return Weight(rank_, Q(1)); }

  bool is_dominant(const Weight& lambda) const {
    for (const auto& x : lambda)
      if (x < 0) return false;
    return true;
  }

  bool is_connected(const NodeSet& J) const {
    if (J.empty()) return false;
    std::set<int> seen{J[0]};
    std::deque<int> q{J[0]};
    while (!q.empty()) {
      int i = q.front();
      q.pop_front();
      for (int j : J)
        if (!seen.count(j) && cartan_[i][j] != 0) {
          seen.insert(j);
          q.push_back(j);
        }
    }
    return seen.size() == J.size();
  }

  // Reduced word for w0^J via descent from a J-regular dominant weight.
  WeylWord longest_element(const NodeSet& J) const {
    if (J.empty()) throw Error("longest_element: empty node set");
    Weight v(rank_, Q(0));
    for (int j : J) v[j] = 1;
    std::vector<int> steps;
    for (bool moved = true; moved;) {
      moved = false;
      for (int j : J)
        if (v[j] > 0) {
          v = reflect(j, v);
          steps.push_back(j);
          moved = true;
          break;
        }
    }
    std::reverse(steps.begin(), steps.end());
    return WeylWord{steps};
  }

  WeylWord longest_element() const { return longest_element(all_nodes()); }

  // Diagram involution theta_J with alpha_{theta(j)} = -w0^J(alpha_j).
  std::map<int, int> theta(const NodeSet& J) const {
    if (!is_connected(J)) throw Error("theta: node set must be nonempty and connected");
    const WeylWord w0 = longest_element(J);
    std::map<int, int> th;
    for (int j : J) {
      std::vector<int> e(rank_, 0);
      e[j] = 1;
      std::vector<int> img = apply_to_root(w0, e);
      int target = -1;
      for (int k = 0; k < rank_; ++k) {
        if (img[k] == 0) continue;
        if (img[k] != -1 || target != -1) throw Error("theta: -w0 does not permute simple roots");
        target = k;
      }
      th[j] = target;
    }
    return th;
  }

  std::vector<std::vector<int>> sub_cartan(const NodeSet& J) const {
    std::vector<std::vector<int>> a(J.size(), std::vector<int>(J.size()));
    for (std::size_t x = 0; x < J.size(); ++x)
      for (std::size_t y = 0; y < J.size(); ++y) a[x][y] = cartan_[J[x]][J[y]];
    return a;
  }

  RootSystem parabolic(const NodeSet& J) const {
    std::string label = type_label_ + "|{";
    for (std::size_t k = 0; k < J.size(); ++k) label += (k ? "," : "") + std::to_string(J[k] + 1);
    return from_cartan(label + "}", sub_cartan(J));
  }

  std::size_t count_positive_roots_in(const NodeSet& J) const {
    std::size_t n = 0;
    for (const auto& b : positive_roots_) {
      bool inside = true;
      for (int k = 0; k < rank_; ++k)
        if (b[k] != 0 && !std::binary_search(J.begin(), J.end(), k)) inside = false;
      n += inside;
    }
    return n;
  }

 private:
  void validate_cartan() const {
    for (int i = 0; i < rank_; ++i) {
      if (static_cast<int>(cartan_[i].size()) != rank_) throw Error("cartan matrix not square");
      for (int j = 0; j < rank_; ++j) {
        if (i == j && cartan_[i][j] != 2) throw Error("cartan diagonal must be 2");
        if (i != j && cartan_[i][j] > 0) throw Error("cartan off-diagonal must be <= 0");
        if (i != j && (cartan_[i][j] == 0) != (cartan_[j][i] == 0)) throw Error("cartan zero pattern not symmetric");
      }
    }
  }

  void compute_symmetrizer() {
    d_.assign(rank_, Q(0));
    for (int start = 0; start < rank_; ++start) {
      if (d_[start] != 0) continue;
      d_[start] = 1;
      std::deque<int> q{start};
      while (!q.empty()) {
        int i = q.front();
        q.pop_front();
        for (int j = 0; j < rank_; ++j)
          if (j != i && cartan_[i][j] != 0 && d_[j] == 0) {
            d_[j] = d_[i] * Q(cartan_[i][j]) / Q(cartan_[j][i]);
            q.push_back(j);
          }
      }
    }
    for (int i = 0; i < rank_; ++i)
      for (int j = 0; j < rank_; ++j)
        if (d_[i] * cartan_[i][j] != d_[j] * cartan_[j][i]) throw Error("cartan matrix not symmetrizable");
  }

  void compute_positive_roots() {
    std::set<std::vector<int>> seen;
    std::deque<std::vector<int>> q;
    for (int i = 0; i < rank_; ++i) {
      std::vector<int> e(rank_, 0);
      e[i] = 1;
      seen.insert(e);
      q.push_back(e);
    }
    while (!q.empty()) {
      auto b = q.front();
      q.pop_front();
      for (int i = 0; i < rank_; ++i) {
        auto c = reflect_root(i, b);
        bool positive = std::all_of(c.begin(), c.end(), [](int x) { return x >= 0; });
        if (positive && !seen.count(c)) {
          seen.insert(c);
          q.push_back(c);
        }
      }
    }
    positive_roots_.assign(seen.begin(), seen.end());
    std::stable_sort(positive_roots_.begin(), positive_roots_.end(), [](const auto& x, const auto& y) {
      int hx = 0, hy = 0;
      for (int v : x) hx += v;
      for (int v : y) hy += v;
      return hx < hy;
    });
  }

  std::string type_label_;
  int rank_ = 0;
  std::vector<std::vector<int>> cartan_;
  std::vector<Q> d_;
  std::vector<std::vector<int>> positive_roots_;
};

inline std::uint64_t weyl_dimension(const RootSystem& rs, const Weight& lambda) {
  if (!rs.is_dominant(lambda)) throw Error("weyl_dimension: weight is not dominant");
  const Weight rho = rs.rho();
  const Weight lr = lambda + rho;
  Q prod(1);
  for (const auto& beta : rs.positive_roots()) prod *= rs.coroot_pairing(lr, beta) / rs.coroot_pairing(rho, beta);
  if (!is_integral(prod)) throw Error("weyl_dimension: non-integral result");
  return static_cast<std::uint64_t>(prod.numerator());
}

// Dominant W-conjugate of a weight.
inline Weight dominant_conjugate(const RootSystem& rs, Weight v) {
  for (bool moved = true; moved;) {
    moved = false;
    for (int i = 0; i < rs.rank(); ++i)
      if (v[i] < 0) {
        v = rs.reflect(i, v);
        moved = true;
      }
  }
  return v;
}

}  // namespace ccl
