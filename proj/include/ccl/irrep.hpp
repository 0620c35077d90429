#pragma once

// Irreducible representations of sl2 and sl3 as real matrices in an orthonormal weight basis.
// sl3 uses Gelfand-Tsetlin patterns; f_i is the transpose of e_i throughout.

#include "ccl/rational.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <string>
#include <vector>

namespace ccl {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

struct Irrep {
  std::string tag;                           // "sl2" or "sl3"
  std::vector<int> lambda;                   // fundamental-weight coordinates
  int dim = 0;
  std::vector<Mat> e, f, h;                  // Chevalley generators, one per simple root
  std::vector<std::vector<int>> weights;     // weight of each basis vector
  std::vector<std::string> labels;
};

inline int lie_rank(const std::string& tag) {
  if (tag == "sl2") return 1;
  if (tag == "sl3") return 2;
  throw Error("unsupported algebra '" + tag + "' (expected sl2 or sl3)");
}

inline std::vector<std::vector<int>> lie_cartan(const std::string& tag) {
  if (lie_rank(tag) == 1) return {{2}};
  return {{2, -1}, {-1, 2}};
}

inline std::string lie_type_label(const std::string& tag) { return lie_rank(tag) == 1 ? "A1" : "A2"; }

inline Irrep build_sl2_irrep(int m) {
  if (m < 0) throw Error("sl2 highest weight must be non-negative");
  Irrep V;
  V.tag = "sl2";
  V.lambda = {m};
  V.dim = m + 1;
  Mat e = Mat::Zero(m + 1, m + 1), h = Mat::Zero(m + 1, m + 1);
  for (int k = 0; k <= m; ++k) {
    h(k, k) = m - 2 * k;
    if (k > 0) e(k - 1, k) = std::sqrt(static_cast<double>(k * (m - k + 1)));
    V.weights.push_back({m - 2 * k});
    V.labels.push_back("v" + std::to_string(k));
  }
  V.e = {e};
  V.f = {e.transpose()};
  V.h = {h};
  return V;
}

// Gelfand-Tsetlin basis of the gl3 module with top row (l1+l2, l2, 0), orthonormal form.
inline Irrep build_sl3_irrep(int l1, int l2) {
  if (l1 < 0 || l2 < 0) throw Error("sl3 highest weight must be dominant");
  const int m1 = l1 + l2, m2 = l2, m3 = 0;
  struct Pattern {
    int a, b, c;
  };
  std::vector<Pattern> pats;
  for (int a = m2; a <= m1; ++a)
    for (int b = m3; b <= m2; ++b)
      for (int c = b; c <= a; ++c) pats.push_back({a, b, c});
  const int d = static_cast<int>(pats.size());
  auto index = [&](int a, int b, int c) {
    for (int k = 0; k < d; ++k)
      if (pats[k].a == a && pats[k].b == b && pats[k].c == c) return k;
    return -1;
  };
  Irrep V;
  V.tag = "sl3";
  V.lambda = {l1, l2};
  V.dim = d;
  Mat e1 = Mat::Zero(d, d), e2 = Mat::Zero(d, d), h1 = Mat::Zero(d, d), h2 = Mat::Zero(d, d);
  // l_{k,i} = m_{k,i} - i + 1
  const double t1 = m1, t2 = m2 - 1, t3 = m3 - 2;
  for (int k = 0; k < d; ++k) {
    const auto [a, b, c] = pats[k];
    const int E11 = c, E22 = a + b - c, E33 = m1 + m2 + m3 - a - b;
    h1(k, k) = E11 - E22;
    h2(k, k) = E22 - E33;
    V.weights.push_back({E11 - E22, E22 - E33});
    V.labels.push_back("[" + std::to_string(m1) + " " + std::to_string(m2) + " " + std::to_string(m3) + "; " +
                       std::to_string(a) + " " + std::to_string(b) + "; " + std::to_string(c) + "]");
    // E12 raises c
    if (int j = index(a, b, c + 1); j >= 0) {
      const double l11 = c, l21 = a, l22 = b - 1;
      const double v = -(l21 - l11) * (l22 - l11);
      e1(j, k) = std::sqrt(std::max(v, 0.0));
    }
    // E23 raises a or b
    const double l21 = a, l22 = b - 1, l11 = c;
    if (int j = index(a + 1, b, c); j >= 0) {
      const double num = -(t1 - l21) * (t2 - l21) * (t3 - l21) * (l11 - l21 - 1);
      const double den = (l22 - l21) * (l22 - l21 - 1);
      e2(j, k) = std::sqrt(std::max(num / den, 0.0));
    }
    if (int j = index(a, b + 1, c); j >= 0) {
      const double num = -(t1 - l22) * (t2 - l22) * (t3 - l22) * (l11 - l22 - 1);
      const double den = (l21 - l22) * (l21 - l22 - 1);
      e2(j, k) = std::sqrt(std::max(num / den, 0.0));
    }
  }
  V.e = {e1, e2};
  V.f = {e1.transpose(), e2.transpose()};
  V.h = {h1, h2};
  return V;
}

inline Irrep build_irrep(const std::string& tag, const std::vector<int>& lambda) {
  const int r = lie_rank(tag);
  if (static_cast<int>(lambda.size()) != r) throw Error("highest weight has wrong length for " + tag);
  return r == 1 ? build_sl2_irrep(lambda[0]) : build_sl3_irrep(lambda[0], lambda[1]);
}

// Positive root vectors with trace-form normalisation tr(e_a f_a) = 1 in the defining representation.
struct RootVectors {
  std::vector<std::vector<int>> roots;  // simple-root coordinates
  std::vector<Mat> e, f;
};

inline RootVectors root_vectors(const std::string& tag, const std::vector<Mat>& e, const std::vector<Mat>& f) {
  RootVectors R;
  if (lie_rank(tag) == 1) {
    R.roots = {{1}};
    R.e = {e[0]};
    R.f = {f[0]};
    return R;
  }
  R.roots = {{1, 0}, {0, 1}, {1, 1}};
  R.e = {e[0], e[1], e[0] * e[1] - e[1] * e[0]};
  R.f = {f[0], f[1], f[1] * f[0] - f[0] * f[1]};
  return R;
}

inline RootVectors root_vectors(const Irrep& V) { return root_vectors(V.tag, V.e, V.f); }

// Inverse Cartan matrix (the Cartan part of the split Casimir).
inline Mat cartan_inverse(const std::string& tag) {
  const auto A = lie_cartan(tag);
  const int r = static_cast<int>(A.size());
  Mat M(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) M(i, j) = A[i][j];
  return M.inverse();
}

// alpha(x) for a root alpha (simple-root coordinates) and x in coroot coordinates.
inline double root_value(const std::string& tag, const std::vector<int>& alpha, const std::vector<double>& x) {
  const auto A = lie_cartan(tag);
  double v = 0;
  for (std::size_t j = 0; j < alpha.size(); ++j)
    for (std::size_t k = 0; k < x.size(); ++k) v += alpha[j] * x[k] * A[k][j];
  return v;
}

}  // namespace ccl
