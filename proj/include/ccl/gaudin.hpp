#pragma once

// Tensor-product spaces and the quadratic operator families: Casimirs, split Casimirs Omega^(ij),
// Gaudin Hamiltonians H_i, Cartan elements, dynamical (shift-of-argument) generators G_h and lifts
// of Weyl group elements.

#include "ccl/irrep.hpp"
#include "ccl/root_system.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <map>

namespace ccl {

// Operators on a space that carries a g-action: e, f, h for the diagonal action plus their
// per-factor versions when the space is a tensor product.
class TensorSpace {
 public:
  TensorSpace() = default;
  explicit TensorSpace(std::vector<Irrep> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) throw Error("tensor space needs at least one factor");
    tag_ = factors_[0].tag;
    rank_ = lie_rank(tag_);
    dim_ = 1;
    for (const auto& V : factors_) {
      if (V.tag != tag_) throw Error("tensor space factors must share the algebra");
      dim_ *= V.dim;
    }
    const int n = size();
    local_.resize(n);
    for (int i = 0; i < n; ++i) {
      const auto& V = factors_[i];
      Local L;
      for (int k = 0; k < rank_; ++k) {
        L.e.push_back(lift(i, V.e[k]));
        L.f.push_back(lift(i, V.f[k]));
        L.h.push_back(lift(i, V.h[k]));
      }
      L.roots = root_vectors(tag_, L.e, L.f);
      local_[i] = std::move(L);
    }
  }

  const std::string& tag() const { return tag_; }
  int rank() const { return rank_; }
  int dim() const { return dim_; }
  int size() const { return static_cast<int>(factors_.size()); }
  const std::vector<Irrep>& factors() const { return factors_; }

  // I (x) ... (x) M (x) ... (x) I with M on factor i.
  Mat lift(int i, const Mat& M) const {
    int left = 1, right = 1;
    for (int k = 0; k < i; ++k) left *= factors_[k].dim;
    for (int k = i + 1; k < size(); ++k) right *= factors_[k].dim;
    Mat A = Eigen::kroneckerProduct(Mat::Identity(left, left), M).eval();
    return Eigen::kroneckerProduct(A, Mat::Identity(right, right)).eval();
  }

  const Mat& e(int i, int k) const { return local_[i].e[k]; }
  const Mat& f(int i, int k) const { return local_[i].f[k]; }
  const Mat& h(int i, int k) const { return local_[i].h[k]; }
  const RootVectors& roots(int i) const { return local_[i].roots; }

  std::vector<int> all() const {
    std::vector<int> s(size());
    for (int i = 0; i < size(); ++i) s[i] = i;
    return s;
  }

  // Diagonal action of the factors in S.
  Mat delta_e(const std::vector<int>& S, int k) const { return sum(S, [&](int i) { return e(i, k); }); }
  Mat delta_f(const std::vector<int>& S, int k) const { return sum(S, [&](int i) { return f(i, k); }); }
  Mat delta_h(const std::vector<int>& S, int k) const { return sum(S, [&](int i) { return h(i, k); }); }
  Mat delta_root_e(const std::vector<int>& S, int a) const { return sum(S, [&](int i) { return roots(i).e[a]; }); }
  Mat delta_root_f(const std::vector<int>& S, int a) const { return sum(S, [&](int i) { return roots(i).f[a]; }); }
  int num_positive_roots() const { return static_cast<int>(local_[0].roots.roots.size()); }
  const std::vector<int>& positive_root(int a) const { return local_[0].roots.roots[a]; }

  // Weight of each product basis vector.
  std::vector<std::vector<int>> basis_weights() const {
    std::vector<std::vector<int>> w(dim_, std::vector<int>(rank_, 0));
    for (int x = 0; x < dim_; ++x) {
      int rem = x;
      for (int i = size() - 1; i >= 0; --i) {
        const int d = factors_[i].dim;
        const int c = rem % d;
        rem /= d;
        for (int k = 0; k < rank_; ++k) w[x][k] += factors_[i].weights[c][k];
      }
    }
    return w;
  }

 private:
  struct Local {
    std::vector<Mat> e, f, h;
    RootVectors roots;
  };

  template <class F>
  Mat sum(const std::vector<int>& S, F&& get) const {
    Mat M = Mat::Zero(dim_, dim_);
    for (int i : S) M += get(i);
    return M;
  }

  std::string tag_;
  int rank_ = 0;
  int dim_ = 0;
  std::vector<Irrep> factors_;
  std::vector<Local> local_;
};

// Quadratic Casimir of the diagonal action of the factors in S: sum over dual bases of the trace form.
inline Mat casimir(const TensorSpace& V, const std::vector<int>& S) {
  Mat C = Mat::Zero(V.dim(), V.dim());
  for (int a = 0; a < V.num_positive_roots(); ++a) {
    const Mat E = V.delta_root_e(S, a), F = V.delta_root_f(S, a);
    C += E * F + F * E;
  }
  const Mat Ainv = cartan_inverse(V.tag());
  for (int k = 0; k < V.rank(); ++k)
    for (int l = 0; l < V.rank(); ++l) C += Ainv(k, l) * V.delta_h(S, k) * V.delta_h(S, l);
  return C;
}

inline Mat casimir(const TensorSpace& V) { return casimir(V, V.all()); }

inline Mat omega(const TensorSpace& V, int i, int j) {
  if (i == j) throw Error("omega: indices must differ");
  if (i < 0 || j < 0 || i >= V.size() || j >= V.size()) throw Error("omega: index out of range");
  Mat W = Mat::Zero(V.dim(), V.dim());
  for (int a = 0; a < V.num_positive_roots(); ++a)
    W += V.roots(i).e[a] * V.roots(j).f[a] + V.roots(i).f[a] * V.roots(j).e[a];
  const Mat Ainv = cartan_inverse(V.tag());
  for (int k = 0; k < V.rank(); ++k)
    for (int l = 0; l < V.rank(); ++l) W += Ainv(k, l) * V.h(i, k) * V.h(j, l);
  return W;
}

// chi given in coroot coordinates: chi = sum_k chi_k h_k.
inline Mat cartan_element(const TensorSpace& V, int i, const std::vector<double>& chi) {
  Mat M = Mat::Zero(V.dim(), V.dim());
  for (int k = 0; k < V.rank() && k < static_cast<int>(chi.size()); ++k) M += chi[k] * V.h(i, k);
  return M;
}

inline void require_distinct(const std::vector<double>& z) {
  for (std::size_t i = 0; i < z.size(); ++i)
    for (std::size_t j = i + 1; j < z.size(); ++j)
      if (z[i] == z[j]) throw Error("configuration has coincident points");
}

// H_i = sum_{j != i} Omega^(ij)/(z_i - z_j) + chi^(i)
inline Mat gaudin_hamiltonian(const TensorSpace& V, const std::vector<double>& z, const std::vector<double>& chi, int i) {
  if (static_cast<int>(z.size()) != V.size()) throw Error("configuration length does not match the number of factors");
  require_distinct(z);
  Mat H = cartan_element(V, i, chi);
  for (int j = 0; j < V.size(); ++j)
    if (j != i) H += omega(V, i, j) / (z[i] - z[j]);
  return H;
}

inline std::vector<Mat> gaudin_hamiltonians(const TensorSpace& V, const std::vector<double>& z, const std::vector<double>& chi) {
  std::vector<Mat> out;
  for (int i = 0; i < V.size(); ++i) out.push_back(gaudin_hamiltonian(V, z, chi, i));
  for (int k = 0; k < V.rank(); ++k) out.push_back(V.delta_h(V.all(), k));
  return out;
}

inline bool chi_regular(const std::string& tag, const std::vector<double>& chi) {
  const auto rs = RootSystem::build(lie_type_label(tag));
  for (const auto& a : rs.positive_roots())
    if (std::abs(root_value(tag, a, chi)) < 1e-14) return false;
  return true;
}

// Shift-of-argument part on the factors S: sum_{alpha>0} alpha(h)/alpha(chi) Delta(e_alpha) Delta(f_alpha),
// skipping roots with alpha(h) = 0 (needed at walls, where alpha(chi) may vanish for those roots).
inline Mat shift_part(const TensorSpace& V, const std::vector<int>& S, const std::vector<double>& h, const std::vector<double>& chi) {
  Mat G = Mat::Zero(V.dim(), V.dim());
  for (int a = 0; a < V.num_positive_roots(); ++a) {
    const double ah = root_value(V.tag(), V.positive_root(a), h);
    if (ah == 0) continue;
    const double ac = root_value(V.tag(), V.positive_root(a), chi);
    if (ac == 0) throw Error("chi lies on a wall for a root that h does not annihilate");
    G += (ah / ac) * V.delta_root_e(S, a) * V.delta_root_f(S, a);
  }
  return G;
}

// G_h = sum_i z_i h^(i) + sum_{alpha>0} alpha(h)/alpha(chi) Delta(e_alpha) Delta(f_alpha)
inline Mat dynamical_hamiltonian(const TensorSpace& V, const std::vector<double>& z, const std::vector<double>& chi,
                                 const std::vector<double>& h) {
  if (!chi_regular(V.tag(), chi)) throw Error("chi is not regular; use the wall family instead");
  Mat G = shift_part(V, V.all(), h, chi);
  for (int i = 0; i < V.size(); ++i) G += z[i] * cartan_element(V, i, h);
  return G;
}

inline std::vector<double> coroot_basis(int rank, int k) {
  std::vector<double> h(rank, 0.0);
  h[k] = 1.0;
  return h;
}

inline std::vector<Mat> dynamical_hamiltonians(const TensorSpace& V, const std::vector<double>& z, const std::vector<double>& chi) {
  std::vector<Mat> out;
  for (int k = 0; k < V.rank(); ++k) out.push_back(dynamical_hamiltonian(V, z, chi, coroot_basis(V.rank(), k)));
  return out;
}

// Full quadratic family A_chi(z): H_i, Delta(h_k) and, for chi != 0, G_{h_k}.
inline std::vector<Mat> quadratic_family(const TensorSpace& V, const std::vector<double>& z, const std::vector<double>& chi) {
  auto out = gaudin_hamiltonians(V, z, chi);
  bool zero = true;
  for (double c : chi) zero = zero && c == 0;
  if (!zero)
    for (auto& G : dynamical_hamiltonians(V, z, chi)) out.push_back(std::move(G));
  return out;
}

inline double commutator_defect(const Mat& A, const Mat& B) {
  const double na = A.norm(), nb = B.norm();
  if (na == 0 || nb == 0) return 0;
  return (A * B - B * A).norm() / (na * nb);
}

inline double max_commutator_defect(const std::vector<Mat>& gens) {
  double worst = 0;
  for (std::size_t a = 0; a < gens.size(); ++a)
    for (std::size_t b = a + 1; b < gens.size(); ++b) worst = std::max(worst, commutator_defect(gens[a], gens[b]));
  return worst;
}

// exp of a nilpotent matrix as a finite sum.
inline Mat nilpotent_exp(const Mat& X) {
  Mat term = Mat::Identity(X.rows(), X.cols()), out = term;
  for (int k = 1; k <= X.rows(); ++k) {
    term = term * X / static_cast<double>(k);
    if (term.norm() == 0) break;
    out += term;
  }
  return out;
}

// n_i = exp(e_i) exp(-f_i) exp(e_i) for the diagonal action; a word acts right to left.
inline Mat weyl_lift(const std::vector<Mat>& e, const std::vector<Mat>& f, const WeylWord& w) {
  const int d = static_cast<int>(e[0].rows());
  Mat M = Mat::Identity(d, d);
  for (int i : w.letters) {
    const Mat Ei = nilpotent_exp(e[i]);
    M = M * (Ei * nilpotent_exp(-f[i]) * Ei);
  }
  return M;
}

inline Mat weyl_lift(const TensorSpace& V, const WeylWord& w) {
  std::vector<Mat> e, f;
  for (int k = 0; k < V.rank(); ++k) {
    e.push_back(V.delta_e(V.all(), k));
    f.push_back(V.delta_f(V.all(), k));
  }
  return weyl_lift(e, f, w);
}

// Permutation of tensor factors: factor k of the input goes to position perm[k] of the output.
// The output space has factors reordered accordingly.
inline Mat factor_permutation(const TensorSpace& V, const std::vector<int>& perm) {
  const int n = V.size();
  std::vector<int> dims(n), out_dims(n);
  for (int k = 0; k < n; ++k) dims[k] = V.factors()[k].dim;
  for (int k = 0; k < n; ++k) out_dims[perm[k]] = dims[k];
  Mat P = Mat::Zero(V.dim(), V.dim());
  for (int x = 0; x < V.dim(); ++x) {
    std::vector<int> t(n);
    int rem = x;
    for (int k = n - 1; k >= 0; --k) {
      t[k] = rem % dims[k];
      rem /= dims[k];
    }
    std::vector<int> u(n);
    for (int k = 0; k < n; ++k) u[perm[k]] = t[k];
    int y = 0;
    for (int k = 0; k < n; ++k) y = y * out_dims[k] + u[k];
    P(y, x) = 1;
  }
  return P;
}

// Reversal of the factors p..q (0-based, inclusive).
inline std::vector<int> segment_reversal(int n, int p, int q) {
  std::vector<int> perm(n);
  for (int k = 0; k < n; ++k) perm[k] = (k >= p && k <= q) ? p + q - k : k;
  return perm;
}

}  // namespace ccl
