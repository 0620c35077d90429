#include "ccl/character.hpp"
#include "ccl/gaudin.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace ccl;

namespace {

Mat comm(const Mat& a, const Mat& b) { return a * b - b * a; }

double rel(const Mat& a, double scale) { return a.norm() / std::max(1.0, scale); }

void expect_relations(const Irrep& V) {
  const auto A = lie_cartan(V.tag);
  const int r = static_cast<int>(A.size());
  double scale = 1;
  for (int i = 0; i < r; ++i) scale = std::max(scale, V.h[i].norm());
  for (int i = 0; i < r; ++i) {
    EXPECT_LT((V.f[i] - V.e[i].transpose()).norm(), 1e-14);
    for (int j = 0; j < r; ++j) {
      const Mat ef = comm(V.e[i], V.f[j]);
      EXPECT_LT(rel(ef - (i == j ? V.h[i] : Mat::Zero(V.dim, V.dim)), scale * scale), 1e-10);
      EXPECT_LT(rel(comm(V.h[i], V.e[j]) - A[i][j] * V.e[j], scale * scale), 1e-10);
      EXPECT_LT(rel(comm(V.h[i], V.f[j]) + A[i][j] * V.f[j], scale * scale), 1e-10);
      if (i != j) {
        // Serre: (ad e_i)^{1 - a_ij} e_j = 0
        Mat x = V.e[j], y = V.f[j];
        for (int k = 0; k < 1 - A[i][j]; ++k) {
          x = comm(V.e[i], x);
          y = comm(V.f[i], y);
        }
        EXPECT_LT(rel(x, scale * scale * scale), 1e-10);
        EXPECT_LT(rel(y, scale * scale * scale), 1e-10);
      }
    }
  }
}

// Independent construction: the submodule of V(w1)^{a} (x) V(w2)^{b} generated by the tensor of
// highest weight vectors, built from elementary 3x3 matrices.
struct Oracle {
  int dim = 0;
  std::vector<Mat> e, f, h;
};

Oracle sl3_by_tensor_power(int a, int b) {
  auto E = [](int i, int j) {
    Mat m = Mat::Zero(3, 3);
    m(i, j) = 1;
    return m;
  };
  const std::vector<Mat> de = {E(0, 1), E(1, 2)}, dh = {E(0, 0) - E(1, 1), E(1, 1) - E(2, 2)};
  std::vector<std::vector<Mat>> fe, fh;  // per factor: e_k, h_k
  std::vector<Vec> top;
  for (int k = 0; k < a; ++k) {
    fe.push_back(de);
    fh.push_back(dh);
    top.push_back(Vec::Unit(3, 0));
  }
  for (int k = 0; k < b; ++k) {
    fe.push_back({-de[0].transpose(), -de[1].transpose()});
    fh.push_back({-dh[0], -dh[1]});
    top.push_back(Vec::Unit(3, 2));
  }
  const int n = a + b;
  int D = 1;
  for (int k = 0; k < n; ++k) D *= 3;
  auto lift = [&](int i, const Mat& M) {
    Mat out = Mat::Identity(1, 1);
    for (int k = 0; k < n; ++k) out = Eigen::kroneckerProduct(out, k == i ? M : Mat::Identity(3, 3)).eval();
    return out;
  };
  std::vector<Mat> e(2, Mat::Zero(D, D)), h(2, Mat::Zero(D, D));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < 2; ++k) {
      e[k] += lift(i, fe[i][k]);
      h[k] += lift(i, fh[i][k]);
    }
  Vec v = Vec::Ones(1);
  for (int k = 0; k < n; ++k) v = Eigen::kroneckerProduct(v, top[k]).eval();
  // span of f-words applied to v
  std::vector<Vec> basis;
  std::vector<Vec> frontier = {v};
  auto add = [&](Vec w) {
    for (const auto& q : basis) w -= q.dot(w) * q;
    if (w.norm() < 1e-9) return false;
    basis.push_back(w.normalized());
    return true;
  };
  add(v);
  while (!frontier.empty()) {
    std::vector<Vec> next;
    for (const auto& w : frontier)
      for (int k = 0; k < 2; ++k) {
        Vec x = e[k].transpose() * w;
        if (x.norm() > 1e-12 && add(x)) next.push_back(x);
      }
    frontier = next;
  }
  Mat Q(D, basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) Q.col(k) = basis[k];
  Oracle o;
  o.dim = static_cast<int>(basis.size());
  for (int k = 0; k < 2; ++k) {
    o.e.push_back(Q.transpose() * e[k] * Q);
    o.f.push_back(Q.transpose() * e[k].transpose() * Q);
    o.h.push_back(Q.transpose() * h[k] * Q);
  }
  return o;
}

std::vector<double> sorted_eigs(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(m);
  Vec ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

// (lambda, lambda + 2 rho) for sl3 with the trace form: sum lambda_i (A^{-1})_{ij} mu_j.
double sl3_casimir_value(int l1, int l2) {
  const double Ainv[2][2] = {{2.0 / 3, 1.0 / 3}, {1.0 / 3, 2.0 / 3}};
  const double l[2] = {double(l1), double(l2)}, m[2] = {l1 + 2.0, l2 + 2.0};
  double v = 0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) v += l[i] * Ainv[i][j] * m[j];
  return v;
}

}  // namespace

TEST(Irrep, Sl2Examples) {
  auto V1 = build_irrep("sl2", {1});
  ASSERT_EQ(V1.dim, 2);
  EXPECT_EQ(V1.e[0](0, 1), 1.0);
  EXPECT_EQ(V1.e[0](0, 0), 0.0);
  EXPECT_EQ(V1.e[0](1, 0), 0.0);
  auto V2 = build_irrep("sl2", {2});
  EXPECT_EQ(V2.h[0].diagonal(), Vec((Vec(3) << 2, 0, -2).finished()));
  for (int m = 0; m <= 6; ++m) expect_relations(build_irrep("sl2", {m}));
  EXPECT_THROW(build_irrep("sl4", {1}), Error);
}

TEST(Irrep, Sl3DimensionsAndRelations) {
  const auto rs = RootSystem::build("A2");
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; b <= 3; ++b) {
      auto V = build_irrep("sl3", {a, b});
      EXPECT_EQ(static_cast<std::uint64_t>(V.dim), weyl_dimension(rs, make_weight({a, b})));
      expect_relations(V);
      // weights of the basis match the Freudenthal character
      Character ch;
      for (const auto& w : V.weights) ch[{w[0], w[1]}] += 1;
      EXPECT_EQ(ch, character(rs, make_weight({a, b})));
    }
  EXPECT_EQ(build_irrep("sl3", {1, 0}).dim, 3);
  EXPECT_EQ(build_irrep("sl3", {1, 1}).dim, 8);
}

TEST(Irrep, Sl3MatchesTensorPowerOracle) {
  std::mt19937 rng(4);
  std::normal_distribution<double> g;
  for (auto [a, b] : std::vector<std::pair<int, int>>{{1, 0}, {0, 1}, {1, 1}, {2, 0}, {0, 2}, {3, 0}}) {
    auto V = build_irrep("sl3", {a, b});
    auto O = sl3_by_tensor_power(a, b);
    ASSERT_EQ(V.dim, O.dim);
    for (int rep = 0; rep < 4; ++rep) {
      double c[6];
      for (double& x : c) x = g(rng);
      Mat X = c[0] * (V.e[0] + V.f[0]) + c[1] * (V.e[1] + V.f[1]) + c[2] * V.h[0] + c[3] * V.h[1] +
              c[4] * (V.e[0] * V.e[1] - V.e[1] * V.e[0] + (V.e[0] * V.e[1] - V.e[1] * V.e[0]).transpose());
      Mat Y = c[0] * (O.e[0] + O.f[0]) + c[1] * (O.e[1] + O.f[1]) + c[2] * O.h[0] + c[3] * O.h[1] +
              c[4] * (O.e[0] * O.e[1] - O.e[1] * O.e[0] + (O.e[0] * O.e[1] - O.e[1] * O.e[0]).transpose());
      auto ex = sorted_eigs(X), ey = sorted_eigs(Y);
      for (int k = 0; k < V.dim; ++k) EXPECT_NEAR(ex[k], ey[k], 1e-9);
    }
  }
}

TEST(Gaudin, CasimirValues) {
  for (int m = 0; m <= 4; ++m) {
    TensorSpace V({build_irrep("sl2", {m})});
    const Mat C = casimir(V);
    EXPECT_LT((C - 0.5 * m * (m + 2) * Mat::Identity(V.dim(), V.dim())).norm(), 1e-12);
  }
  EXPECT_NEAR(casimir(TensorSpace({build_irrep("sl2", {1})}))(0, 0), 1.5, 1e-14);
  EXPECT_NEAR(casimir(TensorSpace({build_irrep("sl2", {2})}))(0, 0), 4.0, 1e-14);
  for (auto [a, b] : std::vector<std::pair<int, int>>{{1, 0}, {0, 1}, {1, 1}, {2, 1}}) {
    TensorSpace V({build_irrep("sl3", {a, b})});
    const Mat C = casimir(V);
    EXPECT_LT((C - sl3_casimir_value(a, b) * Mat::Identity(V.dim(), V.dim())).norm(), 1e-10);
  }
}

TEST(Gaudin, OmegaSl2Example) {
  TensorSpace V({build_irrep("sl2", {1}), build_irrep("sl2", {1})});
  const Mat W = omega(V, 0, 1);
  EXPECT_LT((W - omega(V, 1, 0)).norm(), 1e-14);
  EXPECT_NEAR(W.trace(), 0.0, 1e-14);
  const Mat C = casimir(V), C1 = casimir(V, {0}), C2 = casimir(V, {1});
  EXPECT_LT((W - 0.5 * (C - C1 - C2)).norm(), 1e-12);
  EXPECT_LT(commutator_defect(W, C), 1e-14);
  auto ev = sorted_eigs(W);
  EXPECT_NEAR(ev[0], -1.5, 1e-12);
  for (int k = 1; k < 4; ++k) EXPECT_NEAR(ev[k], 0.5, 1e-12);
  EXPECT_THROW(omega(V, 0, 0), Error);
}

TEST(Gaudin, HamiltoniansCommuteAndSum) {
  std::mt19937 rng(12);
  std::uniform_real_distribution<double> u(-2, 2);
  struct Case {
    std::string tag;
    std::vector<std::vector<int>> spins;
  };
  for (const auto& cs : std::vector<Case>{{"sl2", {{1}, {1}, {1}}}, {"sl2", {{1}, {2}, {1}}}, {"sl3", {{1, 0}, {1, 0}}}, {"sl3", {{1, 0}, {0, 1}, {1, 0}}}}) {
    std::vector<Irrep> fs;
    for (const auto& l : cs.spins) fs.push_back(build_irrep(cs.tag, l));
    TensorSpace V(fs);
    for (int rep = 0; rep < 3; ++rep) {
      std::vector<double> z(V.size()), chi(V.rank());
      for (auto& x : z) x = u(rng);
      for (auto& x : chi) x = u(rng);
      auto fam = quadratic_family(V, z, chi);
      EXPECT_LT(max_commutator_defect(fam), 1e-12);
      Mat S = Mat::Zero(V.dim(), V.dim());
      for (int i = 0; i < V.size(); ++i) S += gaudin_hamiltonian(V, z, chi, i);
      Mat D = Mat::Zero(V.dim(), V.dim());
      for (int i = 0; i < V.size(); ++i) D += cartan_element(V, i, chi);
      EXPECT_LT((S - D).norm(), 1e-12);
      for (const auto& M : fam) EXPECT_LT((M - M.transpose()).norm(), 1e-12);
    }
  }
  TensorSpace V({build_irrep("sl2", {1}), build_irrep("sl2", {1})});
  EXPECT_LT((gaudin_hamiltonian(V, {1, 0}, {0}, 0) - omega(V, 0, 1)).norm(), 1e-14);
  EXPECT_THROW(gaudin_hamiltonian(V, {1, 1}, {0}, 0), Error);
  EXPECT_THROW(dynamical_hamiltonian(V, {1, 0}, {0}, {1}), Error);
}

TEST(Gaudin, ShiftOfArgumentOneSite) {
  // sl2: G_h = (2/alpha(chi)) ef, diagonal in the weight basis (highest first) with entries
  // 2(j+1)(m-j)/alpha(chi), since ef v_j = (j+1)(m-j) v_j for v_j = f^j v_0 / j!
  TensorSpace V({build_irrep("sl2", {4})});
  const Mat G = dynamical_hamiltonian(V, {0}, {0.5}, {1});
  EXPECT_LT((G - Mat(G.diagonal().asDiagonal())).norm(), 1e-14);
  for (int j = 0; j <= 4; ++j) EXPECT_NEAR(G(j, j), 2.0 * (j + 1) * (4 - j) / 1.0, 1e-12);

  // sl3 adjoint, weight-zero block: x -> sum_alpha alpha(h)/alpha(chi) alpha(x) h_alpha
  TensorSpace A({build_irrep("sl3", {1, 1})});
  const std::vector<double> chi = {0.7, 1.9}, h = {1.3, -0.4};
  const Mat Gh = dynamical_hamiltonian(A, {0}, chi, h);
  auto w = A.basis_weights();
  std::vector<int> zero;
  for (int x = 0; x < A.dim(); ++x)
    if (w[x] == std::vector<int>{0, 0}) zero.push_back(x);
  ASSERT_EQ(zero.size(), 2u);
  Mat B(2, 2);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) B(a, b) = Gh(zero[a], zero[b]);
  // closed form in the coroot basis h_1, h_2
  const std::vector<std::vector<int>> roots = {{1, 0}, {0, 1}, {1, 1}};
  Mat M = Mat::Zero(2, 2);
  for (int k = 0; k < 2; ++k)
    for (const auto& r : roots) {
      const double coef = root_value("sl3", r, h) / root_value("sl3", r, chi) * root_value("sl3", r, coroot_basis(2, k));
      M(0, k) += coef * r[0];
      M(1, k) += coef * r[1];
    }
  Eigen::EigenSolver<Mat> es(M);
  std::vector<double> cf = {es.eigenvalues()(0).real(), es.eigenvalues()(1).real()};
  std::sort(cf.begin(), cf.end());
  auto nb = sorted_eigs(B);
  EXPECT_NEAR(nb[0], cf[0], 1e-10);
  EXPECT_NEAR(nb[1], cf[1], 1e-10);
  EXPECT_GT(std::abs(cf[0] - cf[1]), 1e-3);
  EXPECT_LT(commutator_defect(dynamical_hamiltonian(A, {0}, chi, {1, 0}), dynamical_hamiltonian(A, {0}, chi, {0, 1})), 1e-12);
}

TEST(Gaudin, WeylLift) {
  TensorSpace V({build_irrep("sl2", {1})});
  const Mat n = weyl_lift(V, WeylWord{{0}});
  EXPECT_LT((n - (Mat(2, 2) << 0, 1, -1, 0).finished()).norm(), 1e-14);

  const auto rs = RootSystem::build("A2");
  for (auto lam : std::vector<std::vector<int>>{{1, 0}, {1, 1}, {2, 1}}) {
    TensorSpace A({build_irrep("sl3", lam)});
    auto w = A.basis_weights();
    const WeylWord w1{{0, 1, 0}}, w2{{1, 0, 1}};
    const Mat R1 = weyl_lift(A, w1), R2 = weyl_lift(A, w2);
    for (int x = 0; x < A.dim(); ++x)
      for (int y = 0; y < A.dim(); ++y)
        if (std::abs(R1(y, x)) > 1e-9) {
          const auto img = rs.apply(w1, make_weight(w[x]));
          EXPECT_EQ(img, make_weight(w[y]));
        }
    // R1^{-1} R2 acts by a scalar on each weight space
    const Mat T = R1.inverse() * R2;
    for (int x = 0; x < A.dim(); ++x)
      for (int y = 0; y < A.dim(); ++y) {
        if (x == y) continue;
        EXPECT_LT(std::abs(T(y, x)), 1e-9);
        if (w[x] == w[y]) {
          EXPECT_NEAR(T(x, x), T(y, y), 1e-9);
        }
      }
  }
}

TEST(Gaudin, FactorPermutation) {
  auto a = build_irrep("sl2", {1}), b = build_irrep("sl2", {2});
  TensorSpace V({a, b}), W({b, a});
  const Mat P = factor_permutation(V, {1, 0});
  for (int k = 0; k < 1; ++k) {
    EXPECT_LT((P * V.e(0, k) * P.transpose() - W.e(1, k)).norm(), 1e-14);
    EXPECT_LT((P * V.h(1, k) * P.transpose() - W.h(0, k)).norm(), 1e-14);
  }
  TensorSpace U({a, a, a});
  const Mat R = factor_permutation(U, segment_reversal(3, 0, 2));
  EXPECT_LT((R * omega(U, 0, 1) * R.transpose() - omega(U, 2, 1)).norm(), 1e-14);
  EXPECT_LT((R * R - Mat::Identity(8, 8)).norm(), 1e-14);
}
