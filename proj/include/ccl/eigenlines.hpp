#pragma once

// Joint eigenlines of commuting symmetric families, continuation along parameter paths and
// handoffs to limit families.

#include "ccl/gaudin.hpp"

#include <nlohmann/json.hpp>

#include <functional>
#include <numeric>
#include <optional>
#include <random>

namespace ccl {

struct Tolerances {
  double overlap = 0.9;      // per-step matching
  double fidelity = 0.99;    // handoffs
  double residual = 1e-7;    // eigen-residual, relative
  double commutator = 1e-8;  // commutator defect, relative
  double separation = 1e-6;  // minimal joint-label distance, relative
  int max_depth = 40;
  int max_halvings = 10;
  int retries = 5;
  int base_steps = 32;
};

inline nlohmann::ordered_json tolerances_json(const Tolerances& t) {
  return {{"overlap", t.overlap},       {"fidelity", t.fidelity},         {"residual", t.residual},
          {"commutator", t.commutator}, {"separation", t.separation},     {"max_depth", t.max_depth},
          {"max_halvings", t.max_halvings}, {"retries", t.retries},      {"base_steps", t.base_steps}};
}

inline Tolerances tolerances_from_json(const nlohmann::json& j) {
  Tolerances t;
  t.overlap = j.value("overlap", t.overlap);
  t.fidelity = j.value("fidelity", t.fidelity);
  t.residual = j.value("residual", t.residual);
  t.commutator = j.value("commutator", t.commutator);
  t.separation = j.value("separation", t.separation);
  t.max_depth = j.value("max_depth", t.max_depth);
  t.max_halvings = j.value("max_halvings", t.max_halvings);
  t.retries = j.value("retries", t.retries);
  t.base_steps = j.value("base_steps", t.base_steps);
  return t;
}

// Failures that make a numeric case inconclusive rather than a mismatch.
struct NumericFailure : Error {
  using Error::Error;
};
struct SimpleSpectrumViolation : NumericFailure {
  using NumericFailure::NumericFailure;
};
struct StepCollapse : NumericFailure {
  using NumericFailure::NumericFailure;
};
struct HandoffFailure : NumericFailure {
  using NumericFailure::NumericFailure;
};
struct CommutatorViolation : NumericFailure {
  using NumericFailure::NumericFailure;
};

struct Diagnostics {
  double min_overlap = 1.0;
  double min_fidelity = 1.0;
  double max_commutator = 0.0;
  double max_residual = 0.0;
  double min_separation = 1e300;
  long steps = 0;
  long rejected_steps = 0;
  int max_depth = 0;
  std::vector<nlohmann::ordered_json> handoffs;

  void merge(const Diagnostics& o) {
    min_overlap = std::min(min_overlap, o.min_overlap);
    min_fidelity = std::min(min_fidelity, o.min_fidelity);
    max_commutator = std::max(max_commutator, o.max_commutator);
    max_residual = std::max(max_residual, o.max_residual);
    min_separation = std::min(min_separation, o.min_separation);
    steps += o.steps;
    rejected_steps += o.rejected_steps;
    max_depth = std::max(max_depth, o.max_depth);
    handoffs.insert(handoffs.end(), o.handoffs.begin(), o.handoffs.end());
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["min_overlap"] = min_overlap;
    j["min_fidelity"] = min_fidelity;
    j["max_commutator"] = max_commutator;
    j["max_residual"] = max_residual;
    j["min_separation"] = min_separation > 1e299 ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(min_separation);
    j["steps"] = steps;
    j["rejected_steps"] = rejected_steps;
    j["max_depth"] = max_depth;
    j["handoffs"] = handoffs;
    return j;
  }
};

// Per-run numeric state: tolerances, seeded generator, accumulated diagnostics.
struct Engine {
  Tolerances tol;
  std::uint64_t seed = 0;
  std::mt19937_64 rng;
  Diagnostics diag;

  explicit Engine(std::uint64_t s = 0, Tolerances t = {}) : tol(t), seed(s), rng(s) {}
};

inline Mat restrict_to(const Mat& Q, const Mat& M) { return Q.transpose() * M * Q; }

inline std::vector<Mat> restrict_all(const Mat& Q, const std::vector<Mat>& Ms) {
  std::vector<Mat> out;
  out.reserve(Ms.size());
  for (const auto& M : Ms) out.push_back(restrict_to(Q, M));
  return out;
}

// Traceless, Frobenius-orthonormalised spanning set of the family (same joint eigenlines).
inline std::vector<Mat> normalized_generators(const std::vector<Mat>& gens) {
  std::vector<Mat> out;
  if (gens.empty()) return out;
  const int k = static_cast<int>(gens[0].rows());
  for (const auto& G : gens) {
    Mat A = 0.5 * (G + G.transpose());
    A -= (A.trace() / k) * Mat::Identity(k, k);
    const double n0 = A.norm();
    if (n0 <= 1e-10 * std::max(1.0, G.norm())) continue;
    A /= n0;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& B : out) A -= (A.cwiseProduct(B).sum()) * B;
    const double n1 = A.norm();
    if (n1 < 1e-9) continue;
    out.push_back(A / n1);
  }
  return out;
}

// Orthonormal joint eigenbasis (columns) of a commuting symmetric family on R^k.
inline Mat joint_eigenlines(const std::vector<Mat>& gens, Engine& eng) {
  if (gens.empty()) throw Error("joint_eigenlines: empty family");
  const int k = static_cast<int>(gens[0].rows());
  if (k == 1) return Mat::Identity(1, 1);
  const auto A = normalized_generators(gens);
  if (A.empty()) throw SimpleSpectrumViolation("family acts by scalars on a block of dimension " + std::to_string(k));
  double comm = 0;
  for (std::size_t a = 0; a < A.size(); ++a)
    for (std::size_t b = a + 1; b < A.size(); ++b) comm = std::max(comm, (A[a] * A[b] - A[b] * A[a]).norm());
  eng.diag.max_commutator = std::max(eng.diag.max_commutator, comm);
  if (comm > eng.tol.commutator) throw CommutatorViolation("commutator defect " + std::to_string(comm));
  std::normal_distribution<double> g;
  std::string last;
  for (int attempt = 0; attempt <= eng.tol.retries; ++attempt) {
    Mat M = Mat::Zero(k, k);
    for (const auto& X : A) M += g(eng.rng) * X;
    Eigen::SelfAdjointEigenSolver<Mat> es(M);
    Mat V = es.eigenvectors();
    Mat labels(k, A.size());
    double worst = 0;
    for (int c = 0; c < k; ++c)
      for (std::size_t a = 0; a < A.size(); ++a) {
        const Vec Av = A[a] * V.col(c);
        const double lam = V.col(c).dot(Av);
        labels(c, a) = lam;
        worst = std::max(worst, (Av - lam * V.col(c)).norm());
      }
    double sep = 1e300;
    for (int c = 0; c < k; ++c)
      for (int d = c + 1; d < k; ++d) sep = std::min(sep, (labels.row(c) - labels.row(d)).cwiseAbs().maxCoeff());
    if (worst > eng.tol.residual) {
      last = "eigen-residual " + std::to_string(worst);
      continue;
    }
    if (sep < eng.tol.separation) {
      last = "joint labels coincide (separation " + std::to_string(sep) + ")";
      continue;
    }
    eng.diag.max_residual = std::max(eng.diag.max_residual, worst);
    eng.diag.min_separation = std::min(eng.diag.min_separation, sep);
    // deterministic order and sign
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
      for (int c = 0; c < labels.cols(); ++c)
        if (std::abs(labels(a, c) - labels(b, c)) > 0.5 * eng.tol.separation) return labels(a, c) < labels(b, c);
      return false;
    });
    Mat out(k, k);
    for (int c = 0; c < k; ++c) {
      Vec v = V.col(idx[c]);
      Eigen::Index at;
      v.cwiseAbs().maxCoeff(&at);
      if (v(at) < 0) v = -v;
      out.col(c) = v;
    }
    return out;
  }
  throw SimpleSpectrumViolation("no simple joint spectrum on a block of dimension " + std::to_string(k) + ": " + last);
}

struct LineMatch {
  std::vector<int> map;  // column of the first set -> column of the second set
  double fidelity = 0;   // smallest matched |overlap|
  bool bijective = false;
};

inline LineMatch match_lines(const Mat& V, const Mat& W) {
  LineMatch m;
  const Mat O = (V.transpose() * W).cwiseAbs();
  m.map.resize(V.cols());
  m.fidelity = 1.0;
  std::vector<int> hit(W.cols(), 0);
  for (int j = 0; j < V.cols(); ++j) {
    Eigen::Index at;
    const double best = O.row(j).maxCoeff(&at);
    m.map[j] = static_cast<int>(at);
    m.fidelity = std::min(m.fidelity, best);
    ++hit[at];
  }
  m.bijective = V.cols() == W.cols();
  for (int h : hit) m.bijective = m.bijective && h == 1;
  return m;
}

// Image of each line of V under an operator that permutes the lines, matched back into V.
inline LineMatch induced_permutation(const Mat& op, const Mat& V) {
  Mat img = op * V;
  for (int c = 0; c < img.cols(); ++c) img.col(c).normalize();
  return match_lines(img, V);
}

using FamilyFn = std::function<std::vector<Mat>(double)>;

// Continue the lines V (columns) from t0 to t1. The returned columns continue the input columns.
inline Mat transport(const FamilyFn& fam, double t0, double t1, Mat V, Engine& eng) {
  if (t0 == t1) return V;
  const double base = (t1 - t0) / eng.tol.base_steps;
  double t = t0, h = base;
  int depth = 0;
  while ((t1 - t) * (t1 > t0 ? 1 : -1) > 0) {
    double step = h;
    if (std::abs(step) >= std::abs(t1 - t)) step = t1 - t;
    const double tn = (step == t1 - t) ? t1 : t + step;
    const Mat W = joint_eigenlines(fam(tn), eng);
    const LineMatch m = match_lines(V, W);
    if (m.bijective && m.fidelity >= eng.tol.overlap) {
      Mat Vn(V.rows(), V.cols());
      for (int c = 0; c < V.cols(); ++c) {
        Vec w = W.col(m.map[c]);
        if (w.dot(V.col(c)) < 0) w = -w;
        Vn.col(c) = w;
      }
      V = std::move(Vn);
      t = tn;
      ++eng.diag.steps;
      eng.diag.min_overlap = std::min(eng.diag.min_overlap, m.fidelity);
      if (depth > 0 && m.fidelity > 0.99) {
        h *= 2;
        --depth;
      }
    } else {
      ++eng.diag.rejected_steps;
      h /= 2;
      ++depth;
      eng.diag.max_depth = std::max(eng.diag.max_depth, depth);
      if (depth > eng.tol.max_depth)
        throw StepCollapse("step halving exceeded depth " + std::to_string(eng.tol.max_depth) + " at t = " + std::to_string(t));
    }
  }
  return V;
}

struct Handoff {
  Mat tracked;      // lines continued up to the accepted parameter
  Mat limit;        // limit lines
  LineMatch match;  // tracked column -> limit column
  double param = 0;
  int halvings = 0;
};

// Continue towards a limit point: param(k) is the parameter after k refinements (k = 0 is where V
// currently sits); limit_lines(t) gives the limit eigenlines relevant at t.
inline Handoff handoff(const FamilyFn& fam, Mat V, const std::function<double(int)>& param,
                       const std::function<Mat(double)>& limit_lines, const std::string& where, Engine& eng) {
  double t = param(0);
  for (int k = 0;; ++k) {
    const Mat L = limit_lines(t);
    LineMatch m = match_lines(V, L);
    if (m.bijective && m.fidelity >= eng.tol.fidelity) {
      eng.diag.min_fidelity = std::min(eng.diag.min_fidelity, m.fidelity);
      eng.diag.handoffs.push_back({{"at", where}, {"param", t}, {"fidelity", m.fidelity}, {"halvings", k}});
      return Handoff{V, L, m, t, k};
    }
    if (k >= eng.tol.max_halvings)
      throw HandoffFailure("handoff at " + where + " reached fidelity " + std::to_string(m.fidelity) + " after " +
                           std::to_string(k) + " refinements");
    const double tn = param(k + 1);
    V = transport(fam, t, tn, V, eng);
    t = tn;
  }
}

// Orthonormal basis of the common kernel of the given operators inside span(Q).
inline Mat common_kernel(const Mat& Q, const std::vector<Mat>& ops) {
  if (Q.cols() == 0) return Q;
  Mat S(0, Q.cols());
  for (const auto& X : ops) {
    Mat XQ = X * Q;
    Mat T(S.rows() + XQ.rows(), Q.cols());
    T << S, XQ;
    S = T;
  }
  Eigen::JacobiSVD<Mat> svd(S, Eigen::ComputeFullV);
  const auto sv = svd.singularValues();
  int rank = 0;
  const double scale = std::max(1.0, sv.size() ? sv(0) : 0.0);
  for (int k = 0; k < sv.size(); ++k)
    if (sv(k) > 1e-9 * scale) ++rank;
  return Q * svd.matrixV().rightCols(Q.cols() - rank);
}

// Columns of the identity spanning the product basis vectors of a given weight.
inline Mat weight_block(const TensorSpace& V, const std::vector<int>& mu) {
  const auto w = V.basis_weights();
  std::vector<int> idx;
  for (int x = 0; x < V.dim(); ++x)
    if (w[x] == mu) idx.push_back(x);
  Mat Q = Mat::Zero(V.dim(), idx.size());
  for (std::size_t c = 0; c < idx.size(); ++c) Q(idx[c], c) = 1;
  return Q;
}

// Highest weight vectors of weight mu: the space on which the Gaudin algebra acts on E(lambda)^mu.
inline Mat singular_block(const TensorSpace& V, const std::vector<int>& mu) {
  std::vector<Mat> es;
  for (int k = 0; k < V.rank(); ++k) es.push_back(V.delta_e(V.all(), k));
  return common_kernel(weight_block(V, mu), es);
}

// Eigenspaces of a symmetric matrix restricted to span(Q), grouped by eigenvalue.
inline std::vector<std::pair<double, Mat>> eigenspaces(const Mat& Q, const Mat& M, double tol = 1e-8) {
  const Mat R = restrict_to(Q, M);
  Eigen::SelfAdjointEigenSolver<Mat> es(R);
  std::vector<std::pair<double, Mat>> out;
  const auto& ev = es.eigenvalues();
  int start = 0;
  for (int k = 1; k <= ev.size(); ++k)
    if (k == ev.size() || ev(k) - ev(k - 1) > tol * std::max(1.0, std::abs(ev(k)))) {
      out.push_back({ev(start), Q * es.eigenvectors().middleCols(start, k - start)});
      start = k;
    }
  return out;
}

}  // namespace ccl
