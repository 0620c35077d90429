#pragma once

// Monodromy of eigenlines: external cactus generators on Gaudin eigenlines, internal generators on
// shift-of-argument eigenlines, the crystal structure on eigenlines, the tensor-product transport
// from z = infinity to z = 0, the commutor square and the pentagon loop.

#include "ccl/cactus.hpp"
#include "ccl/eigenlines.hpp"
#include "ccl/moduli.hpp"

namespace ccl {

struct MonodromyResult {
  Perm perm;                        // on base lines
  Mat lines;                        // base lines as columns (block coordinates)
  std::vector<std::string> labels;  // one per base line
  Diagnostics diag;
  std::uint64_t seed = 0;

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["permutation"] = perm;
    j["labels"] = labels;
    j["seed"] = seed;
    j["diagnostics"] = diag.to_json();
    return j;
  }
};

// ---------------------------------------------------------------------------------------------
// A representation on R^k given by matrices (an irrep, or an invariant block of a tensor product).

struct RepOps {
  std::string tag;
  int rank = 0;
  int dim = 0;
  std::vector<Mat> e, f, h;
  RootVectors roots;

  static RepOps from_irrep(const Irrep& V) {
    RepOps R;
    R.tag = V.tag;
    R.rank = lie_rank(V.tag);
    R.dim = V.dim;
    R.e = V.e;
    R.f = V.f;
    R.h = V.h;
    R.roots = root_vectors(V.tag, R.e, R.f);
    return R;
  }

  static RepOps from_block(const TensorSpace& V, const Mat& Q) {
    RepOps R;
    R.tag = V.tag();
    R.rank = V.rank();
    R.dim = static_cast<int>(Q.cols());
    for (int k = 0; k < V.rank(); ++k) {
      R.e.push_back(restrict_to(Q, V.delta_e(V.all(), k)));
      R.f.push_back(restrict_to(Q, V.delta_f(V.all(), k)));
      R.h.push_back(restrict_to(Q, V.delta_h(V.all(), k)));
    }
    R.roots = root_vectors(R.tag, R.e, R.f);
    return R;
  }

  // sum_{alpha>0, alpha(x) != 0} alpha(x)/alpha(chi) e_alpha f_alpha
  Mat shift(const std::vector<double>& x, const std::vector<double>& chi) const {
    Mat G = Mat::Zero(dim, dim);
    for (std::size_t a = 0; a < roots.roots.size(); ++a) {
      const double ax = root_value(tag, roots.roots[a], x);
      if (ax == 0) continue;
      const double ac = root_value(tag, roots.roots[a], chi);
      if (ac == 0) throw Error("shift: chi on a wall for a root not annihilated by x");
      G += (ax / ac) * roots.e[a] * roots.f[a];
    }
    return G;
  }

  // Quadratic shift-of-argument family at regular chi.
  std::vector<Mat> family(const std::vector<double>& chi) const {
    std::vector<Mat> out = h;
    for (int k = 0; k < rank; ++k) out.push_back(shift(coroot_basis(rank, k), chi));
    return out;
  }

  // Limit family at a point chi0 of the wall alpha_i = 0: Cartan, e_i f_i, and G_{chi0}(chi0).
  std::vector<Mat> wall_family(int i, const std::vector<double>& chi0) const {
    std::vector<Mat> out = h;
    out.push_back(e[i] * f[i]);
    out.push_back(shift(chi0, chi0));
    return out;
  }

  std::vector<int> weight_of(const Vec& v) const {
    std::vector<int> w(rank);
    for (int k = 0; k < rank; ++k) w[k] = static_cast<int>(std::lround(v.dot(h[k] * v)));
    return w;
  }

  Mat lift(const WeylWord& w) const { return weyl_lift(e, f, w); }
};

inline std::vector<double> rho_coweight(int rank) { return std::vector<double>(rank, 1.0); }

inline std::string weight_label(const std::vector<int>& w) {
  std::string s = "(";
  for (std::size_t k = 0; k < w.size(); ++k) s += (k ? "," : "") + std::to_string(w[k]);
  return s + ")";
}

// ---------------------------------------------------------------------------------------------
// Crystal structure on shift-of-argument eigenlines.

struct WallData {
  int node = 0;
  std::vector<double> chi0;
  Mat limit;              // wall lines
  std::vector<int> to;    // base line -> wall line
  std::vector<int> from;  // wall line -> base line
};

struct EigenlineCrystal {
  RepOps rep;
  std::vector<double> chi;
  Mat lines;  // columns
  std::vector<WallData> walls;
  CrystalPtr crystal;
};

inline std::vector<double> wall_point(const std::string& tag, const std::vector<double>& chi, int i, double t = 1.0) {
  std::vector<double> simple(chi.size(), 0.0);
  simple[i] = 1.0;
  std::vector<int> ai(chi.size(), 0);
  ai[i] = 1;
  const double a = root_value(tag, ai, chi);
  std::vector<double> out = chi;
  out[i] -= t * a / 2;  // alpha_i(h_i) = 2
  return out;
}

inline WallData transport_to_wall(const RepOps& R, const std::vector<double>& chi, const Mat& lines, int i, Engine& eng) {
  WallData W;
  W.node = i;
  W.chi0 = wall_point(R.tag, chi, i);
  const FamilyFn fam = [&](double t) { return R.family(wall_point(R.tag, chi, i, t)); };
  const double d0 = 1.0 / 16;
  Mat V = transport(fam, 0.0, 1.0 - d0, lines, eng);
  const Mat L = joint_eigenlines(R.wall_family(i, W.chi0), eng);
  auto param = [&](int k) { return 1.0 - d0 / std::pow(2.0, k); };
  const Handoff H = handoff(fam, V, param, [&](double) { return L; }, "wall " + std::to_string(i + 1), eng);
  W.limit = L;
  W.to = H.match.map;
  W.from = inverse(W.to);
  return W;
}

inline EigenlineCrystal eigenline_crystal(const RepOps& R, const std::vector<double>& chi, Engine& eng) {
  if (!chi_regular(R.tag, chi)) throw Error("eigenline crystal: chi must be regular");
  EigenlineCrystal E;
  E.rep = R;
  E.chi = chi;
  E.lines = joint_eigenlines(R.family(chi), eng);
  const int k = R.dim;
  Crystal B;
  B.rs = RootSystem::build(lie_type_label(R.tag));
  B.name = "E_chi";
  B.e.assign(R.rank, std::vector<int>(k, kNone));
  B.f.assign(R.rank, std::vector<int>(k, kNone));
  for (int c = 0; c < k; ++c) {
    const auto w = R.weight_of(E.lines.col(c));
    B.wt.push_back(make_weight(w));
    B.labels.push_back("L" + std::to_string(c) + weight_label(w));
  }
  for (int i = 0; i < R.rank; ++i) {
    WallData W = transport_to_wall(R, chi, E.lines, i, eng);
    for (int c = 0; c < k; ++c) {
      const Vec v = W.limit.col(W.to[c]);
      for (int dir = 0; dir < 2; ++dir) {
        const Mat& X = dir == 0 ? R.e[i] : R.f[i];
        Vec u = X * v;
        if (u.norm() < 1e-8 * std::max(1.0, X.norm())) continue;
        u.normalize();
        Eigen::Index at;
        const double ov = (W.limit.transpose() * u).cwiseAbs().maxCoeff(&at);
        if (ov < eng.tol.fidelity)
          throw NumericFailure("raising/lowering operator does not map wall lines to wall lines (overlap " +
                               std::to_string(ov) + ")");
        (dir == 0 ? B.e : B.f)[i][c] = W.from[at];
      }
    }
    E.walls.push_back(std::move(W));
  }
  E.crystal = share(std::move(B));
  return E;
}

// ---------------------------------------------------------------------------------------------
// Internal cactus generators on E_chi(lambda).

inline MonodromyResult monodromy_internal(const EigenlineCrystal& E, const NodeSet& J, Engine& eng) {
  const RootSystem& rs = E.crystal->rs;
  if (!rs.is_connected(J)) throw Error("internal generator needs a nonempty connected node set");
  MonodromyResult res;
  res.seed = eng.seed;
  res.lines = E.lines;
  res.labels = E.crystal->labels;
  if (static_cast<int>(J.size()) == rs.rank()) {
    const Mat Rw = E.rep.lift(rs.longest_element()).inverse();
    const LineMatch m = induced_permutation(Rw, E.lines);
    if (!m.bijective || m.fidelity < eng.tol.fidelity)
      throw HandoffFailure("Weyl lift does not permute eigenlines (fidelity " + std::to_string(m.fidelity) + ")");
    eng.diag.min_fidelity = std::min(eng.diag.min_fidelity, m.fidelity);
    res.perm = m.map;
  } else if (J.size() == 1) {
    const WallData& W = E.walls.at(J[0]);
    const Mat Rn = E.rep.lift(WeylWord{{J[0]}}).inverse();
    const LineMatch m = induced_permutation(Rn, W.limit);
    if (!m.bijective || m.fidelity < eng.tol.fidelity)
      throw HandoffFailure("simple reflection lift does not permute wall lines (fidelity " + std::to_string(m.fidelity) + ")");
    eng.diag.min_fidelity = std::min(eng.diag.min_fidelity, m.fidelity);
    res.perm.resize(E.lines.cols());
    for (int c = 0; c < E.lines.cols(); ++c) res.perm[c] = W.from[m.map[W.to[c]]];
  } else {
    throw Error("internal monodromy is implemented for rank <= 2");
  }
  res.diag = eng.diag;
  return res;
}

// ---------------------------------------------------------------------------------------------
// External cactus generators on Gaudin eigenlines in E(lambda,...,lambda)^mu (chi = 0).

struct ExternalSetup {
  std::string tag = "sl2";
  std::vector<std::vector<int>> spins;
  std::vector<int> mu;
  int p = 1, q = 2;  // 1-based
  std::vector<double> base;
  double delta = 0.05;
};

class GaudinBlock {
 public:
  GaudinBlock(const ExternalSetup& s) : setup_(s) {
    std::vector<Irrep> fs;
    for (const auto& l : s.spins) fs.push_back(build_irrep(s.tag, l));
    V_ = TensorSpace(fs);
    Q_ = singular_block(V_, s.mu);
    n_ = V_.size();
    om_.assign(n_, std::vector<Mat>(n_));
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        if (i != j) om_[i][j] = restrict_to(Q_, omega(V_, i, j));
  }

  const TensorSpace& space() const { return V_; }
  const Mat& block() const { return Q_; }
  int dim() const { return static_cast<int>(Q_.cols()); }
  int n() const { return n_; }
  const Mat& omega_r(int i, int j) const { return om_[i][j]; }

  std::vector<Mat> hamiltonians(const std::vector<double>& z) const {
    std::vector<Mat> out;
    for (int i = 0; i < n_; ++i) {
      Mat H = Mat::Zero(dim(), dim());
      for (int j = 0; j < n_; ++j)
        if (j != i) H += om_[i][j] / (z[i] - z[j]);
      out.push_back(H);
    }
    return out;
  }

  Mat casimir_r(const std::vector<int>& S) const { return restrict_to(Q_, casimir(V_, S)); }

 private:
  ExternalSetup setup_;
  TensorSpace V_;
  Mat Q_;
  int n_ = 0;
  std::vector<std::vector<Mat>> om_;
};

inline std::vector<double> lerp(const std::vector<double>& a, const std::vector<double>& b, double t) {
  std::vector<double> out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = (1 - t) * a[k] + t * b[k];
  return out;
}

// Limit family at a cluster p..q (0-based) of width -> 0 with inner normalised configuration y.
inline std::vector<Mat> cluster_limit_family(const GaudinBlock& G, const std::vector<double>& z, int p, int q,
                                             const std::vector<double>& y) {
  const int n = G.n(), k = G.dim();
  const double c = 0.5 * (z[p] + z[q]);
  auto inside = [&](int a) { return a >= p && a <= q; };
  std::vector<Mat> out;
  for (int a = p; a <= q; ++a) {
    Mat H = Mat::Zero(k, k);
    for (int b = p; b <= q; ++b)
      if (b != a) H += G.omega_r(a, b) / (y[a - p] - y[b - p]);
    out.push_back(H);
  }
  for (int a = 0; a < n; ++a) {
    if (inside(a)) continue;
    Mat H = Mat::Zero(k, k);
    for (int b = 0; b < n; ++b) {
      if (b == a) continue;
      H += G.omega_r(a, b) / (z[a] - (inside(b) ? c : z[b]));
    }
    out.push_back(H);
  }
  std::vector<int> cl;
  for (int a = p; a <= q; ++a) cl.push_back(a);
  out.push_back(G.casimir_r(cl));
  return out;
}

inline MonodromyResult monodromy_external(const ExternalSetup& s, Engine& eng) {
  const int n = static_cast<int>(s.spins.size());
  for (const auto& l : s.spins)
    if (l != s.spins[0]) throw Error("external monodromy needs equal highest weights");
  if (static_cast<int>(s.base.size()) != n) throw Error("base configuration has wrong length");
  GaudinBlock G(s);
  if (G.dim() == 0) throw Error("multiplicity space E(lambda)^mu is empty");
  MonodromyResult res;
  res.seed = eng.seed;
  const auto sched = cactus_path_schedule(n, s.p, s.q, s.base, s.delta);
  const FamilyFn at_base = [&](double) { return G.hamiltonians(s.base); };
  res.lines = joint_eigenlines(G.hamiltonians(s.base), eng);
  for (int c = 0; c < G.dim(); ++c) res.labels.push_back("L" + std::to_string(c));
  const Mat P = restrict_to(G.block(), factor_permutation(G.space(), segment_reversal(n, s.p - 1, s.q - 1)));
  if (G.dim() == 1) {
    res.perm = {0};
    res.diag = eng.diag;
    return res;
  }
  if (sched.action == "swap" || sched.action == "flip") {
    Mat V = res.lines;
    if (!sched.segments.empty()) {
      const auto& seg = sched.segments[0];
      const FamilyFn fam = [&](double t) { return G.hamiltonians(lerp(seg.z_start, seg.z_end, t)); };
      V = transport(fam, 0.0, 1.0, V, eng);
    }
    const LineMatch m = induced_permutation(P, V);
    if (!m.bijective || m.fidelity < eng.tol.fidelity)
      throw HandoffFailure("factor reversal does not permute eigenlines at the symmetric point (fidelity " +
                           std::to_string(m.fidelity) + ")");
    eng.diag.min_fidelity = std::min(eng.diag.min_fidelity, m.fidelity);
    res.perm = m.map;
    res.diag = eng.diag;
    return res;
  }
  const auto& seg = sched.segments[0];
  const FamilyFn fam = [&](double t) { return G.hamiltonians(lerp(seg.z_start, seg.z_end, t)); };
  Mat V = transport(fam, 0.0, 1.0, res.lines, eng);
  // shrink the cluster further: width delta * 2^{-u}
  const int p = s.p - 1, q = s.q - 1;
  const double c = 0.5 * (s.base[p] + s.base[q]);
  const FamilyFn shrink = [&](double u) {
    std::vector<double> z = seg.z_end;
    for (int a = p; a <= q; ++a) z[a] = c + s.delta * std::pow(2.0, -u) * sched.inner_config[a - p];
    return G.hamiltonians(z);
  };
  const Mat L = joint_eigenlines(cluster_limit_family(G, seg.z_end, p, q, sched.inner_config), eng);
  const Handoff H = handoff(shrink, V, [](int k) { return static_cast<double>(k); }, [&](double) { return L; },
                            "cluster " + std::to_string(s.p) + ".." + std::to_string(s.q), eng);
  const LineMatch m = induced_permutation(P, L);
  if (!m.bijective || m.fidelity < eng.tol.fidelity)
    throw HandoffFailure("factor reversal does not permute boundary lines (fidelity " + std::to_string(m.fidelity) + ")");
  const Perm back = inverse(H.match.map);
  res.perm.resize(G.dim());
  for (int j = 0; j < G.dim(); ++j) res.perm[j] = back[m.map[H.match.map[j]]];
  res.diag = eng.diag;
  return res;
}

// Nested-Casimir labels nu_2..nu_{n-1} of the base lines (sl2): continue the lines to the
// left-nested caterpillar point (0, t^{n-2}, ..., t, 1) and read the Casimirs of 1..k.
inline std::vector<std::vector<int>> caterpillar_labels(const ExternalSetup& s, const Mat& lines, Engine& eng) {
  if (lie_rank(s.tag) != 1) throw Error("caterpillar labels are implemented for sl2");
  GaudinBlock G(s);
  const int n = G.n();
  std::vector<std::vector<int>> out(lines.cols());
  if (n <= 2) return out;
  auto cat = [&](double t) {
    std::vector<double> z(n);
    z[0] = 0;
    for (int k = 1; k < n; ++k) z[k] = std::pow(t, n - 1 - k);
    return z;
  };
  const double t0 = 0.05;
  const auto zc = cat(t0);
  const FamilyFn fam = [&](double t) { return G.hamiltonians(lerp(s.base, zc, t)); };
  Mat V = transport(fam, 0.0, 1.0, lines, eng);
  std::vector<Mat> nested;
  for (int k = 2; k < n; ++k) {
    std::vector<int> S(k);
    std::iota(S.begin(), S.end(), 0);
    nested.push_back(G.casimir_r(S));
  }
  const Mat L = joint_eigenlines(nested, eng);
  const FamilyFn deeper = [&](double u) { return G.hamiltonians(cat(t0 * std::pow(2.0, -u))); };
  const Handoff H = handoff(deeper, V, [](int k) { return static_cast<double>(k); }, [&](double) { return L; },
                            "caterpillar", eng);
  for (int c = 0; c < lines.cols(); ++c) {
    const Vec v = L.col(H.match.map[c]);
    for (const auto& C : nested) {
      const double cv = v.dot(C * v);
      out[c].push_back(static_cast<int>(std::lround(-1 + std::sqrt(1 + 2 * cv))));
    }
  }
  return out;
}

// Crystal side: same labels for highest weight elements of B(lambda)^{(x) n}.
inline std::vector<std::vector<int>> crystal_prefix_labels(const std::vector<CrystalPtr>& factors, const std::vector<int>& members) {
  const int n = static_cast<int>(factors.size());
  auto full = tensor_all(factors);
  std::vector<std::vector<int>> out(members.size());
  for (int k = 2; k < n; ++k) {
    auto T = tensor_all(std::vector<CrystalPtr>(factors.begin(), factors.begin() + k));
    std::vector<int> hw(T->size());
    for (const auto& comp : components(*T))
      for (int b : comp.elements) hw[b] = static_cast<int>(boost::rational_cast<long>(T->wt[comp.highest][0]));
    for (std::size_t m = 0; m < members.size(); ++m) {
      auto t = full->decode(members[m]);
      out[m].push_back(hw[T->encode(std::vector<int>(t.begin(), t.begin() + k))]);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------------------------
// Tensor transport from z = infinity to z = 0 in the family A_chi(z, 0).

struct TensorTransport {
  CrystalPtr left, right;
  std::vector<int> map;              // left element -> right element
  Mat product_lines;                 // left element -> vector in V1 (x) V2
  Mat zero_lines;                    // right element -> vector in V1 (x) V2
  std::vector<double> zero_casimir;  // Delta(C) eigenvalue of each right element
  CheckResult iso;
  bool order_property = true;        // checked for sl2 only
};

inline TensorTransport tensor_transport(const std::string& tag, const std::vector<int>& l1, const std::vector<int>& l2,
                                        const EigenlineCrystal& E1, const EigenlineCrystal& E2, const std::vector<double>& chi,
                                        Engine& eng) {
  TensorSpace V({build_irrep(tag, l1), build_irrep(tag, l2)});
  const int d = V.dim(), r = V.rank();
  const Mat Om = omega(V, 0, 1), X1 = cartan_element(V, 0, chi);
  std::vector<Mat> D, H1, S;
  for (int k = 0; k < r; ++k) {
    D.push_back(V.delta_h(V.all(), k));
    H1.push_back(V.h(0, k));
    S.push_back(shift_part(V, V.all(), coroot_basis(r, k), chi));
  }
  // A_chi(z, 0) at z = exp(s)
  const FamilyFn fam = [&](double s) {
    const double z = std::exp(s);
    std::vector<Mat> out = {Om / z + X1};
    for (int k = 0; k < r; ++k) out.push_back(D[k]);
    for (int k = 0; k < r; ++k) out.push_back(z * H1[k] + S[k]);
    return out;
  };
  TensorTransport T;
  const int n1 = static_cast<int>(E1.lines.cols()), n2 = static_cast<int>(E2.lines.cols());
  T.product_lines.resize(d, n1 * n2);
  for (int a = 0; a < n1; ++a)
    for (int b = 0; b < n2; ++b)
      T.product_lines.col(a * n2 + b) = Eigen::kroneckerProduct(E1.lines.col(a), E2.lines.col(b)).eval();
  const double step = std::log(4.0), s_hi = std::log(1e3), s_lo = std::log(1e-3);
  const Mat V0 = joint_eigenlines(fam(s_hi), eng);
  const Handoff Hinf = handoff(fam, V0, [&](int k) { return s_hi + k * step; }, [&](double) { return T.product_lines; },
                               "z = infinity", eng);
  const Mat Vt = transport(fam, Hinf.param, s_lo, Hinf.tracked, eng);
  // z = 0: isotypic components, each with its own eigenline crystal
  std::vector<Crystal> parts;
  std::vector<Mat> cols;
  for (const auto& [value, Qw] : eigenspaces(Mat::Identity(d, d), casimir(V))) {
    const RepOps Rw = RepOps::from_block(V, Qw);
    const EigenlineCrystal Ew = eigenline_crystal(Rw, chi, eng);
    if (!check_normal(*Ew.crystal).ok || highest_weight_elements(*Ew.crystal).size() != 1)
      throw NumericFailure("isotypic component is not irreducible or its eigenline crystal is not normal");
    parts.push_back(*Ew.crystal);
    cols.push_back(Qw * Ew.lines);
    for (int c = 0; c < Ew.lines.cols(); ++c) T.zero_casimir.push_back(value);
  }
  T.zero_lines.resize(d, d);
  for (int c = 0, off = 0; c < static_cast<int>(cols.size()); off += static_cast<int>(cols[c].cols()), ++c)
    T.zero_lines.middleCols(off, cols[c].cols()) = cols[c];
  const Handoff H0 = handoff(fam, Vt, [&](int k) { return s_lo - k * step; }, [&](double) { return T.zero_lines; },
                             "z = 0", eng);
  const Perm from_product = inverse(Hinf.match.map);
  T.map.resize(n1 * n2);
  for (int x = 0; x < n1 * n2; ++x) T.map[x] = H0.match.map[from_product[x]];
  T.left = share(tensor(E1.crystal, E2.crystal));
  T.right = share(disjoint_union(parts));
  T.iso = check_isomorphism(*T.left, *T.right, T.map);
  if (r == 1) {
    // lines of each weight ordered by h^(1) at infinity and by Delta(C) at zero correspond in order
    std::map<Weight, std::vector<int>> byw;
    for (int x = 0; x < n1 * n2; ++x) byw[T.left->wt[x]].push_back(x);
    for (auto& [w, xs] : byw) {
      std::vector<int> lhs = xs, rhs;
      for (int x : xs) rhs.push_back(T.map[x]);
      std::sort(lhs.begin(), lhs.end(), [&](int a, int b) { return E1.crystal->wt[a / n2] < E1.crystal->wt[b / n2]; });
      std::sort(rhs.begin(), rhs.end(), [&](int a, int b) { return T.zero_casimir[a] < T.zero_casimir[b]; });
      for (std::size_t k = 0; k < lhs.size(); ++k) T.order_property = T.order_property && T.map[lhs[k]] == rhs[k];
    }
  }
  return T;
}

inline EigenlineCrystal irrep_eigenline_crystal(const std::string& tag, const std::vector<int>& lambda,
                                                const std::vector<double>& chi, Engine& eng) {
  return eigenline_crystal(RepOps::from_irrep(build_irrep(tag, lambda)), chi, eng);
}

// ---------------------------------------------------------------------------------------------
// Commutor square: p_{inf,0} o sigma = s o p_{inf,0} as maps E(l1) x E(l2) -> lines at z = 0 of V(l2) (x) V(l1).

struct CommutorSquare {
  bool equal = false;
  std::vector<int> via_sigma, via_flip;
  CheckResult tensor_iso_12, tensor_iso_21;
};

inline CommutorSquare commutor_square(const std::string& tag, const std::vector<int>& l1, const std::vector<int>& l2,
                                      const std::vector<double>& chi, Engine& eng) {
  const auto E1 = irrep_eigenline_crystal(tag, l1, chi, eng);
  const auto E2 = irrep_eigenline_crystal(tag, l2, chi, eng);
  const auto T12 = tensor_transport(tag, l1, l2, E1, E2, chi, eng);
  const auto T21 = tensor_transport(tag, l2, l1, E2, E1, chi, eng);
  TensorSpace V({build_irrep(tag, l1), build_irrep(tag, l2)});
  const Mat F = factor_permutation(V, {1, 0});
  const LineMatch s = match_lines(F * T12.zero_lines, T21.zero_lines);
  if (!s.bijective || s.fidelity < eng.tol.fidelity)
    throw HandoffFailure("flip does not map z = 0 lines to z = 0 lines (fidelity " + std::to_string(s.fidelity) + ")");
  const Commutor sigma = commutor(E1.crystal, E2.crystal);
  CommutorSquare out;
  out.tensor_iso_12 = T12.iso;
  out.tensor_iso_21 = T21.iso;
  for (std::size_t x = 0; x < T12.map.size(); ++x) {
    out.via_sigma.push_back(T21.map[sigma.map[x]]);
    out.via_flip.push_back(s.map[T12.map[x]]);
  }
  out.equal = out.via_sigma == out.via_flip;
  return out;
}

// ---------------------------------------------------------------------------------------------
// Pentagon loop in the (z1 - z2, z2 - z3) quadrant for three sites with chi != 0.

struct PentagonResult {
  bool identity = false;
  Perm perm;
  std::vector<double> vertex_fidelity;
  double eps = 0, big = 0;
};

inline PentagonResult pentagon_numeric(const std::string& tag, const std::vector<std::vector<int>>& spins,
                                       const std::vector<double>& chi, bool reversed, Engine& eng) {
  if (spins.size() != 3) throw Error("pentagon needs three sites");
  std::vector<Irrep> fs;
  for (const auto& l : spins) fs.push_back(build_irrep(tag, l));
  TensorSpace V(fs);
  const int r = V.rank();
  auto fam_ab = [&](double la, double lb) {
    const double a = std::exp(la), b = std::exp(lb);
    return quadratic_family(V, {a + b, b, 0.0}, chi);
  };
  auto shifts = [&](const std::vector<int>& S, std::vector<Mat>& out) {
    for (int k = 0; k < r; ++k) {
      out.push_back(shift_part(V, S, coroot_basis(r, k), chi));
      out.push_back(V.delta_h(S, k));
    }
  };
  // limit families at the five vertices (b << a << 1), (a >> 1, b << 1), (a, b >> 1), (a << 1, b >> 1), (a << b << 1)
  std::vector<std::vector<Mat>> limits(5);
  shifts({0, 1, 2}, limits[0]);
  limits[0].push_back(casimir(V, {1, 2}));
  limits[0].push_back(casimir(V, {0, 1, 2}));
  shifts({0}, limits[1]);
  shifts({1, 2}, limits[1]);
  limits[1].push_back(casimir(V, {1, 2}));
  shifts({0}, limits[2]);
  shifts({1}, limits[2]);
  shifts({2}, limits[2]);
  shifts({0, 1}, limits[3]);
  shifts({2}, limits[3]);
  limits[3].push_back(casimir(V, {0, 1}));
  shifts({0, 1, 2}, limits[4]);
  limits[4].push_back(casimir(V, {0, 1}));
  limits[4].push_back(casimir(V, {0, 1, 2}));
  std::vector<Mat> limit_lines;
  for (const auto& L : limits) limit_lines.push_back(joint_eigenlines(L, eng));

  double eps = 1e-2, big = 1e2;
  for (int attempt = 0;; ++attempt) {
    const double le = std::log(eps), lr = std::log(big);
    std::vector<std::pair<double, double>> vert = {{le, 2 * le}, {lr, 2 * le}, {lr, lr}, {2 * le, lr}, {2 * le, le}};
    std::vector<int> order = {0, 1, 2, 3, 4};
    if (reversed) order = {0, 4, 3, 2, 1};
    PentagonResult res;
    res.eps = eps;
    res.big = big;
    const Mat L0 = joint_eigenlines(fam_ab(vert[0].first, vert[0].second), eng);
    Mat Vc = L0;
    bool ok = true;
    for (int k = 0; k <= 5 && ok; ++k) {
      const int v = order[k % 5];
      if (k > 0) {
        const auto A = vert[order[k - 1]], B = vert[v];
        const FamilyFn fam = [&](double t) {
          return fam_ab((1 - t) * A.first + t * B.first, (1 - t) * A.second + t * B.second);
        };
        Vc = transport(fam, 0.0, 1.0, Vc, eng);
      }
      if (k == 5) break;
      const LineMatch m = match_lines(Vc, limit_lines[v]);
      res.vertex_fidelity.push_back(m.fidelity);
      if (!m.bijective || m.fidelity < eng.tol.fidelity) ok = false;
    }
    if (!ok) {
      if (attempt >= eng.tol.max_halvings) throw HandoffFailure("pentagon vertex fidelity below threshold");
      eps /= 2;
      big *= 2;
      continue;
    }
    for (double f : res.vertex_fidelity) eng.diag.min_fidelity = std::min(eng.diag.min_fidelity, f);
    eng.diag.handoffs.push_back({{"at", "pentagon"}, {"eps", eps}, {"big", big}, {"vertex_fidelity", res.vertex_fidelity}});
    const LineMatch m = match_lines(Vc, L0);
    if (!m.bijective || m.fidelity < eng.tol.fidelity) throw HandoffFailure("pentagon loop does not close");
    res.perm = m.map;
    res.identity = res.perm == identity_perm(static_cast<int>(res.perm.size()));
    return res;
  }
}

}  // namespace ccl
