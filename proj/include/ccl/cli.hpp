#pragma once

// Command-line surface: a flat configuration record, its CLI11 parser and canonical renderer, and
// the dispatcher behind the `ccl` binary.

#include "ccl/verify.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace ccl {

struct CliConfig {
  std::string command, action;
  std::string type;              // root system label for crystal verbs (A1, A2, ...)
  std::string g = "sl2";         // Lie algebra for numeric verbs
  std::vector<int> lambda, lambda2;
  std::string spins;             // "1,1,1" for sl2, "1,0;0,1" for sl3
  std::vector<int> mu;
  std::vector<std::string> gens;  // one generator, or a word (leftmost acts last)
  int tensor_power = 0;
  std::string tree;
  std::vector<std::string> u;    // chart coordinates as rationals
  int n = 0;
  std::vector<double> z, chi;
  double delta = 0.05;
  bool reversed = false;
  std::optional<std::uint64_t> seed;
  Tolerances tol;
  std::string config;            // experiment config file (JSON)
  std::string format = "json";
  std::string out, junit;
  std::string suite = "desk";
  std::string case_id;
  bool timing = false;

  bool operator==(const CliConfig& o) const {
    return command == o.command && action == o.action && type == o.type && g == o.g && lambda == o.lambda &&
           lambda2 == o.lambda2 && spins == o.spins && mu == o.mu && gens == o.gens && tensor_power == o.tensor_power &&
           tree == o.tree && u == o.u && n == o.n && z == o.z && chi == o.chi && delta == o.delta &&
           reversed == o.reversed && seed == o.seed && tolerances_json(tol) == tolerances_json(o.tol) &&
           config == o.config && format == o.format && out == o.out && junit == o.junit && suite == o.suite &&
           case_id == o.case_id && timing == o.timing;
  }
};

namespace cli_detail {

inline std::string fmt_double(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

template <class T>
std::string join(const std::vector<T>& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) s += ",";
    if constexpr (std::is_same_v<T, double>)
      s += fmt_double(v[k]);
    else if constexpr (std::is_same_v<T, std::string>)
      s += v[k];
    else
      s += std::to_string(v[k]);
  }
  return s;
}

// Every flag: how CLI11 binds it and how the canonical renderer prints it (nullopt = default).
struct Flag {
  std::string name;
  std::function<void(CLI::App*, CliConfig&)> bind;
  std::function<std::optional<std::string>(const CliConfig&)> render;
  bool is_switch = false;
};

inline const std::vector<Flag>& flags() {
  static const std::vector<Flag> all = [] {
    const CliConfig d;
    std::vector<Flag> f;
    auto str = [&](std::string name, std::string CliConfig::*m, std::string help) {
      f.push_back({name, [=](CLI::App* a, CliConfig& c) { a->add_option(name, c.*m, help); },
                   [=](const CliConfig& c) -> std::optional<std::string> {
                     if (c.*m == d.*m) return std::nullopt;
                     return c.*m;
                   }});
    };
    auto ints = [&](std::string name, std::vector<int> CliConfig::*m, std::string help) {
      f.push_back({name, [=](CLI::App* a, CliConfig& c) { a->add_option(name, c.*m, help)->delimiter(','); },
                   [=](const CliConfig& c) -> std::optional<std::string> {
                     if (c.*m == d.*m) return std::nullopt;
                     return join(c.*m);
                   }});
    };
    auto dbls = [&](std::string name, std::vector<double> CliConfig::*m, std::string help) {
      f.push_back({name, [=](CLI::App* a, CliConfig& c) { a->add_option(name, c.*m, help)->delimiter(','); },
                   [=](const CliConfig& c) -> std::optional<std::string> {
                     if (c.*m == d.*m) return std::nullopt;
                     return join(c.*m);
                   }});
    };
    auto strs = [&](std::string name, std::vector<std::string> CliConfig::*m, std::string help) {
      f.push_back({name, [=](CLI::App* a, CliConfig& c) { a->add_option(name, c.*m, help)->delimiter(','); },
                   [=](const CliConfig& c) -> std::optional<std::string> {
                     if (c.*m == d.*m) return std::nullopt;
                     return join(c.*m);
                   }});
    };
    auto num = [&]<class T>(std::string name, T CliConfig::*m, std::string help) {
      f.push_back({name, [=](CLI::App* a, CliConfig& c) { a->add_option(name, c.*m, help); },
                   [=](const CliConfig& c) -> std::optional<std::string> {
                     if (c.*m == d.*m) return std::nullopt;
                     if constexpr (std::is_floating_point_v<T>)
                       return fmt_double(c.*m);
                     else
                       return std::to_string(c.*m);
                   }});
    };
    auto tol = [&]<class T>(std::string name, T Tolerances::*m, std::string help) {
      f.push_back({name, [=](CLI::App* a, CliConfig& c) { a->add_option(name, c.tol.*m, help); },
                   [=](const CliConfig& c) -> std::optional<std::string> {
                     if (c.tol.*m == d.tol.*m) return std::nullopt;
                     if constexpr (std::is_floating_point_v<T>)
                       return fmt_double(c.tol.*m);
                     else
                       return std::to_string(c.tol.*m);
                   }});
    };
    auto sw = [&](std::string name, bool CliConfig::*m, std::string help) {
      f.push_back({name, [=](CLI::App* a, CliConfig& c) { a->add_flag(name, c.*m, help); },
                   [=](const CliConfig& c) -> std::optional<std::string> {
                     if (!(c.*m)) return std::nullopt;
                     return std::string();
                   },
                   true});
    };
    str("--type", &CliConfig::type, "root system type: A1..A3, B2, C2, G2, ...");
    str("--g", &CliConfig::g, "Lie algebra for numerics: sl2 or sl3");
    ints("--lambda", &CliConfig::lambda, "highest weight, fundamental-weight coordinates (comma separated)");
    ints("--lambda2", &CliConfig::lambda2, "second highest weight");
    str("--spins", &CliConfig::spins, "site weights: 1,1,1 (sl2) or 1,0;1,0 (sl3)");
    ints("--mu", &CliConfig::mu, "highest weight of the multiplicity space");
    strs("--gen", &CliConfig::gens, "generator(s): sI, s1, s12, s{1,2} (internal); s12, s_p_q (external)");
    num("--tensor-power", &CliConfig::tensor_power, "act externally on B(lambda)^(x)n");
    str("--tree", &CliConfig::tree, "planar binary tree, e.g. ((12)3)");
    strs("--u", &CliConfig::u, "chart coordinates below the top, rationals like 1/2");
    num("--n", &CliConfig::n, "number of marked points");
    dbls("--z", &CliConfig::z, "strictly increasing configuration");
    dbls("--chi", &CliConfig::chi, "regular element in coroot coordinates");
    num("--delta", &CliConfig::delta, "cluster width for external generators");
    sw("--reversed", &CliConfig::reversed, "reverse the loop orientation");
    f.push_back({"--seed", [](CLI::App* a, CliConfig& c) { a->add_option_function<std::uint64_t>("--seed", [&c](const std::uint64_t& v) { c.seed = v; }, "PRNG seed (fallback: CCL_SEED)"); },
                 [](const CliConfig& c) -> std::optional<std::string> {
                   if (!c.seed) return std::nullopt;
                   return std::to_string(*c.seed);
                 }});
    tol("--overlap", &Tolerances::overlap, "per-step overlap threshold");
    tol("--fidelity", &Tolerances::fidelity, "handoff fidelity threshold");
    tol("--residual", &Tolerances::residual, "eigen-residual tolerance");
    tol("--commutator", &Tolerances::commutator, "commutator tolerance");
    tol("--separation", &Tolerances::separation, "joint-label separation");
    tol("--max-depth", &Tolerances::max_depth, "adaptive halving depth");
    tol("--max-halvings", &Tolerances::max_halvings, "handoff refinements");
    str("--config", &CliConfig::config, "experiment config file (JSON)");
    str("--format", &CliConfig::format, "output format: json or dot");
    str("--out", &CliConfig::out, "output file (default: stdout)");
    str("--junit", &CliConfig::junit, "JUnit XML report file");
    str("--suite", &CliConfig::suite, "suite: desk, crystal or numeric");
    str("--id", &CliConfig::case_id, "case id (see verify all output)");
    sw("--timing", &CliConfig::timing, "include wall-clock seconds in the JSON report");
    return f;
  }();
  return all;
}

struct Leaf {
  std::string command, action, help;
  std::vector<std::string> flags;
};

inline const std::vector<Leaf>& leaves() {
  static const std::vector<std::string> tol = {"--seed",      "--overlap",   "--fidelity",     "--residual",
                                               "--commutator", "--separation", "--max-depth", "--max-halvings"};
  auto with_tol = [](std::vector<std::string> v) {
    v.insert(v.end(), tol.begin(), tol.end());
    return v;
  };
  static const std::vector<Leaf> all = {
      {"crystal", "build", "crystal B(lambda)", {"--type", "--lambda", "--format", "--out"}},
      {"crystal", "tensor", "B(lambda) (x) B(lambda2) and its decomposition", {"--type", "--lambda", "--lambda2", "--format", "--out"}},
      {"crystal", "commutor", "commutor sigma on B(lambda) (x) B(lambda2)", {"--type", "--lambda", "--lambda2", "--out"}},
      {"crystal", "cactus", "cactus word acting on B(lambda) or B(lambda)^(x)n", {"--type", "--lambda", "--gen", "--tensor-power", "--out"}},
      {"moduli", "chart", "configuration of a chart point of a tree", {"--tree", "--u", "--out"}},
      {"moduli", "schedule", "path schedule of an external generator", {"--n", "--gen", "--z", "--delta", "--out"}},
      {"gaudin", "eigenlines", "Gaudin eigenlines on E(spins)^mu", with_tol({"--g", "--spins", "--mu", "--z", "--chi", "--out"})},
      {"gaudin", "monodromy", "monodromy of a cactus generator (external with --spins, internal with --lambda)",
       with_tol({"--g", "--spins", "--mu", "--lambda", "--gen", "--z", "--chi", "--delta", "--config", "--out"})},
      {"gaudin", "pentagon", "five-edge loop on three sites", with_tol({"--spins", "--chi", "--reversed", "--out"})},
      {"verify", "all", "run a verification suite", with_tol({"--suite", "--out", "--junit", "--timing"})},
      {"verify", "case", "run one case of the desk suite", with_tol({"--id", "--out", "--junit", "--timing"})},
  };
  return all;
}

inline const Flag& flag(const std::string& name) {
  for (const auto& f : flags())
    if (f.name == name) return f;
  throw Error("unknown flag " + name);
}

}  // namespace cli_detail

struct UsageError : Error {
  using Error::Error;
};

inline std::string cli_help_footer() {
  return "Weights are comma-separated fundamental-weight coordinates (1-based nodes).\n"
         "Generators: internal sI (all nodes), s1, s12, s{1,2}; external s_pq as s12, s23 or s_1_10.\n"
         "Exit codes: 0 success/equal, 1 mismatch, 2 inconclusive, 3 usage error.\n"
         "The seed falls back to the CCL_SEED environment variable.";
}

// Parses argv into a configuration. Throws UsageError on bad input; help requests throw
// CLI::CallForHelp (handled by run_cli).
inline CliConfig parse_cli(const std::vector<std::string>& args) {
  CliConfig c;
  CLI::App app{"Crystals, cactus groups and Gaudin eigenline monodromy", "ccl"};
  app.footer(cli_help_footer());
  app.require_subcommand(1);
  std::map<std::string, CLI::App*> cmds;
  std::vector<std::pair<CLI::App*, const cli_detail::Leaf*>> subs;
  for (const auto& leaf : cli_detail::leaves()) {
    auto*& cmd = cmds[leaf.command];
    if (!cmd) {
      cmd = app.add_subcommand(leaf.command);
      cmd->require_subcommand(1);
    }
    auto* sub = cmd->add_subcommand(leaf.action, leaf.help);
    for (const auto& name : leaf.flags) cli_detail::flag(name).bind(sub, c);
    subs.push_back({sub, &leaf});
  }
  std::vector<std::string> rev(args.rbegin(), args.rend());
  app.parse(rev);
  for (auto [sub, leaf] : subs)
    if (sub->parsed()) {
      c.command = leaf->command;
      c.action = leaf->action;
    }
  return c;
}

// Canonical argv (without the program name) that parses back to the same configuration.
inline std::vector<std::string> render_cli(const CliConfig& c) {
  std::vector<std::string> out = {c.command, c.action};
  for (const auto& leaf : cli_detail::leaves()) {
    if (leaf.command != c.command || leaf.action != c.action) continue;
    for (const auto& name : leaf.flags) {
      const auto& f = cli_detail::flag(name);
      if (auto v = f.render(c)) {
        out.push_back(name);
        if (!f.is_switch) out.push_back(*v);
      }
    }
  }
  return out;
}

namespace cli_detail {

inline Q parse_rational(const std::string& s) {
  try {
    const auto slash = s.find('/');
    std::size_t used = 0;
    if (slash == std::string::npos) {
      const long long v = std::stoll(s, &used);
      if (used != s.size()) throw 0;
      return Q(v);
    }
    const std::string a = s.substr(0, slash), b = s.substr(slash + 1);
    const long long x = std::stoll(a, &used);
    if (used != a.size()) throw 0;
    const long long y = std::stoll(b, &used);
    if (used != b.size() || y == 0) throw 0;
    return Q(x, y);
  } catch (...) {
    throw UsageError("not a rational number: '" + s + "'");
  }
}

inline std::vector<std::vector<int>> parse_spins(const std::string& g, const std::string& s) {
  std::vector<std::vector<int>> out;
  const int r = lie_rank(g);
  auto ints = [&](const std::string& t) {
    std::vector<int> v;
    std::stringstream ss(t);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        std::size_t used = 0;
        v.push_back(std::stoi(item, &used));
        if (used != item.size() || v.back() < 0) throw 0;
      } catch (...) {
        throw UsageError("bad spin entry '" + item + "'");
      }
    }
    return v;
  };
  if (r == 1) {
    for (int x : ints(s)) out.push_back({x});
  } else {
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ';')) {
      out.push_back(ints(part));
      if (static_cast<int>(out.back().size()) != r) throw UsageError("each site weight needs " + std::to_string(r) + " entries");
    }
  }
  if (out.empty()) throw UsageError("--spins is required");
  return out;
}

inline void require(bool ok, const std::string& what) {
  if (!ok) throw UsageError(what);
}

inline void check_lambda(const std::vector<int>& l, int rank, const std::string& name) {
  require(static_cast<int>(l.size()) == rank, name + " needs " + std::to_string(rank) + " coordinates");
  for (int x : l) require(x >= 0, name + " must be dominant");
}

// Writes text to the configured file (atomically, through a temporary) or to the stream.
inline void emit(const CliConfig& c, const std::string& text, std::ostream& os) {
  if (c.out.empty()) {
    os << text;
    return;
  }
  const std::string tmp = c.out + ".tmp";
  {
    std::ofstream f(tmp);
    if (!f) throw UsageError("cannot write " + c.out);
    f << text;
  }
  std::filesystem::rename(tmp, c.out);
}

inline std::string dump(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

inline nlohmann::ordered_json perm_json(const Perm& p) { return nlohmann::ordered_json(p); }

inline int run_crystal(const CliConfig& c, std::ostream& os) {
  require(!c.type.empty(), "--type is required");
  const auto rs = RootSystem::build(c.type);
  check_lambda(c.lambda, rs.rank(), "--lambda");
  auto B = share(generate_crystal(rs, make_weight(c.lambda)));
  require(c.format == "json" || c.format == "dot", "--format must be json or dot");
  if (c.action == "build") {
    emit(c, c.format == "dot" ? crystal_dot(*B) : dump(crystal_json(*B)), os);
    return 0;
  }
  if (c.action == "tensor" || c.action == "commutor") {
    check_lambda(c.lambda2, rs.rank(), "--lambda2");
    auto B2 = share(generate_crystal(rs, make_weight(c.lambda2)));
    auto T = share(tensor(B, B2));
    if (c.action == "commutor") {
      const auto s = commutor(B, B2);
      nlohmann::ordered_json j;
      j["domain_size"] = T->size();
      j["permutation"] = s.map;
      emit(c, dump(j), os);
      return 0;
    }
    if (c.format == "dot") {
      emit(c, crystal_dot(*T), os);
      return 0;
    }
    auto j = crystal_json(*T);
    auto dec = nlohmann::ordered_json::array();
    for (const auto& comp : components(*T))
      dec.push_back({{"highest", comp.highest}, {"wt", weight_json(T->wt[comp.highest])}, {"size", comp.elements.size()}});
    j["components"] = dec;
    emit(c, dump(j), os);
    return 0;
  }
  // cactus
  require(!c.gens.empty(), "--gen is required");
  CactusWord w;
  nlohmann::ordered_json j;
  if (c.tensor_power > 0) {
    for (const auto& g : c.gens) w.letters.push_back(parse_external_generator(g, c.tensor_power));
    ExternalCactus act;
    const auto r = act.act(w, std::vector<CrystalPtr>(c.tensor_power, B));
    j["domain_size"] = r.domain->size();
    j["permutation"] = r.map;
  } else {
    for (const auto& g : c.gens) w.letters.push_back(parse_internal_generator(g, rs));
    InternalCactus act(B);
    j["domain_size"] = B->size();
    j["permutation"] = act.act(w);
  }
  nlohmann::ordered_json names = nlohmann::ordered_json::array();
  for (const auto& g : w.letters) names.push_back(generator_name(g));
  j["word"] = names;
  emit(c, dump(j), os);
  return 0;
}

inline int run_moduli(const CliConfig& c, std::ostream& os) {
  if (c.action == "chart") {
    require(!c.tree.empty(), "--tree is required");
    const Tree t = parse_tree(c.tree);
    const NestedSet ns = tree_to_nested_set(t);
    std::vector<Q> u = {Q(1)};
    for (const auto& s : c.u) u.push_back(parse_rational(s));
    require(u.size() == ns.sets.size(), "--u needs " + std::to_string(ns.sets.size() - 1) + " coordinates");
    nlohmann::ordered_json j;
    j["tree"] = print_tree(t);
    j["nested_sets"] = ns.sets;
    const auto pt = chart_to_configuration(ns, u);
    if (const auto* z = std::get_if<std::vector<Q>>(&pt)) {
      nlohmann::ordered_json zs = nlohmann::ordered_json::array();
      for (const auto& x : *z) zs.push_back(to_string(x));
      j["z"] = zs;
    } else {
      j["collapsed"] = std::get<Degeneration>(pt).collapsed;
    }
    emit(c, dump(j), os);
    return 0;
  }
  require(c.n >= 2, "--n must be at least 2");
  require(c.gens.size() == 1, "exactly one --gen is required");
  const auto g = parse_external_generator(c.gens[0], c.n);
  const auto z = c.z.empty() ? standard_base(c.n) : c.z;
  emit(c, dump(schedule_json(cactus_path_schedule(c.n, g.p, g.q, z, c.delta))), os);
  return 0;
}

inline std::vector<double> chi_or_default(const CliConfig& c) {
  return c.chi.empty() ? rho_coweight(lie_rank(c.g)) : c.chi;
}

inline int run_gaudin(CliConfig c, std::ostream& os) {
  if (!c.config.empty()) {
    std::ifstream f(c.config);
    require(static_cast<bool>(f), "cannot read " + c.config);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(f);
    } catch (const std::exception& e) {
      throw UsageError(std::string("bad config file: ") + e.what());
    }
    c.g = j.value("algebra", c.g);
    if (j.contains("spins")) {
      std::string s;
      for (const auto& x : j["spins"]) {
        if (!s.empty()) s += lie_rank(c.g) == 1 ? "," : ";";
        if (x.is_array()) {
          s += join(x.get<std::vector<int>>());
        } else {
          s += std::to_string(x.get<int>());
        }
      }
      c.spins = s;
    }
    if (j.contains("mu")) c.mu = j["mu"].is_array() ? j["mu"].get<std::vector<int>>() : std::vector<int>{j["mu"].get<int>()};
    if (j.contains("generator")) c.gens = {j["generator"].get<std::string>()};
    if (j.contains("base_z")) c.z = j["base_z"].get<std::vector<double>>();
    c.delta = j.value("delta_star", c.delta);
    if (j.contains("seed") && !c.seed) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("tolerances")) c.tol = tolerances_from_json(j["tolerances"]);
  }
  require(c.g == "sl2" || c.g == "sl3", "--g must be sl2 or sl3");
  const int r = lie_rank(c.g);
  Engine eng(resolve_seed(c.seed), c.tol);
  nlohmann::ordered_json j;
  j["seed"] = eng.seed;
  if (c.action == "eigenlines") {
    const auto spins = parse_spins(c.g, c.spins);
    const int n = static_cast<int>(spins.size());
    std::vector<Irrep> fs;
    for (const auto& l : spins) {
      check_lambda(l, r, "--spins");
      fs.push_back(build_irrep(c.g, l));
    }
    TensorSpace V(fs);
    const auto z = c.z.empty() ? standard_base(n) : c.z;
    require(static_cast<int>(z.size()) == n, "--z needs one coordinate per site");
    std::vector<double> chi = c.chi.empty() ? std::vector<double>(r, 0.0) : c.chi;
    require(static_cast<int>(chi.size()) == r, "--chi needs " + std::to_string(r) + " coordinates");
    check_lambda(c.mu, r, "--mu");
    const Mat Q = singular_block(V, c.mu);
    require(Q.cols() > 0, "multiplicity space is empty");
    const auto fam = restrict_all(Q, quadratic_family(V, z, chi));
    const Mat L = joint_eigenlines(fam, eng);
    auto lines = nlohmann::ordered_json::array();
    for (int col = 0; col < L.cols(); ++col) {
      std::vector<double> ev;
      for (int i = 0; i < n; ++i) ev.push_back(L.col(col).dot(fam[i] * L.col(col)));
      lines.push_back({{"line", col}, {"eigenvalues", ev}});
    }
    j["block_dim"] = Q.cols();
    j["lines"] = lines;
    j["diagnostics"] = eng.diag.to_json();
    emit(c, dump(j), os);
    return 0;
  }
  if (c.action == "pentagon") {
    const auto spins = parse_spins("sl2", c.spins.empty() ? "1,1,1" : c.spins);
    require(spins.size() == 3, "pentagon needs three sites");
    const auto chi = c.chi.empty() ? std::vector<double>{1.0} : c.chi;
    require(chi.size() == 1 && chi[0] != 0, "--chi must be one nonzero number");
    const auto P = pentagon_numeric("sl2", spins, chi, c.reversed, eng);
    j["identity"] = P.identity;
    j["permutation"] = P.perm;
    j["vertex_fidelity"] = P.vertex_fidelity;
    j["diagnostics"] = eng.diag.to_json();
    emit(c, dump(j), os);
    return P.identity ? 0 : 1;
  }
  // monodromy
  require(c.gens.size() == 1, "exactly one --gen is required");
  if (!c.spins.empty()) {
    ExternalSetup s;
    s.tag = c.g;
    s.spins = parse_spins(c.g, c.spins);
    for (const auto& l : s.spins) check_lambda(l, r, "--spins");
    const int n = static_cast<int>(s.spins.size());
    const auto g = parse_external_generator(c.gens[0], n);
    s.p = g.p;
    s.q = g.q;
    check_lambda(c.mu, r, "--mu");
    s.mu = c.mu;
    s.base = c.z.empty() ? standard_base(n) : c.z;
    s.delta = c.delta;
    auto res = monodromy_external(s, eng);
    j = res.to_json();
    j["generator"] = generator_name(g);
    if (r == 1 && n > 2 && res.perm.size() > 1) j["nested_labels"] = caterpillar_labels(s, res.lines, eng);
    j["diagnostics"] = eng.diag.to_json();
    emit(c, dump(j), os);
    return 0;
  }
  check_lambda(c.lambda, r, "--lambda");
  const auto chi = chi_or_default(c);
  require(static_cast<int>(chi.size()) == r, "--chi needs " + std::to_string(r) + " coordinates");
  const auto E = irrep_eigenline_crystal(c.g, c.lambda, chi, eng);
  const auto g = parse_internal_generator(c.gens[0], E.crystal->rs);
  auto res = monodromy_internal(E, g.J, eng);
  j = res.to_json();
  j["generator"] = generator_name(g);
  j["diagnostics"] = eng.diag.to_json();
  emit(c, dump(j), os);
  return 0;
}

inline int run_verify(const CliConfig& c, std::ostream& os) {
  VerifyOptions opt;
  opt.seed = resolve_seed(c.seed);
  opt.tol = c.tol;
  std::vector<VerificationReport> reports;
  if (c.action == "all") {
    require(c.suite == "desk" || c.suite == "crystal" || c.suite == "numeric", "--suite must be desk, crystal or numeric");
    reports = verify_suite(c.suite, opt);
  } else {
    require(!c.case_id.empty(), "--id is required");
    for (auto& r : verify_suite("desk", opt))
      if (r.id == c.case_id) reports.push_back(std::move(r));
    require(!reports.empty(), "no case with id '" + c.case_id + "'");
  }
  emit(c, dump(reports_json(reports, c.timing)), os);
  if (!c.junit.empty()) {
    CliConfig jc = c;
    jc.out = c.junit;
    emit(jc, reports_junit(reports), os);
  }
  return exit_status(reports);
}

}  // namespace cli_detail

// Full run: parse, dispatch, map failures to exit codes.
inline int run_cli(const std::vector<std::string>& args, std::ostream& os = std::cout, std::ostream& es = std::cerr) {
  CliConfig c;
  try {
    c = parse_cli(args);
  } catch (const CLI::CallForHelp&) {
    CLI::App app{"Crystals, cactus groups and Gaudin eigenline monodromy", "ccl"};
    os << "usage: ccl <crystal|moduli|gaudin|verify> <action> [flags]\n\n";
    for (const auto& leaf : cli_detail::leaves()) {
      os << "  ccl " << leaf.command << " " << leaf.action << "  " << leaf.help << "\n     ";
      for (const auto& f : leaf.flags) os << " " << f;
      os << "\n";
    }
    os << "\n" << cli_help_footer() << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    es << "usage error: " << e.what() << "\n";
    return 3;
  }
  try {
    if (c.command == "crystal") return cli_detail::run_crystal(c, os);
    if (c.command == "moduli") return cli_detail::run_moduli(c, os);
    if (c.command == "gaudin") return cli_detail::run_gaudin(c, os);
    return cli_detail::run_verify(c, os);
  } catch (const NumericFailure& e) {
    es << "inconclusive: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    es << "usage error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace ccl
