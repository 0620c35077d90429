#pragma once

// Weight multiplicities by Freudenthal's recursion; independent of the crystal code.

#include "ccl/root_system.hpp"

#include <deque>
#include <map>

namespace ccl {

using Character = std::map<std::vector<long long>, long long>;

namespace detail {

inline bool below(const RootSystem& rs, const Weight& lambda, const Weight& mu) {
  const Weight c = rs.to_root_coords(lambda - mu);
  for (const auto& x : c)
    if (x < 0 || !is_integral(x)) return false;
  return true;
}

}  // namespace detail

class Freudenthal {
 public:
  Freudenthal(const RootSystem& rs, Weight lambda) : rs_(rs), lambda_(std::move(lambda)) {
    if (!rs_.is_dominant(lambda_)) throw Error("Freudenthal: weight is not dominant");
    const Weight lr = lambda_ + rs_.rho();
    norm_top_ = rs_.inner(lr, lr);
  }

  long long multiplicity(const Weight& mu) {
    const Weight dom = dominant_conjugate(rs_, mu);
    if (!detail::below(rs_, lambda_, dom)) return 0;
    auto key = to_ints(dom);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    long long m;
    if (dom == lambda_) {
      m = 1;
    } else {
      Q acc(0);
      for (const auto& beta : rs_.positive_roots()) {
        const Weight a = rs_.root_weight(beta);
        for (int k = 1;; ++k) {
          const Weight nu = dom + Q(k) * a;
          const long long mk = multiplicity(nu);
          if (mk == 0) break;
          acc += Q(mk) * rs_.inner(nu, a);
        }
      }
      const Weight mr = dom + rs_.rho();
      const Q denom = norm_top_ - rs_.inner(mr, mr);
      const Q val = Q(2) * acc / denom;
      if (!is_integral(val)) throw Error("Freudenthal: non-integral multiplicity");
      m = val.numerator();
    }
    memo_[key] = m;
    return m;
  }

  Character character() {
    Character ch;
    std::deque<Weight> q{lambda_};
    std::set<std::vector<long long>> seen{to_ints(lambda_)};
    while (!q.empty()) {
      Weight mu = q.front();
      q.pop_front();
      const long long m = multiplicity(mu);
      if (m == 0) continue;
      ch[to_ints(mu)] = m;
      for (int j = 0; j < rs_.rank(); ++j) {
        Weight nu = mu - rs_.simple_root(j);
        auto key = to_ints(nu);
        if (!seen.count(key)) {
          seen.insert(key);
          q.push_back(nu);
        }
      }
    }
    return ch;
  }

 private:
  const RootSystem& rs_;
  Weight lambda_;
  Q norm_top_;
  std::map<std::vector<long long>, long long> memo_;
};

inline Character character(const RootSystem& rs, const Weight& lambda) {
  return Freudenthal(rs, lambda).character();
}

inline Character character_product(const Character& a, const Character& b) {
  Character r;
  for (const auto& [wa, ma] : a)
    for (const auto& [wb, mb] : b) {
      std::vector<long long> w(wa.size());
      for (std::size_t k = 0; k < w.size(); ++k) w[k] = wa[k] + wb[k];
      r[w] += ma * mb;
    }
  return r;
}

// Irreducible multiplicities of a W-invariant character, peeled from the top.
inline std::map<std::vector<long long>, long long> decompose_character(const RootSystem& rs, Character ch) {
  std::map<std::vector<long long>, long long> out;
  auto height = [&](const std::vector<long long>& w) {
    Weight c = rs.to_root_coords(make_weight(std::vector<int>(w.begin(), w.end())));
    Q h(0);
    for (const auto& x : c) h += x;
    return h;
  };
  for (;;) {
    for (auto it = ch.begin(); it != ch.end();) it = it->second == 0 ? ch.erase(it) : std::next(it);
    if (ch.empty()) break;
    auto top = ch.begin();
    for (auto it = ch.begin(); it != ch.end(); ++it)
      if (height(it->first) > height(top->first)) top = it;
    const auto hw = top->first;
    const long long m = top->second;
    if (m < 0) throw Error("decompose_character: negative multiplicity");
    out[hw] += m;
    for (const auto& [w, k] : character(rs, make_weight(std::vector<int>(hw.begin(), hw.end())))) ch[w] -= m * k;
  }
  return out;
}

}  // namespace ccl
