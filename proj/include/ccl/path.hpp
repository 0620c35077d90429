#pragma once

// Littelmann path model with exact rational data.

#include "ccl/root_system.hpp"

#include <optional>
#include <utility>

namespace ccl {

struct Segment {
  Weight direction;
  Q duration;
  bool operator==(const Segment& o) const { return direction == o.direction && duration == o.duration; }
  bool operator<(const Segment& o) const {
    if (direction != o.direction) return direction < o.direction;
    return duration < o.duration;
  }
};

// Piecewise linear path pi(t) = sum of direction*duration over completed time.
struct Path {
  std::vector<Segment> segments;

  static Path straight(const Weight& lambda) { return Path{{Segment{lambda, Q(1)}}}; }

  Weight endpoint() const {
    Weight w(segments.front().direction.size(), Q(0));
    for (const auto& s : segments) w = w + s.duration * s.direction;
    return w;
  }

  void canonicalize() {
    std::vector<Segment> out;
    for (auto& s : segments) {
      if (s.duration == 0) continue;
      if (!out.empty() && out.back().direction == s.direction)
        out.back().duration += s.duration;
      else
        out.push_back(s);
    }
    segments = std::move(out);
  }

  bool operator==(const Path& o) const { return segments == o.segments; }
  bool operator<(const Path& o) const { return segments < o.segments; }
};

namespace detail {

// Values of h(t) = <alpha_i^vee, pi(t)> at the breakpoints t_0=0 < t_1 < ... < t_K=1.
inline std::vector<Q> height_profile(const Path& p, int i) {
  std::vector<Q> h{Q(0)};
  for (const auto& s : p.segments) h.push_back(h.back() + s.direction[i] * s.duration);
  return h;
}

// Returns a copy of p with a breakpoint inserted at absolute time t; sets idx to the index of
// the first segment starting at t.
inline Path split_at(const Path& p, const Q& t, std::size_t& idx) {
  Path out;
  Q clock(0);
  idx = p.segments.size();
  bool placed = false;
  for (const auto& s : p.segments) {
    if (!placed && t == clock) {
      idx = out.segments.size();
      placed = true;
    }
    if (!placed && clock < t && t < clock + s.duration) {
      out.segments.push_back({s.direction, t - clock});
      idx = out.segments.size();
      out.segments.push_back({s.direction, clock + s.duration - t});
      placed = true;
    } else {
      out.segments.push_back(s);
    }
    clock += s.duration;
  }
  if (!placed) idx = out.segments.size();
  return out;
}

inline Path reflect_window(const RootSystem& rs, int i, const Path& p, const Q& t0, const Q& t1) {
  std::size_t a = 0, b = 0;
  Path q = split_at(p, t0, a);
  q = split_at(q, t1, b);
  // a may have shifted if t1 split before it; t0 <= t1 so it did not.
  Q clock(0);
  for (auto& s : q.segments) {
    const Q start = clock;
    clock += s.duration;
    if (start >= t0 && clock <= t1) s.direction = rs.reflect(i, s.direction);
  }
  q.canonicalize();
  return q;
}

}  // namespace detail

inline std::optional<Path> littelmann_f(const RootSystem& rs, int i, const Path& p) {
  const auto h = detail::height_profile(p, i);
  const Q m = *std::min_element(h.begin(), h.end());
  if (h.back() - m < 1) return std::nullopt;
  std::size_t k0 = 0;
  for (std::size_t k = 0; k < h.size(); ++k)
    if (h[k] == m) k0 = k;
  Q t(0);
  for (std::size_t k = 0; k < k0; ++k) t += p.segments[k].duration;
  const Q t0 = t;
  Q t1 = -1;
  for (std::size_t k = k0; k < p.segments.size(); ++k) {
    const auto& s = p.segments[k];
    if (h[k + 1] >= m + 1) {
      t1 = t + (m + 1 - h[k]) / s.direction[i];
      break;
    }
    t += s.duration;
  }
  return detail::reflect_window(rs, i, p, t0, t1);
}

inline std::optional<Path> littelmann_e(const RootSystem& rs, int i, const Path& p) {
  const auto h = detail::height_profile(p, i);
  const Q m = *std::min_element(h.begin(), h.end());
  if (m > -1) return std::nullopt;
  std::size_t k1 = 0;
  while (h[k1] != m) ++k1;
  Q t1(0);
  for (std::size_t k = 0; k < k1; ++k) t1 += p.segments[k].duration;
  std::size_t k = k1;
  while (h[k - 1] < m + 1) --k;
  const std::size_t seg = k - 1;  // h[seg] >= m+1 > h[seg+1]
  Q start(0);
  for (std::size_t j = 0; j < seg; ++j) start += p.segments[j].duration;
  const Q t0 = start + (m + 1 - h[seg]) / p.segments[seg].direction[i];
  return detail::reflect_window(rs, i, p, t0, t1);
}

}  // namespace ccl
