#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

// boost::rational<int64_t> compared against a plain int recurses inside boost's mixed-type
// templates; exact-match overloads take precedence.
namespace boost {
#define CCL_RATIONAL_INT_CMP(op)                                                               \
  inline bool operator op(const rational<std::int64_t>& a, int b) { return a op rational<std::int64_t>(b); } \
  inline bool operator op(int a, const rational<std::int64_t>& b) { return rational<std::int64_t>(a) op b; }
CCL_RATIONAL_INT_CMP(==)
CCL_RATIONAL_INT_CMP(!=)
CCL_RATIONAL_INT_CMP(<)
CCL_RATIONAL_INT_CMP(>)
CCL_RATIONAL_INT_CMP(<=)
CCL_RATIONAL_INT_CMP(>=)
#undef CCL_RATIONAL_INT_CMP
}  // namespace boost

namespace ccl {

using Q = boost::rational<std::int64_t>;

// Weight in fundamental-weight coordinates.
using Weight = std::vector<Q>;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Weight make_weight(const std::vector<int>& v) {
  Weight w;
  w.reserve(v.size());
  for (int x : v) w.emplace_back(x);
  return w;
}

inline Weight operator+(const Weight& a, const Weight& b) {
  Weight r(a);
  for (std::size_t k = 0; k < r.size(); ++k) r[k] += b[k];
  return r;
}

inline Weight operator-(const Weight& a, const Weight& b) {
  Weight r(a);
  for (std::size_t k = 0; k < r.size(); ++k) r[k] -= b[k];
  return r;
}

inline Weight operator*(const Q& s, const Weight& a) {
  Weight r(a);
  for (auto& x : r) x *= s;
  return r;
}

inline Weight operator-(const Weight& a) { return Q(-1) * a; }

inline bool is_integral(const Q& q) { return q.denominator() == 1; }

inline bool is_integral(const Weight& w) {
  for (const auto& x : w)
    if (!is_integral(x)) return false;
  return true;
}

inline std::vector<long long> to_ints(const Weight& w) {
  std::vector<long long> r;
  for (const auto& x : w) {
    if (!is_integral(x)) throw Error("weight is not integral");
    r.push_back(x.numerator());
  }
  return r;
}

inline std::string to_string(const Q& q) {
  std::ostringstream os;
  os << q.numerator();
  if (q.denominator() != 1) os << '/' << q.denominator();
  return os.str();
}

inline std::string to_string(const Weight& w) {
  std::string s = "(";
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k) s += ',';
    s += to_string(w[k]);
  }
  return s + ")";
}

inline double to_double(const Q& q) {
  return static_cast<double>(q.numerator()) / static_cast<double>(q.denominator());
}

}  // namespace ccl
