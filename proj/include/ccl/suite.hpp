#pragma once

// The desk-scale suite of (type, highest weight) pairs used by tests and the verify verb.

#include "ccl/rational.hpp"

#include <string>
#include <utility>
#include <vector>

namespace ccl {

struct SuiteEntry {
  std::string type;
  std::vector<int> lambda;
};

inline std::vector<SuiteEntry> desk_suite() {
  std::vector<SuiteEntry> s;
  for (int m = 0; m <= 6; ++m) s.push_back({"A1", {m}});
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; b <= 2; ++b) s.push_back({"A2", {a, b}});
  s.push_back({"A3", {1, 0, 0}});
  s.push_back({"A3", {0, 1, 0}});
  s.push_back({"A3", {1, 0, 1}});
  s.push_back({"B2", {1, 0}});
  s.push_back({"B2", {0, 1}});
  s.push_back({"B2", {1, 1}});
  s.push_back({"G2", {1, 0}});
  return s;
}

}  // namespace ccl
