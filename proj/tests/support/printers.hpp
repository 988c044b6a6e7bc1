#pragma once

#include <ostream>

#include "credal/credal_set.hpp"
#include "credal/problem_file.hpp"

// gtest value printers for library types.
namespace credal {

inline void PrintTo(const RandomizedAction& a, std::ostream* os) { *os << format_action(a); }

inline void PrintTo(const DecisionRule& rule, std::ostream* os) {
  for (std::size_t x = 0; x < rule.size(); ++x) *os << (x == 0 ? "" : ", ") << x << "→" << format_action(rule[x]);
}

inline void PrintTo(const Partition& c, std::ostream* os) {
  for (std::size_t i = 0; i < c.cells().size(); ++i) {
    *os << (i == 0 ? "{" : "|{");
    for (std::size_t k = 0; k < c.cells()[i].size(); ++k) *os << (k == 0 ? "" : ",") << c.cells()[i][k];
    *os << "}";
  }
}

}  // namespace credal
