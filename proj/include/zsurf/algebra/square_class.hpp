#pragma once

// Square classes in Q^x / (Q^x)^2, represented by signed squarefree integers.

#include <zsurf/algebra/rat.hpp>

#include <string>

namespace zsurf {

struct SquareClass {
  Int rep{1};

  friend bool operator==(const SquareClass& a, const SquareClass& b) { return a.rep == b.rep; }
  friend bool operator!=(const SquareClass& a, const SquareClass& b) { return a.rep != b.rep; }
  SquareClass abs() const { return SquareClass{rep < 0 ? Int(-rep) : rep}; }
  friend SquareClass operator*(const SquareClass& a, const SquareClass& b);

  /// Prime factorisation as text, e.g. "2*7*11*13", "-3", "1".
  std::string factored() const {
    if (rep == 1) return "1";
    if (rep == -1) return "-1";
    std::string s = rep < 0 ? "-" : "";
    bool first = true;
    for (auto& [p, e] : factor_integer(rep)) {
      if (!first) s += "*";
      s += to_string(p);
      first = false;
    }
    return s;
  }
};

inline SquareClass square_class(const Rat& q) {
  if (sgn(q) == 0) throw AlgebraError("square_class of zero");
  Int n = q.get_num() * q.get_den();
  return SquareClass{squarefree_kernel(n)};
}

inline SquareClass operator*(const SquareClass& a, const SquareClass& b) { return square_class(Rat(a.rep * b.rep)); }

}  // namespace zsurf
