#pragma once

// Sparse multivariate polynomials over Q in at most eight variables.

#include <zsurf/algebra/upoly.hpp>

#include <array>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace zsurf {

constexpr int kMaxVars = 8;

using Exponent = std::array<std::uint16_t, kMaxVars>;

/// Graded-lex order: total degree first, then lexicographic on exponents.
struct GrlexLess {
  bool operator()(const Exponent& a, const Exponent& b) const {
    int da = 0, db = 0;
    for (int i = 0; i < kMaxVars; ++i) {
      da += a[i];
      db += b[i];
    }
    if (da != db) return da < db;
    for (int i = 0; i < kMaxVars; ++i)
      if (a[i] != b[i]) return a[i] < b[i];
    return false;
  }
};

class MPoly {
 public:
  using Terms = std::map<Exponent, Rat, GrlexLess>;

  explicit MPoly(int nvars = 1) : n_(nvars) {
    if (nvars < 1 || nvars > kMaxVars) throw AlgebraError("MPoly: arity must be 1..8");
  }
  static MPoly constant(int nvars, const Rat& c) {
    MPoly p(nvars);
    if (sgn(c) != 0) p.t_[Exponent{}] = c;
    return p;
  }
  static MPoly var(int nvars, int i) {
    MPoly p(nvars);
    Exponent e{};
    e[static_cast<std::size_t>(i)] = 1;
    p.t_[e] = Rat(1);
    return p;
  }
  static MPoly monomial(int nvars, const Rat& c, std::initializer_list<int> exps) {
    MPoly p(nvars);
    Exponent e{};
    int i = 0;
    for (int v : exps) e[static_cast<std::size_t>(i++)] = static_cast<std::uint16_t>(v);
    if (sgn(c) != 0) p.t_[e] = c;
    return p;
  }

  int nvars() const { return n_; }
  const Terms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  int total_degree() const {
    int d = -1;
    for (auto& [e, c] : t_) {
      int s = 0;
      for (int i = 0; i < n_; ++i) s += e[static_cast<std::size_t>(i)];
      d = std::max(d, s);
    }
    return d;
  }
  int degree_in(int var) const {
    int d = -1;
    for (auto& [e, c] : t_) d = std::max(d, static_cast<int>(e[static_cast<std::size_t>(var)]));
    return d;
  }
  bool is_homogeneous() const {
    int d = -2;
    for (auto& [e, c] : t_) {
      int s = 0;
      for (int i = 0; i < n_; ++i) s += e[static_cast<std::size_t>(i)];
      if (d == -2) d = s;
      if (s != d) return false;
    }
    return true;
  }
  Rat coeff(const Exponent& e) const {
    auto it = t_.find(e);
    return it == t_.end() ? Rat(0) : it->second;
  }

  MPoly operator-() const {
    MPoly r = *this;
    for (auto& [e, c] : r.t_) c = -c;
    return r;
  }
  MPoly& operator+=(const MPoly& o) {
    check(o);
    for (auto& [e, c] : o.t_) add_term(e, c);
    return *this;
  }
  MPoly& operator-=(const MPoly& o) {
    check(o);
    for (auto& [e, c] : o.t_) add_term(e, -c);
    return *this;
  }
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(const MPoly& a, const MPoly& b) {
    a.check(b);
    MPoly r(a.n_);
    for (auto& [ea, ca] : a.t_)
      for (auto& [eb, cb] : b.t_) {
        Exponent e;
        for (int i = 0; i < kMaxVars; ++i) e[static_cast<std::size_t>(i)] = static_cast<std::uint16_t>(ea[static_cast<std::size_t>(i)] + eb[static_cast<std::size_t>(i)]);
        Rat c = ca * cb;
        r.add_term(e, c);
      }
    return r;
  }
  friend MPoly operator*(const Rat& s, const MPoly& a) {
    MPoly r(a.n_);
    if (sgn(s) == 0) return r;
    for (auto& [e, c] : a.t_) r.t_[e] = s * c;
    return r;
  }
  friend MPoly operator*(long s, const MPoly& a) { return Rat(s) * a; }
  friend MPoly operator*(const MPoly& a, const Rat& s) { return s * a; }
  friend MPoly operator+(const MPoly& a, const Rat& s) { return a + constant(a.n_, s); }
  friend MPoly operator-(const MPoly& a, const Rat& s) { return a - constant(a.n_, s); }
  friend bool operator==(const MPoly& a, const MPoly& b) { return a.n_ == b.n_ && a.t_ == b.t_; }
  friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }

  MPoly pow(unsigned k) const {
    MPoly acc = constant(n_, Rat(1)), b = *this;
    while (k) {
      if (k & 1) acc = acc * b;
      k >>= 1;
      if (k) b = b * b;
    }
    return acc;
  }

  MPoly derivative(int var) const {
    MPoly r(n_);
    auto v = static_cast<std::size_t>(var);
    for (auto& [e, c] : t_) {
      if (e[v] == 0) continue;
      Exponent f = e;
      Rat k = c * Rat(static_cast<long>(e[v]));
      f[v] = static_cast<std::uint16_t>(f[v] - 1);
      r.add_term(f, k);
    }
    return r;
  }

  template <class V>
  V eval(const std::vector<V>& x) const {
    if (static_cast<int>(x.size()) != n_) throw AlgebraError("MPoly::eval arity mismatch");
    V acc = zero_like(x[0]);
    for (auto& [e, c] : t_) {
      V term = int_like(x[0], 1) * lift(c, x[0]);
      for (int i = 0; i < n_; ++i)
        if (e[static_cast<std::size_t>(i)]) term = term * power(x[static_cast<std::size_t>(i)], e[static_cast<std::size_t>(i)]);
      acc = acc + term;
    }
    return acc;
  }

  /// Substitutes polynomials (possibly in a different arity) for each variable.
  MPoly substitute(const std::vector<MPoly>& images) const {
    if (static_cast<int>(images.size()) != n_) throw AlgebraError("MPoly::substitute arity mismatch");
    int m = images[0].n_;
    MPoly acc(m);
    std::vector<std::vector<MPoly>> powers(static_cast<std::size_t>(n_));
    for (auto& [e, c] : t_) {
      MPoly term = constant(m, c);
      for (int i = 0; i < n_; ++i) {
        unsigned k = e[static_cast<std::size_t>(i)];
        if (!k) continue;
        auto& pw = powers[static_cast<std::size_t>(i)];
        if (pw.empty()) pw.push_back(constant(m, Rat(1)));
        while (pw.size() <= k) pw.push_back(pw.back() * images[static_cast<std::size_t>(i)]);
        term = term * pw[k];
      }
      acc += term;
    }
    return acc;
  }

  /// Restriction to a univariate polynomial in variable `var` after fixing the others.
  QPoly to_univariate(int var, const std::vector<Rat>& values) const {
    std::vector<Rat> c;
    for (auto& [e, co] : t_) {
      Rat term = co;
      for (int i = 0; i < n_; ++i)
        if (i != var && e[static_cast<std::size_t>(i)]) term *= power(values[static_cast<std::size_t>(i)], e[static_cast<std::size_t>(i)]);
      std::size_t k = e[static_cast<std::size_t>(var)];
      if (c.size() <= k) c.resize(k + 1, Rat(0));
      c[k] += term;
    }
    return QPoly(std::move(c), Rat(0));
  }

  /// Canonical text: terms in descending graded-lex order, coefficients p/q.
  std::string str(const std::vector<std::string>& names = {}) const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
      const Rat& c = it->second;
      bool neg = sgn(c) < 0;
      Rat a = neg ? Rat(-c) : c;
      os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
      first = false;
      std::string mono;
      for (int i = 0; i < n_; ++i) {
        unsigned k = it->first[static_cast<std::size_t>(i)];
        if (!k) continue;
        if (!mono.empty()) mono += "*";
        mono += names.empty() ? ("x" + std::to_string(i + 1)) : names[static_cast<std::size_t>(i)];
        if (k > 1) mono += "^" + std::to_string(k);
      }
      if (mono.empty())
        os << to_string(a);
      else if (a == 1)
        os << mono;
      else
        os << to_string(a) << "*" << mono;
    }
    return os.str();
  }

 private:
  template <class V>
  static V lift(const Rat& c, const V& like) {
    if constexpr (std::is_same_v<V, Rat>) {
      (void)like;
      return c;
    } else {
      return V::from_rat(c, like);
    }
  }
  void check(const MPoly& o) const {
    if (o.n_ != n_) throw AlgebraError("MPoly arity mismatch");
  }
  void add_term(const Exponent& e, const Rat& c) {
    if (sgn(c) == 0) return;
    auto [it, inserted] = t_.emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (sgn(it->second) == 0) t_.erase(it);
    }
  }

  int n_;
  Terms t_;
};

}  // namespace zsurf
