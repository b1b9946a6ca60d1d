#pragma once

// Rational quadratic forms of rank <= 4: Hilbert symbols, local isotropy and
// the Hasse-Minkowski test over Q.

#include <zsurf/algebra/rat.hpp>
#include <zsurf/algebra/square_class.hpp>

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace zsurf {

/// A place of Q: a prime p, or infinity encoded as p = 0.
struct QPlace {
  Int p{0};
  bool infinite() const { return p == 0; }
  std::string str() const { return infinite() ? "inf" : to_string(p); }
  friend bool operator==(const QPlace& a, const QPlace& b) { return a.p == b.p; }
};

inline QPlace place_infinity() { return QPlace{Int(0)}; }
inline QPlace place_prime(long p) { return QPlace{Int(p)}; }

/// Symmetric Gram matrix; the form is x^T G x.
class QForm {
 public:
  QForm() = default;
  explicit QForm(std::vector<std::vector<Rat>> gram) : g_(std::move(gram)) {
    std::size_t n = g_.size();
    if (n < 1 || n > 4) throw AlgebraError("QForm: dimension must be 1..4");
    for (auto& row : g_)
      if (row.size() != n) throw AlgebraError("QForm: gram must be square");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (g_[i][j] != g_[j][i]) throw AlgebraError("QForm: gram must be symmetric");
  }
  static QForm diagonal(const std::vector<Rat>& d) {
    std::vector<std::vector<Rat>> g(d.size(), std::vector<Rat>(d.size(), Rat(0)));
    for (std::size_t i = 0; i < d.size(); ++i) g[i][i] = d[i];
    return QForm(std::move(g));
  }
  /// c * (a x^2 + b x y + e y^2).
  static QForm binary(const Rat& c, const Rat& a, const Rat& b, const Rat& e) {
    return QForm({{c * a, c * b / 2}, {c * b / 2, c * e}});
  }

  int dim() const { return static_cast<int>(g_.size()); }
  const std::vector<std::vector<Rat>>& gram() const { return g_; }
  const Rat& at(int i, int j) const { return g_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
  QForm scaled(const Rat& s) const {
    auto g = g_;
    for (auto& row : g)
      for (auto& v : row) v *= s;
    return QForm(std::move(g));
  }
  /// Orthogonal difference f - h on the direct sum.
  QForm minus(const QForm& h) const {
    std::size_t n = g_.size(), m = h.g_.size();
    std::vector<std::vector<Rat>> g(n + m, std::vector<Rat>(n + m, Rat(0)));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) g[i][j] = g_[i][j];
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) g[n + i][n + j] = -h.g_[i][j];
    return QForm(std::move(g));
  }
  Rat determinant() const {
    auto a = g_;
    std::size_t n = a.size();
    Rat det(1);
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t piv = c;
      while (piv < n && sgn(a[piv][c]) == 0) ++piv;
      if (piv == n) return Rat(0);
      if (piv != c) {
        std::swap(a[piv], a[c]);
        det = -det;
      }
      det *= a[c][c];
      for (std::size_t r = c + 1; r < n; ++r) {
        Rat f = a[r][c] / a[c][c];
        for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      }
    }
    return det;
  }
  /// Values of the form on integer vectors.
  Rat value(const std::vector<Rat>& x) const {
    Rat s(0);
    for (std::size_t i = 0; i < g_.size(); ++i)
      for (std::size_t j = 0; j < g_.size(); ++j) s += x[i] * g_[i][j] * x[j];
    return s;
  }
  /// Diagonal entries of an equivalent diagonal form (symmetric elimination).
  std::vector<Rat> diagonalize() const {
    auto a = g_;
    std::size_t n = a.size();
    std::vector<Rat> d;
    for (std::size_t c = 0; c < n; ++c) {
      if (sgn(a[c][c]) == 0) {
        std::size_t j = c + 1;
        while (j < n && sgn(a[j][j]) == 0) ++j;
        if (j < n) {
          std::swap(a[c], a[j]);
          for (auto& row : a) std::swap(row[c], row[j]);
        } else {
          // all remaining diagonal entries vanish: add a row with a nonzero off-diagonal entry
          std::size_t k = c + 1;
          while (k < n && sgn(a[c][k]) == 0) ++k;
          if (k == n) throw AlgebraError("QForm: degenerate form");
          for (std::size_t t = 0; t < n; ++t) a[c][t] += a[k][t];
          for (std::size_t t = 0; t < n; ++t) a[t][c] += a[t][k];
        }
      }
      Rat piv = a[c][c];
      d.push_back(piv);
      for (std::size_t r = c + 1; r < n; ++r) {
        Rat f = a[r][c] / piv;
        for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
        for (std::size_t k = c; k < n; ++k) a[k][r] = a[r][k];
      }
    }
    return d;
  }
  std::string str() const {
    std::string s = "[";
    for (std::size_t i = 0; i < g_.size(); ++i) {
      s += (i ? ", [" : "[");
      for (std::size_t j = 0; j < g_.size(); ++j) s += (j ? ", " : "") + to_string(g_[i][j]);
      s += "]";
    }
    return s + "]";
  }

 private:
  std::vector<std::vector<Rat>> g_;
};

namespace detail {

inline int legendre(const Int& a, const Int& p) { return mpz_legendre(a.get_mpz_t(), p.get_mpz_t()); }

/// Writes a nonzero integer as p^v * u with u a p-adic unit.
inline int split_val(Int a, const Int& p, Int& u) {
  int v = 0;
  while (a % p == 0) {
    a /= p;
    ++v;
  }
  u = a;
  return v;
}

inline Int rat_to_int_class(const Rat& q) { return q.get_num() * q.get_den(); }

}  // namespace detail

/// (a, b)_v: +1 iff z^2 = a x^2 + b y^2 has a nontrivial solution over Q_v.
inline int hilbert_symbol(const Rat& a, const Rat& b, const QPlace& v) {
  if (sgn(a) == 0 || sgn(b) == 0) throw AlgebraError("hilbert_symbol: zero argument");
  if (v.infinite()) return (sgn(a) < 0 && sgn(b) < 0) ? -1 : 1;
  // multiplying by squares does not change the symbol
  Int A = detail::rat_to_int_class(a), B = detail::rat_to_int_class(b);
  const Int& p = v.p;
  Int u, w;
  int alpha = detail::split_val(A, p, u), beta = detail::split_val(B, p, w);
  if (p == 2) {
    auto eps = [](const Int& x) { return static_cast<int>(mod_long(x, 4) == 3); };
    auto omega = [](const Int& x) {
      long r = mod_long(x, 8);
      return static_cast<int>(r == 3 || r == 5);
    };
    int e = eps(u) * eps(w) + alpha * omega(w) + beta * omega(u);
    return (e % 2) ? -1 : 1;
  }
  int s = 1;
  if ((alpha % 2) && (beta % 2) && mod_long(p, 4) == 3) s = -s;
  if (beta % 2) s *= detail::legendre(u, p);
  if (alpha % 2) s *= detail::legendre(w, p);
  return s;
}

/// Whether q is a square in Q_v.
inline bool is_local_square(const Rat& q, const QPlace& v) {
  if (v.infinite()) return sgn(q) > 0;
  Int A = detail::rat_to_int_class(q), u;
  int k = detail::split_val(A, v.p, u);
  if (k % 2) return false;
  if (v.p == 2) return mod_long(u, 8) == 1;
  return detail::legendre(u, v.p) == 1;
}

/// Local isotropy of the diagonal form <d_1, ..., d_n> over Q_v.
inline bool is_isotropic_local(const std::vector<Rat>& diag, const QPlace& v) {
  std::size_t n = diag.size();
  if (v.infinite()) {
    bool pos = false, neg = false;
    for (auto& x : diag) (sgn(x) > 0 ? pos : neg) = true;
    return pos && neg;
  }
  Rat d(1);
  for (auto& x : diag) d *= x;
  int eps = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) eps *= hilbert_symbol(diag[i], diag[j], v);
  switch (n) {
    case 1:
      return false;
    case 2:
      return is_local_square(-d, v);
    case 3:
      return hilbert_symbol(Rat(-1), -d, v) == eps;
    case 4:
      return !is_local_square(d, v) || eps == hilbert_symbol(Rat(-1), Rat(-1), v);
    default:
      throw AlgebraError("is_isotropic_local: rank must be 1..4");
  }
}

struct IsotropyResult {
  bool isotropic = true;
  std::optional<QPlace> witness;       // first place where local solubility fails
  std::vector<QPlace> failing_places;  // every failing place among those checked
};

/// The places at which local isotropy is checked: infinity, 2, and every
/// prime dividing a numerator or denominator of the diagonal entries.
inline std::vector<QPlace> relevant_places(const std::vector<Rat>& diag) {
  std::set<Int> primes{Int(2)};
  for (auto& x : diag) {
    Int n = detail::rat_to_int_class(x);
    for (auto& [p, e] : factor_integer(n)) primes.insert(p);
  }
  std::vector<QPlace> out{place_infinity()};
  for (auto& p : primes) out.push_back(QPlace{p});
  return out;
}

/// Hasse-Minkowski: isotropic over Q iff isotropic at every place.
inline IsotropyResult is_isotropic_over_Q(const QForm& f) {
  if (sgn(f.determinant()) == 0) throw AlgebraError("is_isotropic_over_Q: degenerate form");
  std::vector<Rat> diag = f.diagonalize();
  IsotropyResult res;
  for (auto& v : relevant_places(diag)) {
    if (!is_isotropic_local(diag, v)) {
      res.isotropic = false;
      res.failing_places.push_back(v);
      if (!res.witness) res.witness = v;
    }
  }
  return res;
}

}  // namespace zsurf
