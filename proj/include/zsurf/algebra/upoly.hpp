#pragma once

// Dense univariate polynomials over a field K, lowest degree first.

#include <zsurf/algebra/rat.hpp>

#include <cstddef>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace zsurf {

template <class K>
class Poly {
 public:
  Poly() : zero_(K{}) {}
  explicit Poly(const K& zero_elem) : zero_(zero_like(zero_elem)) {}
  Poly(std::vector<K> coeffs, const K& zero_elem) : c_(std::move(coeffs)), zero_(zero_like(zero_elem)) { trim(); }
  explicit Poly(std::vector<K> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) throw AlgebraError("Poly: empty coefficient list needs a zero element");
    zero_ = zero_like(c_.front());
    trim();
  }

  static Poly constant(const K& a) { return Poly(std::vector<K>{a}); }
  static Poly monomial(const K& a, std::size_t e) {
    std::vector<K> c(e + 1, zero_like(a));
    c[e] = a;
    return Poly(std::move(c));
  }
  static Poly x(const K& like) { return monomial(one_like(like), 1); }
  static Poly constant_from(const K& a, const Poly&) { return constant(a); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const K& zero_elem() const { return zero_; }
  K coeff(int i) const { return (i < 0 || i > degree()) ? zero_ : c_[static_cast<std::size_t>(i)]; }
  const K& lead() const {
    if (c_.empty()) throw AlgebraError("lead of zero polynomial");
    return c_.back();
  }
  const std::vector<K>& coeffs() const { return c_; }
  void set_coeff(int i, const K& a) {
    if (i < 0) throw AlgebraError("negative exponent");
    if (static_cast<std::size_t>(i) >= c_.size()) c_.resize(static_cast<std::size_t>(i) + 1, zero_);
    c_[static_cast<std::size_t>(i)] = a;
    trim();
  }
  bool is_constant() const { return degree() <= 0; }
  bool is_monic() const { return !c_.empty() && c_.back() == one_like(zero_); }

  template <class V>
  V eval(const V& v) const {
    if (c_.empty()) return zero_like(v);
    V acc = lift(c_.back(), v);
    for (int i = degree() - 1; i >= 0; --i) acc = acc * v + lift(c_[static_cast<std::size_t>(i)], v);
    return acc;
  }
  K operator()(const K& v) const { return eval<K>(v); }

  Poly operator-() const {
    Poly r = *this;
    for (auto& a : r.c_) a = -a;
    return r;
  }
  Poly& operator+=(const Poly& o) {
    adopt(o);
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), zero_);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] + o.c_[i];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    adopt(o);
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), zero_);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] - o.c_[i];
    trim();
    return *this;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.c_.empty() || b.c_.empty()) return Poly(a.c_.empty() ? b.zero_ : a.zero_).adopted(a, b);
    std::vector<K> r(a.c_.size() + b.c_.size() - 1, a.zero_);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (zsurf::is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
    }
    return Poly(std::move(r), a.zero_);
  }
  friend Poly operator*(const K& s, const Poly& a) {
    Poly r = a;
    for (auto& c : r.c_) c = s * c;
    r.trim();
    return r;
  }
  friend Poly operator*(const Poly& a, const K& s) { return s * a; }
  friend Poly operator*(long s, const Poly& a) { return int_like(a.zero_, s) * a; }
  friend Poly operator+(const Poly& a, long s) { return a + Poly::constant(int_like(a.zero_, s)); }
  friend Poly operator-(const Poly& a, long s) { return a - Poly::constant(int_like(a.zero_, s)); }
  friend Poly operator+(const Poly& a, const K& s) { return a + Poly::constant(s); }
  friend Poly operator-(const Poly& a, const K& s) { return a - Poly::constant(s); }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  /// Euclidean division; throws on division by zero.
  static void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
    if (b.is_zero()) throw AlgebraError("polynomial division by zero");
    K z = a.c_.empty() ? b.zero_ : a.zero_;
    r = a;
    r.zero_ = z;
    q = Poly(z);
    if (a.degree() < b.degree()) return;
    std::vector<K> qc(static_cast<std::size_t>(a.degree() - b.degree() + 1), z);
    K inv_lead = one_like(z) / b.lead();
    std::vector<K>& rc = r.c_;
    for (int i = a.degree(); i >= b.degree(); --i) {
      const K& top = rc[static_cast<std::size_t>(i)];
      if (zsurf::is_zero(top)) continue;
      K f = top * inv_lead;
      qc[static_cast<std::size_t>(i - b.degree())] = f;
      for (int j = 0; j <= b.degree(); ++j) {
        auto idx = static_cast<std::size_t>(i - b.degree() + j);
        rc[idx] = rc[idx] - f * b.c_[static_cast<std::size_t>(j)];
      }
    }
    r.trim();
    q = Poly(std::move(qc), z);
  }
  friend Poly operator/(const Poly& a, const Poly& b) {
    Poly q, r;
    divmod(a, b, q, r);
    return q;
  }
  friend Poly operator%(const Poly& a, const Poly& b) {
    Poly q, r;
    divmod(a, b, q, r);
    return r;
  }
  /// Exact division, throwing when b does not divide a.
  Poly exact_div(const Poly& b) const {
    Poly q, r;
    divmod(*this, b, q, r);
    if (!r.is_zero()) throw AlgebraError("exact_div: not divisible");
    return q;
  }
  bool divides(const Poly& a) const { return (a % *this).is_zero(); }

  Poly monic() const {
    if (c_.empty()) return *this;
    return (one_like(zero_) / lead()) * *this;
  }
  Poly derivative() const {
    if (degree() <= 0) return Poly(zero_);
    std::vector<K> r(c_.size() - 1, zero_);
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = int_like(zero_, static_cast<long>(i)) * c_[i];
    return Poly(std::move(r), zero_);
  }
  Poly pow(unsigned e) const {
    Poly acc = Poly::constant(one_like(zero_)), b = *this;
    while (e) {
      if (e & 1) acc = acc * b;
      e >>= 1;
      if (e) b = b * b;
    }
    return acc;
  }
  /// this(g(x))
  Poly compose(const Poly& g) const {
    Poly acc(zero_);
    for (int i = degree(); i >= 0; --i) acc = acc * g + Poly::constant(c_[static_cast<std::size_t>(i)]);
    return acc;
  }
  /// x^deg * this(1/x) padded to degree n.
  Poly reverse(int n) const {
    std::vector<K> r(static_cast<std::size_t>(n + 1), zero_);
    for (int i = 0; i <= degree() && i <= n; ++i) r[static_cast<std::size_t>(n - i)] = c_[static_cast<std::size_t>(i)];
    return Poly(std::move(r), zero_);
  }
  /// Multiplicity of the (nonconstant) factor pi in this (this != 0).
  int valuation(const Poly& pi) const {
    if (is_zero()) throw AlgebraError("valuation of zero polynomial");
    int v = 0;
    Poly cur = *this, q, r;
    for (;;) {
      divmod(cur, pi, q, r);
      if (!r.is_zero()) return v;
      cur = q;
      ++v;
    }
  }
  int low_order() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!zsurf::is_zero(c_[i])) return static_cast<int>(i);
    return -1;
  }
  Poly shift_down(int k) const {
    if (k <= 0) return *this;
    if (k > degree()) return Poly(zero_);
    return Poly(std::vector<K>(c_.begin() + k, c_.end()), zero_);
  }

  std::string str(const std::string& var = "x") const;

 private:
  template <class V>
  static V lift(const K& a, const V& like) {
    if constexpr (std::is_same_v<V, K>) {
      (void)like;
      return a;
    } else {
      return V::constant_from(a, like);
    }
  }
  void trim() {
    while (!c_.empty() && zsurf::is_zero(c_.back())) c_.pop_back();
  }
  void adopt(const Poly& o) {
    if (c_.empty() && !o.c_.empty()) zero_ = o.zero_;
  }
  Poly adopted(const Poly& a, const Poly& b) {
    zero_ = a.c_.empty() ? b.zero_ : a.zero_;
    return *this;
  }

  std::vector<K> c_;
  K zero_;
};

template <class K>
Poly<K> poly_gcd(Poly<K> a, Poly<K> b) {
  while (!b.is_zero()) {
    Poly<K> r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// Extended gcd: s*a + t*b = g, g monic.
template <class K>
Poly<K> poly_xgcd(const Poly<K>& a, const Poly<K>& b, Poly<K>& s, Poly<K>& t) {
  K z = a.is_zero() ? b.zero_elem() : a.zero_elem();
  Poly<K> r0 = a, r1 = b, s0 = Poly<K>::constant(one_like(z)), s1(z), t0(z), t1 = Poly<K>::constant(one_like(z));
  while (!r1.is_zero()) {
    Poly<K> q, r;
    Poly<K>::divmod(r0, r1, q, r);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly<K> s2 = s0 - q * s1, t2 = t0 - q * t1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) {
    s = s0;
    t = t0;
    return r0;
  }
  K inv = one_like(z) / r0.lead();
  s = inv * s0;
  t = inv * t0;
  return inv * r0;
}

/// Inverse of a modulo m (gcd must be 1).
template <class K>
Poly<K> poly_inverse_mod(const Poly<K>& a, const Poly<K>& m) {
  Poly<K> s, t;
  Poly<K> g = poly_xgcd(a % m, m, s, t);
  if (g.degree() != 0) throw AlgebraError("poly_inverse_mod: not invertible");
  return s % m;
}

/// a^e mod m.
template <class K, class E>
Poly<K> poly_powmod(Poly<K> a, E e, const Poly<K>& m) {
  Poly<K> acc = Poly<K>::constant(one_like(m.zero_elem())) % m;
  a = a % m;
  while (e > 0) {
    if (e % 2 == 1) acc = (acc * a) % m;
    e /= 2;
    if (e > 0) a = (a * a) % m;
  }
  return acc;
}

/// Resultant over a field via the Euclidean algorithm.
template <class K>
K poly_resultant(Poly<K> a, Poly<K> b) {
  K z = a.is_zero() ? b.zero_elem() : a.zero_elem();
  if (a.is_zero() || b.is_zero()) return z;
  K res = one_like(z);
  for (;;) {
    int da = a.degree(), db = b.degree();
    if (db == 0) return res * power(b.lead(), static_cast<std::uint64_t>(da));
    if (da == 0) return res * power(a.lead(), static_cast<std::uint64_t>(db));
    if (da < db) {
      std::swap(a, b);
      if ((da * db) % 2) res = -res;
      continue;
    }
    Poly<K> r = a % b;
    if (r.is_zero()) return z;
    int dr = r.degree();
    // res(a,b) = (-1)^{da db} lc(b)^{da-dr} res(b, r)
    res = res * power(b.lead(), static_cast<std::uint64_t>(da - dr));
    if ((da * db) % 2) res = -res;
    a = std::move(b);
    b = std::move(r);
  }
}

template <class K>
K poly_discriminant(const Poly<K>& f) {
  int n = f.degree();
  K r = poly_resultant(f, f.derivative());
  K s = r / f.lead();
  if ((n * (n - 1) / 2) % 2) s = -s;
  return s;
}

/// Squarefree decomposition: f = lead * prod_i g_i^i with g_i squarefree and
/// pairwise coprime.  Handles characteristic p through p-th roots, where
/// p_root(a) returns the p-th root of a coefficient.
template <class K, class PRoot>
std::vector<std::pair<Poly<K>, int>> squarefree_decomposition(const Poly<K>& f, PRoot p_root) {
  std::vector<std::pair<Poly<K>, int>> out;
  if (f.degree() <= 0) return out;
  long p = characteristic(f.zero_elem());
  Poly<K> fm = f.monic();
  Poly<K> d = fm.derivative();
  if (d.is_zero()) {
    // f = g(x^p)
    std::vector<K> c;
    for (int i = 0; i <= fm.degree(); i += static_cast<int>(p)) c.push_back(p_root(fm.coeff(i)));
    for (auto& [g, e] : squarefree_decomposition(Poly<K>(std::move(c)), p_root)) out.push_back({g, e * static_cast<int>(p)});
    return out;
  }
  Poly<K> c = poly_gcd(fm, d);
  Poly<K> w = fm.exact_div(c);
  int i = 1;
  while (w.degree() > 0) {
    Poly<K> y = poly_gcd(w, c);
    Poly<K> z = w.exact_div(y);
    if (z.degree() > 0) out.push_back({z, i});
    ++i;
    w = y;
    c = c.exact_div(y);
  }
  if (c.degree() > 0) {
    // remaining factor is a p-th power
    std::vector<K> cc;
    for (int k = 0; k <= c.degree(); k += static_cast<int>(p)) cc.push_back(p_root(c.coeff(k)));
    for (auto& [g, e] : squarefree_decomposition(Poly<K>(std::move(cc)), p_root)) out.push_back({g, e * static_cast<int>(p)});
  }
  // merge equal multiplicities that may arise from the p-th power branch
  std::vector<std::pair<Poly<K>, int>> merged;
  for (auto& [g, e] : out) {
    bool found = false;
    for (auto& [h, eh] : merged)
      if (eh == e) {
        h = h * g;
        found = true;
        break;
      }
    if (!found) merged.push_back({g, e});
  }
  return merged;
}

template <class K>
std::vector<std::pair<Poly<K>, int>> squarefree_decomposition(const Poly<K>& f) {
  return squarefree_decomposition(f, [](const K& a) { return a; });
}

template <class K>
Poly<K> squarefree_part(const Poly<K>& f) {
  if (f.degree() <= 0) return Poly<K>::constant(one_like(f.zero_elem()));
  return f.monic().exact_div(poly_gcd(f, f.derivative()));
}

namespace detail {
template <class K>
std::string coeff_str(const K& a) {
  return field_traits<K>::str(a);
}
}  // namespace detail

/// Canonical text form: terms by descending degree, coefficients as p/q.
template <class K>
std::string Poly<K>::str(const std::string& var) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const K& a = c_[static_cast<std::size_t>(i)];
    if (zsurf::is_zero(a)) continue;
    std::string s = detail::coeff_str(a);
    bool neg = !s.empty() && s[0] == '-' && s.find_first_of("+ ", 1) == std::string::npos;
    if (neg) s = s.substr(1);
    bool compound = s.find_first_of("+-", 0) != std::string::npos || s.find('*') != std::string::npos;
    if (compound) s = "(" + s + ")";
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    if (i == 0) {
      os << s;
      continue;
    }
    if (s != "1") os << s << "*";
    os << var;
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

using QPoly = Poly<Rat>;

inline QPoly qpoly(std::initializer_list<long> coeffs_low_first) {
  std::vector<Rat> c;
  for (long v : coeffs_low_first) c.emplace_back(v);
  return QPoly(std::move(c), Rat(0));
}

inline QPoly qx() { return QPoly::x(Rat(0)); }

}  // namespace zsurf
