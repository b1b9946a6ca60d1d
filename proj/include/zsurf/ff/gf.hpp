#pragma once

// Finite fields F_q, q = p^r with p >= 5 (odd p >= 3 accepted) and q < 2^32.
//
// An element is encoded as the integer sum c_i p^i of its coordinates in the
// power basis of the modulus, so iterating 0..q-1 walks the coordinate vectors
// in lexicographic order (most significant coordinate first).  Fields up to
// kTableLimit elements carry log/antilog/Zech tables; larger ones fall back to
// polynomial arithmetic on the coordinates.

#include <zsurf/algebra/rat.hpp>

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace zsurf {

constexpr std::uint64_t kTableLimit = 1u << 21;
constexpr int kMaxExtDegree = 16;

class GFCtx {
 public:
  using Elt = std::uint32_t;

  /// Field with the given monic modulus (lowest coefficient first).  The
  /// modulus must be irreducible; this is not re-checked here.
  GFCtx(std::uint32_t p, std::vector<std::uint32_t> modulus) : p_(p), mod_(std::move(modulus)) {
    if (p < 3 || !is_prime_u64(p)) throw AlgebraError("GFCtx: p must be an odd prime");
    r_ = static_cast<int>(mod_.size()) - 1;
    if (r_ < 1 || r_ > kMaxExtDegree) throw AlgebraError("GFCtx: degree out of range");
    if (mod_.back() != 1) throw AlgebraError("GFCtx: modulus must be monic");
    q_ = 1;
    for (int i = 0; i < r_; ++i) {
      q_ *= p_;
      if (q_ > 0xFFFFFFFFull) throw AlgebraError("GFCtx: field too large");
    }
    pw_.resize(static_cast<std::size_t>(r_) + 1);
    pw_[0] = 1;
    for (int i = 1; i <= r_; ++i) pw_[static_cast<std::size_t>(i)] = pw_[static_cast<std::size_t>(i) - 1] * p_;
    if (r_ == 1) {
      if (p_ < (1u << 16)) {
        sq_.assign(p_, 0);
        for (std::uint64_t x = 1; x < p_; ++x) sq_[static_cast<std::size_t>(x * x % p_)] = 1;
      }
    } else if (q_ <= kTableLimit) {
      build_tables();
    }
  }

  std::uint32_t p() const { return p_; }
  int degree() const { return r_; }
  std::uint64_t q() const { return q_; }
  const std::vector<std::uint32_t>& modulus() const { return mod_; }
  bool has_tables() const { return !exp_.empty(); }

  // --- coordinates ------------------------------------------------------
  std::uint32_t coord(Elt a, int i) const { return static_cast<std::uint32_t>((a / pw_[static_cast<std::size_t>(i)]) % p_); }
  Elt from_coords(const std::vector<std::uint32_t>& c) const {
    std::uint64_t v = 0;
    for (int i = r_ - 1; i >= 0; --i) v = v * p_ + (static_cast<std::size_t>(i) < c.size() ? c[static_cast<std::size_t>(i)] % p_ : 0);
    return static_cast<Elt>(v);
  }
  Elt from_int(long n) const {
    long m = n % static_cast<long>(p_);
    if (m < 0) m += p_;
    return static_cast<Elt>(m);
  }
  Elt from_rat(const Rat& x) const { return rat_mod_p(x, p_); }

  // --- arithmetic -------------------------------------------------------
  Elt add(Elt a, Elt b) const {
    if (r_ == 1) {
      std::uint32_t s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    if (has_tables()) {
      if (a == 0) return b;
      if (b == 0) return a;
      std::int32_t la = log_[a], lb = log_[b];
      if (la > lb) std::swap(la, lb);
      std::int32_t z = zech_[static_cast<std::size_t>(lb - la)];
      if (z < 0) return 0;
      return exp_[static_cast<std::size_t>(la + z)];
    }
    std::uint64_t v = 0;
    for (int i = r_ - 1; i >= 0; --i) {
      std::uint32_t s = coord(a, i) + coord(b, i);
      if (s >= p_) s -= p_;
      v = v * p_ + s;
    }
    return static_cast<Elt>(v);
  }
  Elt neg(Elt a) const {
    if (r_ == 1) return a == 0 ? 0 : p_ - a;
    std::uint64_t v = 0;
    for (int i = r_ - 1; i >= 0; --i) {
      std::uint32_t c = coord(a, i);
      v = v * p_ + (c == 0 ? 0 : p_ - c);
    }
    return static_cast<Elt>(v);
  }
  Elt sub(Elt a, Elt b) const { return add(a, neg(b)); }
  Elt mul(Elt a, Elt b) const {
    if (r_ == 1) return static_cast<Elt>(static_cast<std::uint64_t>(a) * b % p_);
    if (a == 0 || b == 0) return 0;
    if (has_tables()) return exp_[static_cast<std::size_t>(log_[a] + log_[b])];
    return poly_mul(a, b);
  }
  Elt pow(Elt a, std::uint64_t e) const {
    if (e == 0) return 1;
    if (a == 0) return 0;
    if (has_tables()) return exp_[static_cast<std::size_t>((static_cast<std::uint64_t>(log_[a]) * (e % (q_ - 1))) % (q_ - 1))];
    Elt acc = 1;
    while (e) {
      if (e & 1) acc = mul(acc, a);
      e >>= 1;
      if (e) a = mul(a, a);
    }
    return acc;
  }
  Elt inv(Elt a) const {
    if (a == 0) throw AlgebraError("GF: inverse of zero");
    if (has_tables()) return exp_[static_cast<std::size_t>((q_ - 1 - static_cast<std::uint64_t>(log_[a])) % (q_ - 1))];
    if (r_ == 1) {
      // extended Euclid on machine words
      std::int64_t t = 0, nt = 1, rr = p_, nr = a;
      while (nr) {
        std::int64_t qq = rr / nr;
        std::swap(t, nt);
        nt -= qq * t;
        std::swap(rr, nr);
        nr -= qq * rr;
      }
      if (t < 0) t += p_;
      return static_cast<Elt>(t);
    }
    return pow(a, q_ - 2);
  }
  Elt div(Elt a, Elt b) const { return mul(a, inv(b)); }
  Elt frobenius(Elt a) const { return pow(a, p_); }

  /// 0, +1 or -1 according as a is zero, a nonzero square, or a non-square.
  int chi(Elt a) const {
    if (a == 0) return 0;
    if (r_ == 1 && !sq_.empty()) return sq_[a] ? 1 : -1;
    if (has_tables()) return (log_[a] & 1) ? -1 : 1;
    return pow(a, (q_ - 1) / 2) == 1 ? 1 : -1;
  }

  /// A square root of a, normalised to the smaller encoding of the pair.
  std::optional<Elt> sqrt(Elt a) const {
    if (a == 0) return Elt(0);
    if (chi(a) != 1) return std::nullopt;
    Elt s;
    if (has_tables()) {
      s = exp_[static_cast<std::size_t>(log_[a] / 2)];
    } else {
      s = tonelli_shanks(a);
    }
    Elt t = neg(s);
    return std::min(s, t);
  }

  /// A generator of the multiplicative group (only with tables).
  Elt generator() const { return gen_; }
  std::int32_t log(Elt a) const { return log_[a]; }
  Elt exp(std::uint64_t k) const { return exp_[static_cast<std::size_t>(k % (q_ - 1))]; }

  std::string elem_str(Elt a) const {
    if (r_ == 1) return std::to_string(a);
    std::string s;
    for (int i = r_ - 1; i >= 0; --i) {
      std::uint32_t c = coord(a, i);
      if (!c) continue;
      if (!s.empty()) s += " + ";
      if (i == 0 || c != 1) s += std::to_string(c);
      if (i > 0) s += (c != 1 ? "*z" : "z") + (i > 1 ? "^" + std::to_string(i) : std::string());
    }
    return s.empty() ? "0" : s;
  }

 private:
  Elt poly_mul(Elt a, Elt b) const {
    std::array<std::uint64_t, 2 * kMaxExtDegree> t{};
    std::array<std::uint32_t, kMaxExtDegree> ca{}, cb{};
    for (int i = 0; i < r_; ++i) {
      ca[static_cast<std::size_t>(i)] = coord(a, i);
      cb[static_cast<std::size_t>(i)] = coord(b, i);
    }
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < r_; ++j) t[static_cast<std::size_t>(i + j)] = (t[static_cast<std::size_t>(i + j)] + static_cast<std::uint64_t>(ca[static_cast<std::size_t>(i)]) * cb[static_cast<std::size_t>(j)]) % p_;
    for (int k = 2 * r_ - 2; k >= r_; --k) {
      std::uint64_t c = t[static_cast<std::size_t>(k)] % p_;
      if (!c) continue;
      t[static_cast<std::size_t>(k)] = 0;
      for (int i = 0; i < r_; ++i) {
        std::uint64_t sub = c * mod_[static_cast<std::size_t>(i)] % p_;
        std::size_t idx = static_cast<std::size_t>(k - r_ + i);
        t[idx] = (t[idx] + p_ - sub) % p_;
      }
    }
    std::uint64_t v = 0;
    for (int i = r_ - 1; i >= 0; --i) v = v * p_ + t[static_cast<std::size_t>(i)] % p_;
    return static_cast<Elt>(v);
  }

  Elt tonelli_shanks(Elt a) const {
    std::uint64_t t = q_ - 1;
    int s = 0;
    while (!(t & 1)) {
      t >>= 1;
      ++s;
    }
    Elt z = 2;
    while (chi(z) != -1) ++z;
    Elt c = pow(z, t), x = pow(a, (t + 1) / 2), b = pow(a, t);
    int m = s;
    while (b != 1) {
      int i = 0;
      Elt bb = b;
      while (bb != 1) {
        bb = mul(bb, bb);
        ++i;
      }
      Elt w = c;
      for (int k = 0; k < m - i - 1; ++k) w = mul(w, w);
      x = mul(x, w);
      c = mul(w, w);
      b = mul(b, c);
      m = i;
    }
    return x;
  }

  void build_tables() {
    std::uint64_t n = q_ - 1;
    std::vector<std::uint64_t> primes;
    for (auto& [pr, e] : factor_integer(Int(static_cast<unsigned long>(n)))) primes.push_back(pr.get_ui());
    gen_ = 0;
    for (Elt g = 2; g < q_; ++g) {
      bool ok = true;
      for (auto l : primes)
        if (pow_slow(g, n / l) == 1) {
          ok = false;
          break;
        }
      if (ok) {
        gen_ = g;
        break;
      }
    }
    if (!gen_) throw AlgebraError("GF: no generator found");
    exp_.resize(static_cast<std::size_t>(2 * n));
    log_.assign(static_cast<std::size_t>(q_), -1);
    Elt x = 1;
    for (std::uint64_t k = 0; k < n; ++k) {
      exp_[static_cast<std::size_t>(k)] = x;
      log_[x] = static_cast<std::int32_t>(k);
      x = poly_mul(x, gen_);
    }
    for (std::uint64_t k = n; k < 2 * n; ++k) exp_[static_cast<std::size_t>(k)] = exp_[static_cast<std::size_t>(k - n)];
    zech_.resize(static_cast<std::size_t>(n));
    for (std::uint64_t k = 0; k < n; ++k) {
      Elt v = exp_[static_cast<std::size_t>(k)];
      // 1 + v only changes the constant coordinate
      Elt w = (v % p_ == p_ - 1) ? v - (p_ - 1) : v + 1;
      zech_[static_cast<std::size_t>(k)] = w == 0 ? -1 : log_[w];
    }
  }
  Elt pow_slow(Elt a, std::uint64_t e) const {
    Elt acc = 1;
    while (e) {
      if (e & 1) acc = poly_mul(acc, a);
      e >>= 1;
      if (e) a = poly_mul(a, a);
    }
    return acc;
  }

  std::uint32_t p_;
  int r_ = 1;
  std::uint64_t q_ = 0;
  std::vector<std::uint32_t> mod_;
  std::vector<std::uint64_t> pw_;
  std::vector<std::uint8_t> sq_;
  std::vector<Elt> exp_;
  std::vector<std::int32_t> log_;
  std::vector<std::int32_t> zech_;
  Elt gen_ = 0;
};

using GFCtxPtr = std::shared_ptr<const GFCtx>;

/// Element with a pointer to its (long-lived) context.
struct FqElem {
  const GFCtx* ctx = nullptr;
  std::uint32_t v = 0;

  FqElem() = default;
  FqElem(const GFCtx* c, std::uint32_t val) : ctx(c), v(val) {}

  static FqElem from_rat(const Rat& x, const FqElem& like) { return {like.ctx, like.ctx->from_rat(x)}; }

  FqElem operator-() const { return {ctx, ctx ? ctx->neg(v) : 0}; }
  friend FqElem operator+(const FqElem& a, const FqElem& b) {
    const GFCtx* c = a.ctx ? a.ctx : b.ctx;
    return {c, c ? c->add(a.v, b.v) : 0};
  }
  friend FqElem operator-(const FqElem& a, const FqElem& b) {
    const GFCtx* c = a.ctx ? a.ctx : b.ctx;
    return {c, c ? c->sub(a.v, b.v) : 0};
  }
  friend FqElem operator*(const FqElem& a, const FqElem& b) {
    const GFCtx* c = a.ctx ? a.ctx : b.ctx;
    return {c, c ? c->mul(a.v, b.v) : 0};
  }
  friend FqElem operator/(const FqElem& a, const FqElem& b) {
    const GFCtx* c = a.ctx ? a.ctx : b.ctx;
    if (!c || b.v == 0) throw AlgebraError("GF: division by zero");
    return {c, c->div(a.v, b.v)};
  }
  friend bool operator==(const FqElem& a, const FqElem& b) { return a.v == b.v; }
  friend bool operator!=(const FqElem& a, const FqElem& b) { return a.v != b.v; }
  FqElem inverse() const { return {ctx, ctx->inv(v)}; }
  FqElem pow(std::uint64_t e) const { return {ctx, ctx->pow(v, e)}; }
};

template <>
struct field_traits<FqElem> {
  static FqElem zero(const FqElem& a) { return {a.ctx, 0}; }
  static FqElem one(const FqElem& a) { return {a.ctx, 1}; }
  static FqElem from_int(const FqElem& a, long n) { return {a.ctx, a.ctx->from_int(n)}; }
  static bool is_zero(const FqElem& a) { return a.v == 0; }
  static long characteristic(const FqElem& a) { return a.ctx->p(); }
  static std::string str(const FqElem& a) { return a.ctx ? a.ctx->elem_str(a.v) : "0"; }
};

inline int quadratic_character(const FqElem& x) { return x.ctx->chi(x.v); }

inline std::optional<FqElem> sqrt_in_field(const FqElem& x) {
  auto s = x.ctx->sqrt(x.v);
  if (!s) return std::nullopt;
  return FqElem{x.ctx, *s};
}

/// Registry of fields built with the lexicographically least modulus; the
/// contexts live for the whole process so elements may hold raw pointers.
GFCtxPtr build_extension(std::uint32_t p, int r);

inline GFCtxPtr prime_field(std::uint32_t p) { return build_extension(p, 1); }

}  // namespace zsurf

#include <zsurf/ff/gf_impl.hpp>
