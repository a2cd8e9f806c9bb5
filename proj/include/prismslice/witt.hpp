#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "prismslice/errors.hpp"
#include "prismslice/exact_poly.hpp"
#include "prismslice/rings.hpp"

namespace prismslice {

// ---------------------------------------------------------------------------
// Universal polynomials

constexpr unsigned kWittCacheBound = 5;

enum class WittOp { Sum, Product, Neg, Frobenius, Norm };

std::string to_string(WittOp op);

// Sparse integer polynomial; exps has one entry per variable.
struct MPoly {
  struct Term {
    std::vector<std::uint16_t> exps;
    BigInt coeff;
  };
  unsigned nvars = 0;
  std::vector<Term> terms;
};

// Variable layout: Sum/Product use X_0..X_{n-1}, Y_0..Y_{n-1}; Neg uses X_0..X_{n-1};
// Frobenius (W_{n+1} -> W_n) uses X_0..X_n; Norm (W_n -> W_{n+1}) uses X_0..X_{n-1}.
// `length` is n in each case. Computed once per (p, op, length) and shared.
const std::vector<MPoly>& universal_polys(u64 p, WittOp op, unsigned length);

// ---------------------------------------------------------------------------
// Coefficient rings. Each provides Elem, zero/one/from_int, add/sub/mul, eq, str;
// p-torsion-free ones also provide div_p.

struct IntegerRing {
  using Elem = BigInt;
  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(const BigInt& v) const { return v; }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }
  std::optional<Elem> div_p(const Elem& a, u64 p) const {
    if (a % p != 0) return std::nullopt;
    return Elem(a / p);
  }
  std::string str(const Elem& a) const { return a.str(); }
};

// Z/p^k.
struct ZmodRing {
  u64 p;
  unsigned k;
  u64 mod;
  ZmodRing(u64 p_, unsigned k_);
  using Elem = u64;
  Elem zero() const { return 0; }
  Elem one() const { return 1 % mod; }
  Elem from_int(const BigInt& v) const;
  Elem add(Elem a, Elem b) const { return (a + b) % mod; }
  Elem sub(Elem a, Elem b) const { return (a + mod - b) % mod; }
  Elem mul(Elem a, Elem b) const { return Elem((unsigned __int128)a * b % mod); }
  bool eq(Elem a, Elem b) const { return a == b; }
  std::string str(Elem a) const { return std::to_string(a); }
};

// F_p[x]/(x^m), coefficient vectors of length m.
struct FpPolyRing {
  u64 p;
  unsigned m;
  FpPolyRing(u64 p_, unsigned m_);
  using Elem = std::vector<u64>;
  Elem zero() const { return Elem(m, 0); }
  Elem one() const;
  Elem from_int(const BigInt& v) const;
  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem mul(const Elem& a, const Elem& b) const;
  bool eq(const Elem& a, const Elem& b) const { return a == b; }
  std::string str(const Elem& a) const;
};

// Z[x]/(x^m) with exact integers.
struct IntPolyRing {
  unsigned m;
  explicit IntPolyRing(unsigned m_) : m(m_) {}
  using Elem = std::vector<BigInt>;
  Elem zero() const { return Elem(m, 0); }
  Elem one() const;
  Elem from_int(const BigInt& v) const;
  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem mul(const Elem& a, const Elem& b) const;
  bool eq(const Elem& a, const Elem& b) const { return a == b; }
  std::optional<Elem> div_p(const Elem& a, u64 p) const;
  std::string str(const Elem& a) const;
};

// The truncated ring model A itself.
struct LocalRing {
  Model model;
  explicit LocalRing(Model m) : model(std::move(m)) {}
  using Elem = LocalQElem;
  Elem zero() const { return prismslice::zero(model); }
  Elem one() const { return prismslice::one(model); }
  Elem from_int(const BigInt& v) const;
  Elem add(const Elem& a, const Elem& b) const { return ring_add(a, b); }
  Elem sub(const Elem& a, const Elem& b) const { return ring_sub(a, b); }
  Elem mul(const Elem& a, const Elem& b) const { return ring_mul(a, b); }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }
  std::optional<Elem> div_p(const Elem& a, u64 p) const;
  std::string str(const Elem& a) const { return a.to_string(); }
};

// A/(D) for a divisor D prime to p; elements are Weierstrass normal forms.
struct ResidueRing {
  LocalQElem divisor;
  explicit ResidueRing(LocalQElem d) : divisor(std::move(d)) {}
  using Elem = LocalQElem;
  Elem reduce(const LocalQElem& x) const { return remainder_mod(x, divisor); }
  Elem zero() const { return reduce(prismslice::zero(divisor.model())); }
  Elem one() const { return reduce(prismslice::one(divisor.model())); }
  Elem from_int(const BigInt& v) const;
  Elem add(const Elem& a, const Elem& b) const { return ring_add(a, b); }
  Elem sub(const Elem& a, const Elem& b) const { return ring_sub(a, b); }
  Elem mul(const Elem& a, const Elem& b) const { return reduce(ring_mul(a, b)); }
  bool eq(const Elem& a, const Elem& b) const { return ring_sub(a, b).is_zero(); }
  std::optional<Elem> div_p(const Elem& a, u64 p) const;
  std::string str(const Elem& a) const { return a.to_string(); }
};

// ---------------------------------------------------------------------------
// Witt vectors

template <class R>
struct WittVector {
  std::vector<typename R::Elem> x;
  std::size_t length() const { return x.size(); }
};

struct NotInImage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class R>
concept TorsionFreeBase = requires(const R& r, const typename R::Elem& a, u64 p) {
  { r.div_p(a, p) };
};

template <class R>
typename R::Elem ring_power(const R& r, typename R::Elem a, u64 e) {
  typename R::Elem out = r.one();
  while (e) {
    if (e & 1) out = r.mul(out, a);
    e >>= 1;
    if (e) a = r.mul(a, a);
  }
  return out;
}

template <class R>
std::vector<typename R::Elem> eval_polys(const R& r, const std::vector<MPoly>& polys,
                                         const std::vector<typename R::Elem>& vars) {
  using E = typename R::Elem;
  std::vector<std::vector<E>> powers(vars.size());
  auto power = [&](std::size_t v, unsigned e) -> const E& {
    auto& pw = powers[v];
    if (pw.empty()) pw.push_back(r.one());
    while (pw.size() <= e) pw.push_back(r.mul(pw.back(), vars[v]));
    return pw[e];
  };
  std::vector<E> out;
  out.reserve(polys.size());
  for (const auto& poly : polys) {
    E acc = r.zero();
    for (const auto& t : poly.terms) {
      E term = r.from_int(t.coeff);
      for (std::size_t v = 0; v < t.exps.size(); ++v)
        if (t.exps[v]) term = r.mul(term, power(v, t.exps[v]));
      acc = r.add(acc, term);
    }
    out.push_back(std::move(acc));
  }
  return out;
}

template <class R>
class WittCalc {
 public:
  using E = typename R::Elem;
  using W = WittVector<R>;

  WittCalc(const R& base, u64 p) : r_(base), p_(p) { require_prime(p); }

  const R& base() const { return r_; }
  u64 prime() const { return p_; }

  W zero(std::size_t n) const { return W{std::vector<E>(n, r_.zero())}; }
  W one(std::size_t n) const { return teichmuller(r_.one(), n); }
  W teichmuller(const E& a, std::size_t n) const {
    W w = zero(n);
    if (n) w.x[0] = a;
    return w;
  }

  std::vector<E> ghost(const W& x) const {
    std::vector<E> w;
    for (std::size_t i = 0; i < x.length(); ++i) {
      E acc = r_.zero();
      u64 pj = 1;
      for (std::size_t j = 0; j <= i; ++j) {
        E term = ring_power(r_, x.x[j], sat_pow(p_, unsigned(i - j)));
        acc = r_.add(acc, r_.mul(r_.from_int(BigInt(pj)), term));
        pj *= p_;
      }
      w.push_back(acc);
    }
    return w;
  }

  W from_ghost(const std::vector<E>& w) const
    requires TorsionFreeBase<R>
  {
    W x;
    for (std::size_t i = 0; i < w.size(); ++i) {
      E rest = w[i];
      u64 pj = 1;
      for (std::size_t j = 0; j < i; ++j) {
        rest = r_.sub(rest, r_.mul(r_.from_int(BigInt(pj)), ring_power(r_, x.x[j], sat_pow(p_, unsigned(i - j)))));
        pj *= p_;
      }
      for (std::size_t s = 0; s < i; ++s) {
        auto d = r_.div_p(rest, p_);
        if (!d) throw NotInImage("ghost vector not in the image at coordinate " + std::to_string(i));
        rest = *d;
      }
      x.x.push_back(rest);
    }
    return x;
  }

  W add(const W& a, const W& b) const { return binary(WittOp::Sum, a, b); }
  W mul(const W& a, const W& b) const { return binary(WittOp::Product, a, b); }
  W neg(const W& a) const { return W{eval_polys(r_, universal_polys(p_, WittOp::Neg, unsigned(a.length())), a.x)}; }
  W sub(const W& a, const W& b) const { return add(a, neg(b)); }

  // Image of an integer.
  W from_int(std::int64_t k, std::size_t n) const {
    W acc = zero(n), base = one(n);
    bool negative = k < 0;
    u64 e = u64(negative ? -k : k);
    while (e) {
      if (e & 1) acc = add(acc, base);
      e >>= 1;
      if (e) base = add(base, base);
    }
    return negative ? neg(acc) : acc;
  }
  W scale(std::int64_t k, const W& a) const { return mul(from_int(k, a.length()), a); }

  W frobenius_F(const W& a) const {
    if (a.length() == 0) throw DomainError("F needs length >= 1");
    return W{eval_polys(r_, universal_polys(p_, WittOp::Frobenius, unsigned(a.length() - 1)), a.x)};
  }
  W verschiebung_V(const W& a) const {
    W out = a;
    out.x.insert(out.x.begin(), r_.zero());
    return out;
  }
  W restriction_R(const W& a) const {
    if (a.length() == 0) throw DomainError("R needs length >= 1");
    W out = a;
    out.x.pop_back();
    return out;
  }
  W norm(const W& a) const {
    return W{eval_polys(r_, universal_polys(p_, WittOp::Norm, unsigned(a.length())), a.x)};
  }

  bool eq(const W& a, const W& b) const {
    if (a.length() != b.length()) return false;
    for (std::size_t i = 0; i < a.length(); ++i)
      if (!r_.eq(a.x[i], b.x[i])) return false;
    return true;
  }

  std::string str(const W& a) const {
    std::string s = "(";
    for (std::size_t i = 0; i < a.length(); ++i) s += (i ? ", " : "") + r_.str(a.x[i]);
    return s + ")";
  }

 private:
  W binary(WittOp op, const W& a, const W& b) const {
    if (a.length() != b.length()) throw DomainError("Witt vectors of different lengths");
    std::vector<E> vars(a.x);
    vars.insert(vars.end(), b.x.begin(), b.x.end());
    return W{eval_polys(r_, universal_polys(p_, op, unsigned(a.length())), vars)};
  }

  R r_;
  u64 p_;
};

// ---------------------------------------------------------------------------
// Prism-facing pieces

// x -> (x, delta(x)) is a ring map A -> W_2(A) on all sample pairs; `delta_fn` may be
// replaced for negative controls.
template <class DeltaFn>
bool delta_section_check(const Model& m, const std::vector<LocalQElem>& samples, DeltaFn delta_fn) {
  LocalRing base(m);
  WittCalc<LocalRing> W(base, m.p);
  auto section = [&](const LocalQElem& x) { return WittVector<LocalRing>{{x, delta_fn(x)}}; };
  for (const auto& x : samples)
    for (const auto& y : samples) {
      if (!W.eq(section(ring_add(x, y)), W.add(section(x), section(y)))) return false;
      if (!W.eq(section(ring_mul(x, y)), W.mul(section(x), section(y)))) return false;
    }
  return true;
}

bool delta_section_check(const Model& m, const std::vector<LocalQElem>& samples);

// R = A/[p]_A at the given depth.
ResidueRing residue_ring(const Model& m, unsigned depth);

// The Witt vector over R = A/[p]_A with ghost (phi^{-(n-1)}x, ..., phi^{-1}x, x) mod [p]_A.
// x lives in a perfect-q model at depth e; computations happen at target_depth >= e + n - 1
// (0 means exactly e + n - 1).
struct IsoWittResult {
  ResidueRing ring;
  WittVector<ResidueRing> vec;
};
IsoWittResult iso_witt(const LocalQElem& x, unsigned n, unsigned target_depth = 0);

struct AseqReport {
  bool exact = false;
  bool skipped = false;  // n == m
  std::string detail;
};

// 0 -> W_n -V^{m-n}-> W_m -c-> W_m -F^{m-n}-> W_n -> 0.
AseqReport aseq_exactness_check(unsigned n, unsigned m, const Model& model);

}  // namespace prismslice
