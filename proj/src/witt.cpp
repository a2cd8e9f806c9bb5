#include "prismslice/witt.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <tuple>

namespace prismslice {

std::string to_string(WittOp op) {
  switch (op) {
    case WittOp::Sum: return "sum";
    case WittOp::Product: return "product";
    case WittOp::Neg: return "neg";
    case WittOp::Frobenius: return "frobenius";
    case WittOp::Norm: return "norm";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Symbolic computation of the universal polynomials

namespace {

using Mono = std::vector<std::uint16_t>;
using PolyMap = std::map<Mono, BigInt>;

PolyMap pm_var(unsigned v, unsigned nvars, unsigned e = 1) {
  Mono m(nvars, 0);
  m[v] = std::uint16_t(e);
  return {{m, BigInt(1)}};
}

void pm_axpy(PolyMap& acc, const PolyMap& x, const BigInt& c) {
  for (const auto& [m, v] : x) {
    auto [it, fresh] = acc.try_emplace(m, 0);
    it->second += c * v;
    if (it->second == 0) acc.erase(it);
  }
}

PolyMap pm_mul(const PolyMap& a, const PolyMap& b) {
  PolyMap out;
  for (const auto& [ma, va] : a)
    for (const auto& [mb, vb] : b) {
      Mono m(ma.size());
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::uint16_t(ma[i] + mb[i]);
      auto [it, fresh] = out.try_emplace(std::move(m), 0);
      it->second += va * vb;
    }
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

PolyMap pm_pow(const PolyMap& a, u64 e, unsigned nvars) {
  PolyMap r{{Mono(nvars, 0), BigInt(1)}}, b = a;
  while (e) {
    if (e & 1) r = pm_mul(r, b);
    e >>= 1;
    if (e) b = pm_mul(b, b);
  }
  return r;
}

PolyMap pm_divexact(const PolyMap& a, const BigInt& d) {
  PolyMap out;
  for (const auto& [m, v] : a) {
    if (v % d != 0) throw InternalError("universal Witt polynomial: inexact division");
    out.emplace(m, v / d);
  }
  return out;
}

// w_k of the variables starting at `offset`.
PolyMap ghost_poly(u64 p, unsigned k, unsigned offset, unsigned nvars) {
  PolyMap g;
  BigInt pj = 1;
  for (unsigned j = 0; j <= k; ++j) {
    pm_axpy(g, pm_var(offset + j, nvars, unsigned(sat_pow(p, k - j))), pj);
    pj *= p;
  }
  return g;
}

std::vector<MPoly> solve_from_ghost(u64 p, const std::vector<PolyMap>& targets, unsigned nvars) {
  std::vector<PolyMap> S;
  std::vector<std::vector<PolyMap>> ppow;  // ppow[j][t] = S_j^{p^t}
  for (unsigned k = 0; k < targets.size(); ++k) {
    PolyMap rest = targets[k];
    BigInt pj = 1;
    for (unsigned j = 0; j < k; ++j) {
      while (ppow[j].size() <= k - j) ppow[j].push_back(pm_pow(ppow[j].back(), p, nvars));
      pm_axpy(rest, ppow[j][k - j], -pj);
      pj *= p;
    }
    S.push_back(pm_divexact(rest, pj));
    ppow.push_back({S.back()});
  }
  std::vector<MPoly> out;
  for (const auto& s : S) {
    MPoly mp;
    mp.nvars = nvars;
    for (const auto& [m, v] : s) mp.terms.push_back({m, v});
    out.push_back(std::move(mp));
  }
  return out;
}

std::vector<MPoly> compute_polys(u64 p, WittOp op, unsigned n) {
  std::vector<PolyMap> targets;
  switch (op) {
    case WittOp::Sum:
    case WittOp::Product:
      for (unsigned k = 0; k < n; ++k) {
        PolyMap gx = ghost_poly(p, k, 0, 2 * n), gy = ghost_poly(p, k, n, 2 * n);
        if (op == WittOp::Sum) {
          pm_axpy(gx, gy, 1);
          targets.push_back(gx);
        } else {
          targets.push_back(pm_mul(gx, gy));
        }
      }
      return solve_from_ghost(p, targets, 2 * n);
    case WittOp::Neg:
      for (unsigned k = 0; k < n; ++k) {
        PolyMap g;
        pm_axpy(g, ghost_poly(p, k, 0, n), -1);
        targets.push_back(g);
      }
      return solve_from_ghost(p, targets, n);
    case WittOp::Frobenius:
      for (unsigned k = 0; k < n; ++k) targets.push_back(ghost_poly(p, k + 1, 0, n + 1));
      return solve_from_ghost(p, targets, n + 1);
    case WittOp::Norm:
      targets.push_back(ghost_poly(p, 0, 0, n));
      for (unsigned k = 1; k <= n; ++k) targets.push_back(pm_pow(ghost_poly(p, k - 1, 0, n), p, n));
      return solve_from_ghost(p, targets, n);
  }
  throw InternalError("unknown Witt operation");
}

}  // namespace

const std::vector<MPoly>& universal_polys(u64 p, WittOp op, unsigned length) {
  static std::mutex mu;
  static std::map<std::tuple<u64, int, unsigned>, std::unique_ptr<std::vector<MPoly>>> cache;
  require_prime(p);
  if (length > kWittCacheBound)
    throw DomainError("Witt length " + std::to_string(length) + " beyond cache bound " +
                      std::to_string(kWittCacheBound));
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(p, int(op), length);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, std::make_unique<std::vector<MPoly>>(compute_polys(p, op, length))).first;
  return *it->second;
}

// ---------------------------------------------------------------------------
// Coefficient rings

ZmodRing::ZmodRing(u64 p_, unsigned k_) : p(p_), k(k_), mod(sat_pow(p_, k_)) {
  require_prime(p);
  if (k == 0 || mod >= (u64(1) << 62)) throw DomainError("Z/p^k needs 1 <= p^k < 2^62");
}

ZmodRing::Elem ZmodRing::from_int(const BigInt& v) const {
  BigInt r = v % mod;
  if (r < 0) r += mod;
  return static_cast<u64>(r);
}

FpPolyRing::FpPolyRing(u64 p_, unsigned m_) : p(p_), m(m_) {
  require_prime(p);
  if (m == 0) throw DomainError("F_p[x]/(x^m) needs m >= 1");
}

FpPolyRing::Elem FpPolyRing::one() const {
  Elem e(m, 0);
  e[0] = 1;
  return e;
}

FpPolyRing::Elem FpPolyRing::from_int(const BigInt& v) const {
  Elem e(m, 0);
  BigInt r = v % p;
  if (r < 0) r += p;
  e[0] = static_cast<u64>(r);
  return e;
}

FpPolyRing::Elem FpPolyRing::add(const Elem& a, const Elem& b) const {
  Elem e(m);
  for (unsigned i = 0; i < m; ++i) e[i] = (a[i] + b[i]) % p;
  return e;
}

FpPolyRing::Elem FpPolyRing::sub(const Elem& a, const Elem& b) const {
  Elem e(m);
  for (unsigned i = 0; i < m; ++i) e[i] = (a[i] + p - b[i]) % p;
  return e;
}

FpPolyRing::Elem FpPolyRing::mul(const Elem& a, const Elem& b) const {
  Elem e(m, 0);
  for (unsigned i = 0; i < m; ++i) {
    if (!a[i]) continue;
    for (unsigned j = 0; i + j < m; ++j) e[i + j] = (e[i + j] + a[i] * b[j]) % p;
  }
  return e;
}

std::string FpPolyRing::str(const Elem& a) const {
  std::string s;
  for (unsigned i = 0; i < m; ++i) s += (i ? "," : "") + std::to_string(a[i]);
  return "[" + s + "]";
}

IntPolyRing::Elem IntPolyRing::one() const {
  Elem e(m, 0);
  e[0] = 1;
  return e;
}

IntPolyRing::Elem IntPolyRing::from_int(const BigInt& v) const {
  Elem e(m, 0);
  e[0] = v;
  return e;
}

IntPolyRing::Elem IntPolyRing::add(const Elem& a, const Elem& b) const {
  Elem e(m);
  for (unsigned i = 0; i < m; ++i) e[i] = a[i] + b[i];
  return e;
}

IntPolyRing::Elem IntPolyRing::sub(const Elem& a, const Elem& b) const {
  Elem e(m);
  for (unsigned i = 0; i < m; ++i) e[i] = a[i] - b[i];
  return e;
}

IntPolyRing::Elem IntPolyRing::mul(const Elem& a, const Elem& b) const {
  Elem e(m, 0);
  for (unsigned i = 0; i < m; ++i) {
    if (a[i] == 0) continue;
    for (unsigned j = 0; i + j < m; ++j) e[i + j] += a[i] * b[j];
  }
  return e;
}

std::optional<IntPolyRing::Elem> IntPolyRing::div_p(const Elem& a, u64 p) const {
  Elem e(m);
  for (unsigned i = 0; i < m; ++i) {
    if (a[i] % p != 0) return std::nullopt;
    e[i] = a[i] / p;
  }
  return e;
}

std::string IntPolyRing::str(const Elem& a) const {
  std::string s;
  for (unsigned i = 0; i < m; ++i) s += (i ? "," : "") + a[i].str();
  return "[" + s + "]";
}

static LocalQElem big_constant(const Model& m, const BigInt& v) {
  BigInt mod = BigInt(sat_pow(m.p, m.M));
  BigInt r = v % mod;
  if (r < 0) r += mod;
  return LocalQElem(m, {static_cast<u64>(r)}, m.N, m.M, true);
}

LocalRing::Elem LocalRing::from_int(const BigInt& v) const { return big_constant(model, v); }

std::optional<LocalRing::Elem> LocalRing::div_p(const Elem& a, u64) const { return divide_by_p_power(a, 1); }

ResidueRing::Elem ResidueRing::from_int(const BigInt& v) const { return reduce(big_constant(divisor.model(), v)); }

std::optional<ResidueRing::Elem> ResidueRing::div_p(const Elem& a, u64) const { return divide_by_p_power(a, 1); }

// ---------------------------------------------------------------------------

bool delta_section_check(const Model& m, const std::vector<LocalQElem>& samples) {
  return delta_section_check(m, samples, [](const LocalQElem& x) { return delta(x); });
}

ResidueRing residue_ring(const Model& m, unsigned depth) {
  Model md = m.is_q() ? m.with_depth(depth) : m;
  return ResidueRing(orientation(md));
}

IsoWittResult iso_witt(const LocalQElem& x, unsigned n, unsigned target_depth) {
  const Model& m = x.model();
  if (n == 0) throw DomainError("iso_witt needs n >= 1");
  if (n == 1 && (target_depth == 0 || target_depth == m.depth)) {
    ResidueRing R(orientation(m));
    return {R, {{R.reduce(x)}}};
  }
  if (m.kind != ModelKind::PerfectQ) throw DomainError("iso_witt with n > 1 needs a perfect-q model");
  unsigned e = m.depth;
  unsigned D = target_depth ? target_depth : e + n - 1;
  if (D < e + n - 1) throw DomainError("insufficient depth for iso_witt");
  LocalQElem y = relabel_depth(x, D);
  ResidueRing R = residue_ring(y.model(), D);
  std::vector<LocalQElem> ghost;
  unsigned first = (D - e) - (n - 1);
  LocalQElem z = frobenius(y, first);
  for (unsigned k = 0; k < n; ++k) {
    if (k) z = frobenius(z, 1);
    ghost.push_back(R.reduce(z));
  }
  WittCalc<ResidueRing> W(R, m.p);
  return {R, W.from_ghost(ghost)};
}

// ---------------------------------------------------------------------------

namespace {

std::vector<u64> decode(u64 idx, u64 p, unsigned len) {
  std::vector<u64> v(len);
  for (unsigned i = 0; i < len; ++i) {
    v[i] = idx % p;
    idx /= p;
  }
  return v;
}

u64 encode(const std::vector<u64>& v, u64 p) {
  u64 idx = 0;
  for (std::size_t i = v.size(); i-- > 0;) idx = idx * p + v[i];
  return idx;
}

AseqReport aseq_crystalline(unsigned n, unsigned m, u64 p) {
  ZmodRing Fp(p, 1);
  WittCalc<ZmodRing> W(Fp, p);
  u64 sn = sat_pow(p, n), sm = sat_pow(p, m);
  auto c = W.from_int(std::int64_t(sn), m);
  std::vector<u64> Vimg(sn), Cimg(sm), Fimg(sm);
  for (u64 i = 0; i < sn; ++i) {
    WittVector<ZmodRing> x{decode(i, p, n)};
    for (unsigned s = n; s < m; ++s) x = W.verschiebung_V(x);
    Vimg[i] = encode(x.x, p);
  }
  for (u64 i = 0; i < sm; ++i) {
    WittVector<ZmodRing> y{decode(i, p, m)};
    Cimg[i] = encode(W.mul(c, y).x, p);
    auto f = y;
    for (unsigned s = n; s < m; ++s) f = W.frobenius_F(f);
    Fimg[i] = encode(f.x, p);
  }
  AseqReport rep;
  std::set<u64> vset(Vimg.begin(), Vimg.end());
  if (vset.size() != sn) {
    rep.detail = "V^{m-n} not injective";
    return rep;
  }
  std::set<u64> ckernel, cimage(Cimg.begin(), Cimg.end()), fkernel, fimage(Fimg.begin(), Fimg.end());
  for (u64 i = 0; i < sm; ++i) {
    if (Cimg[i] == 0) ckernel.insert(i);
    if (Fimg[i] == 0) fkernel.insert(i);
  }
  if (vset != ckernel) {
    rep.detail = "image of V^{m-n} differs from kernel of c";
    return rep;
  }
  if (cimage != fkernel) {
    rep.detail = "image of c differs from kernel of F^{m-n}";
    return rep;
  }
  if (fimage.size() != sn) {
    rep.detail = "F^{m-n} not surjective";
    return rep;
  }
  rep.exact = true;
  rep.detail = "exhaustive over W_" + std::to_string(m) + "(F_" + std::to_string(p) + ")";
  return rep;
}

// Principal atom ideals: exponent vectors of xi_0, xi_1, ...
using Atoms = std::vector<int>;
Atoms atoms_range(unsigned lo, unsigned hi, unsigned len) {
  Atoms a(len, 0);
  for (unsigned j = lo; j < hi; ++j) a[j] = 1;
  return a;
}
// (I : c) for principal I, c.
Atoms colon(const Atoms& I, const Atoms& c) {
  Atoms r(I.size());
  for (std::size_t j = 0; j < I.size(); ++j) r[j] = I[j] - std::min(I[j], c[j]);
  return r;
}
Atoms plus(const Atoms& a, const Atoms& b) {
  Atoms r(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) r[j] = a[j] + b[j];
  return r;
}

AseqReport aseq_q(unsigned n, unsigned m, const Model& model) {
  AseqReport rep;
  unsigned L = m + 1;
  Atoms In = atoms_range(0, n, L), Im = atoms_range(0, m, L), v = atoms_range(n, m, L), c = In;
  // V: A/[p^n] -v-> A/[p^m] injective iff ([p^m] : v) = [p^n]
  if (colon(Im, v) != In) {
    rep.detail = "V^{m-n} not injective in the atom calculus";
    return rep;
  }
  // ker(c) on A/[p^m] is ([p^m] : c) = (v) = im(V)
  if (colon(Im, c) != v || plus(c, v) != Im) {
    rep.detail = "ker(c) differs from im(V^{m-n})";
    return rep;
  }
  // ker of the projection A/[p^m] -> A/[p^n] is ([p^n]) = im(c); surjectivity is clear
  if (c != In) {
    rep.detail = "ker(F^{m-n}) differs from im(c)";
    return rep;
  }
  // Witnesses in the ring model.
  std::mt19937_64 rng(0x5eed + n * 31 + m);
  LocalQElem pn = qA_pk(model, n), pm = qA_pk(model, m);
  LocalQElem vv = frobenius(qA_pk(model, m - n), n);
  if (!(ring_mul(pn, vv) == pm)) {
    rep.detail = "[p^n] * phi^n([p^{m-n}]) != [p^m]";
    return rep;
  }
  for (int s = 0; s < 4; ++s) {
    std::vector<u64> coeffs(4);
    for (auto& cf : coeffs) cf = rng() % 7;
    LocalQElem x(model, coeffs, model.N, model.M, true);
    auto Wm = iso_witt(x, m);
    auto Wn = iso_witt(x, n, model.depth + m - 1);
    WittCalc<ResidueRing> W(Wm.ring, model.p);
    auto f = Wm.vec;
    for (unsigned t = n; t < m; ++t) f = W.frobenius_F(f);
    if (!W.eq(f, Wn.vec)) {
      rep.detail = "F^{m-n} does not match the projection on a sample";
      return rep;
    }
    auto killed = iso_witt(ring_mul(pn, x), n);
    for (const auto& coord : killed.vec.x)
      if (!coord.is_zero()) {
        rep.detail = "[p^n]_A x does not vanish in W_n(R)";
        return rep;
      }
    if (!divisible_by(ring_mul(ring_mul(vv, x), pn), pm)) {
      rep.detail = "c o V^{m-n} is nonzero on a sample";
      return rep;
    }
  }
  rep.exact = true;
  rep.detail = "atom calculus plus sampled witnesses in " + model.name();
  return rep;
}

}  // namespace

AseqReport aseq_exactness_check(unsigned n, unsigned m, const Model& model) {
  if (n > m) throw DomainError("aseq needs n <= m");
  if (n == m) {
    AseqReport rep;
    rep.exact = true;
    rep.skipped = true;
    rep.detail = "n = m: the middle map is multiplication by [p^n]_A = 0 on W_n; nothing to check";
    return rep;
  }
  if (n == 0) throw DomainError("aseq needs n >= 1");
  if (model.kind == ModelKind::Crystalline) return aseq_crystalline(n, m, model.p);
  if (model.kind == ModelKind::PerfectQ) return aseq_q(n, m, model);
  throw DomainError("aseq_exactness_check supports the crystalline and perfect-q models");
}

}  // namespace prismslice
