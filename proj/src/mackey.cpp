#include "prismslice/mackey.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "prismslice/errors.hpp"

namespace prismslice {

namespace {

using u128 = unsigned __int128;

Multiplier tr_step(unsigned k) { return {AtomProduct::xi(k + 1), {{k + 1, k + 1, -1}}}; }

std::vector<UnitFactor> merge_units(const std::vector<UnitFactor>& a, const std::vector<UnitFactor>& b) {
  std::map<std::pair<unsigned, unsigned>, int> e;
  for (const auto& u : a) e[{u.i, u.j}] += u.exponent;
  for (const auto& u : b) e[{u.i, u.j}] += u.exponent;
  std::vector<UnitFactor> out;
  for (const auto& [ij, x] : e)
    if (x) out.push_back({ij.first, ij.second, x});
  return out;
}

LocalQElem unit_power(const LocalQElem& u, int e) {
  if (e >= 0) return ring_pow(u, u64(e));
  return ring_pow(inverse(u), u64(-e));
}

// m times the unit prod u^{max(0, -e) + extra}, which has only nonnegative unit exponents.
LocalQElem cleared(const Multiplier& m, const std::map<std::pair<unsigned, unsigned>, int>& denom,
                   const MackeyRing& R) {
  LocalQElem x = to_ring(m.atoms, R.model);
  std::map<std::pair<unsigned, unsigned>, int> e = denom;
  for (const auto& u : m.units) e[{u.i, u.j}] += u.exponent;
  for (const auto& [ij, k] : e) {
    if (k < 0) throw InternalError("clearing denominators left a negative unit exponent");
    if (k) x = x * ring_pow(R.units.at(ij.first, ij.second), u64(k));
  }
  return x;
}

std::map<std::pair<unsigned, unsigned>, int> common_denominator(const std::vector<const Multiplier*>& ms) {
  std::map<std::pair<unsigned, unsigned>, int> d;
  for (const Multiplier* m : ms)
    for (const auto& u : m->units)
      if (u.exponent < 0) d[{u.i, u.j}] = std::max(d[{u.i, u.j}], -u.exponent);
  return d;
}

// Membership in the annihilator ideal. For a non-principal ideal this is the sufficient test
// "divisible by one of the generators".
bool in_ideal(const LocalQElem& x, const CyclicAModule& mod, const Model& m) {
  if (mod.is_zero()) return true;
  if (mod.is_free()) return x.is_zero();
  if (m.kind == ModelKind::Crystalline) {
    unsigned len = mod.crystalline_length(m.M);
    if (len >= m.M) return x.is_zero();
    return x.coeff(0) % sat_pow(m.p, len) == 0;
  }
  for (const auto& g : mod.annihilator)
    if (divisible_by(x, to_ring(g, m))) return true;
  return false;
}

bool congruent_in(const Multiplier& a, const Multiplier& b, const CyclicAModule& mod, const MackeyRing& R) {
  auto d = common_denominator({&a, &b});
  return in_ideal(cleared(a, d, R) - cleared(b, d, R), mod, R.model);
}

// (J : f) for principal J, as a principal ideal generator.
AtomProduct colon(const AtomProduct& J, const AtomProduct& f) {
  if (f.zero) return AtomProduct::unit();
  if (J.zero) return J;
  return J / atom_gcd(J, f);
}

u64 crys_value(const Multiplier& m, const MackeyRing& R) { return to_ring(m, R).coeff(0); }

u64 mulmod(u64 a, u64 b, u64 mod) { return u64(u128(a) * b % mod); }

struct Fail {
  ExactnessReport& rep;
  void operator()(const std::string& what) {
    if (rep.ok) rep.detail = what;
    rep.ok = false;
  }
};

void check_crystalline(const MackeyTower& A, const MackeyTower& B, const MackeyTower& C,
                       const std::vector<Multiplier>& f, const std::vector<Multiplier>& g, const MackeyRing& R,
                       Fail& fail) {
  const Model& m = R.model;
  auto len = [&](const MackeyTower& T, unsigned k) { return T.levels[k].crystalline_length(m.M); };
  auto size = [&](unsigned l) {
    u64 s = sat_pow(m.p, l);
    if (s > (1u << 20)) throw DomainError("module too large to enumerate");
    return s;
  };
  auto apply = [&](u64 val, u64 x, unsigned target) { return mulmod(val % sat_pow(m.p, target), x, sat_pow(m.p, target)); };
  for (unsigned k = 0; k <= A.top(); ++k) {
    const std::string at = " at level " + std::to_string(k);
    unsigned a = len(A, k), b = len(B, k), c = len(C, k);
    u64 fv = crys_value(f[k], R), gv = crys_value(g[k], R);
    if (apply(fv, size(a), b) != 0 && a < m.M) fail("f not well defined" + at);
    if (apply(gv, size(b), c) != 0 && b < m.M) fail("g not well defined" + at);
    std::set<u64> image;
    for (u64 x = 0; x < size(a); ++x) image.insert(apply(fv, x, b));
    if (image.size() != size(a)) fail("f not injective" + at);
    std::set<u64> gimage;
    for (u64 y = 0; y < size(b); ++y) {
      u64 gy = apply(gv, y, c);
      gimage.insert(gy);
      if ((gy == 0) != (image.count(y) != 0)) {
        fail("image of f differs from kernel of g" + at);
        break;
      }
    }
    if (gimage.size() != size(c)) fail("g not surjective" + at);
  }
  // compatibility of f and g with restriction and transfer
  auto compat = [&](const MackeyTower& S, const MackeyTower& T, const std::vector<Multiplier>& h,
                    const std::string& name) {
    for (unsigned k = 0; k < S.top(); ++k) {
      const std::string at = " at step " + std::to_string(k);
      u64 hk = crys_value(h[k], R), hk1 = crys_value(h[k + 1], R);
      u64 rs = crys_value(S.res[k], R), rt = crys_value(T.res[k], R);
      u64 ts = crys_value(S.tr[k], R), tt = crys_value(T.tr[k], R);
      unsigned lo = len(T, k), hi = len(T, k + 1);
      for (u64 x = 0; x < size(len(S, k + 1)); ++x)
        if (apply(mulmod(rt, hk1, sat_pow(m.p, m.M)), x, lo) != apply(mulmod(hk, rs, sat_pow(m.p, m.M)), x, lo)) {
          fail(name + " does not commute with restriction" + at);
          break;
        }
      for (u64 x = 0; x < size(len(S, k)); ++x)
        if (apply(mulmod(tt, hk, sat_pow(m.p, m.M)), x, hi) != apply(mulmod(hk1, ts, sat_pow(m.p, m.M)), x, hi)) {
          fail(name + " does not commute with transfer" + at);
          break;
        }
    }
  };
  compat(A, B, f, "f");
  compat(B, C, g, "g");
}

LocalQElem random_element(const Model& m, std::mt19937_64& rng) {
  std::vector<u64> c(7);
  for (auto& x : c) x = rng() % 50;
  return LocalQElem(m, c, m.N, m.M, true);
}

void check_symbolic(const MackeyTower& A, const MackeyTower& B, const MackeyTower& C,
                    const std::vector<Multiplier>& f, const std::vector<Multiplier>& g, const MackeyRing& R,
                    std::uint64_t seed, Fail& fail) {
  const Model& m = R.model;
  std::mt19937_64 rng(seed);
  for (unsigned k = 0; k <= A.top(); ++k) {
    const std::string at = " at level " + std::to_string(k);
    const CyclicAModule &MA = A.levels[k], &MB = B.levels[k], &MC = C.levels[k];
    if (!MA.principal() || !MB.principal() || !MC.principal()) {
      fail("symbolic check needs principal annihilators" + at);
      return;
    }
    AtomProduct I = MA.generator(), J = MB.generator(), K = MC.generator();
    const AtomProduct &fa = f[k].atoms, &ga = g[k].atoms;
    if (!divides(J, fa * I)) fail("f not well defined" + at);
    if (!divides(K, ga * J)) fail("g not well defined" + at);
    if (!(colon(J, fa) == I)) fail("f not injective" + at);
    AtomProduct img;
    if (divides(fa, J)) img = fa;
    else if (divides(J, fa)) img = J;
    else {
      fail("image of f is not principal" + at);
      continue;
    }
    if (!(img == colon(K, ga))) fail("image of f differs from kernel of g" + at);
    if (!ga.is_unit() && !K.is_unit()) fail("g not surjective" + at);

    // ring witnesses
    auto clear1 = [&](const Multiplier& x) { return cleared(x, common_denominator({&x}), R); };
    LocalQElem fr = clear1(f[k]), gr = clear1(g[k]);
    if (!MA.is_free() && !in_ideal(fr * to_ring(I, m), MB, m)) fail("f·I not in J in the ring" + at);
    if (!MB.is_free() && !in_ideal(gr * to_ring(J, m), MC, m)) fail("g·J not in K in the ring" + at);
    for (int s = 0; s < 3; ++s) {
      LocalQElem y = random_element(m, rng);
      if (!in_ideal(gr * fr * y, MC, m)) fail("sampled g∘f not zero" + at);
      if (!J.zero && divides(fa, J)) {
        LocalQElem x = to_ring(J / fa, m) * y;
        if (!in_ideal(fr * x, MB, m) || !in_ideal(x, MA, m)) fail("sampled injectivity witness failed" + at);
      }
      AtomProduct ker = colon(K, ga);
      if (!ker.zero) {
        LocalQElem x = to_ring(ker, m) * y;
        if (!in_ideal(gr * x, MC, m)) fail("sampled kernel element not killed by g" + at);
        if (auto z = divide_exact(x, to_ring(fa, m)); !z && !in_ideal(x, MB, m))
          fail("sampled kernel element not in the image of f" + at);
      }
      if (!K.is_unit()) {
        if (!is_unit(gr)) fail("g not a unit" + at);
        else if (!in_ideal(gr * (y * inverse(gr)) - y, MC, m)) fail("sampled surjectivity witness failed" + at);
      }
    }
  }
  auto compat = [&](const MackeyTower& S, const MackeyTower& T, const std::vector<Multiplier>& h,
                    const std::string& name) {
    for (unsigned k = 0; k < S.top(); ++k) {
      const std::string at = " at step " + std::to_string(k);
      if (!congruent_in(T.res[k] * h[k + 1], h[k] * S.res[k], T.levels[k], R))
        fail(name + " does not commute with restriction" + at);
      if (!congruent_in(T.tr[k] * h[k], h[k + 1] * S.tr[k], T.levels[k + 1], R))
        fail(name + " does not commute with transfer" + at);
    }
  };
  compat(A, B, f, "f");
  compat(B, C, g, "g");
}

}  // namespace

CyclicAModule CyclicAModule::quotient(std::vector<AtomProduct> gens) {
  std::vector<AtomProduct> g;
  for (auto& x : gens) {
    if (x.zero) continue;
    if (!x.nonnegative()) throw DomainError("annihilator generator with negative exponent: " + x.to_string());
    if (x.is_unit()) return zero_module();
    g.push_back(std::move(x));
  }
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  std::vector<AtomProduct> out;
  for (std::size_t i = 0; i < g.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < g.size() && !redundant; ++j) redundant = j != i && divides(g[j], g[i]);
    if (!redundant) out.push_back(g[i]);
  }
  return CyclicAModule{out};
}

bool CyclicAModule::is_zero() const { return annihilator.size() == 1 && annihilator[0].is_unit(); }

AtomProduct CyclicAModule::generator() const {
  if (!principal()) throw DomainError("annihilator is not principal: " + to_string());
  return annihilator.empty() ? AtomProduct::zero_element() : annihilator[0];
}

unsigned CyclicAModule::crystalline_length(unsigned M) const {
  unsigned len = M;
  for (const auto& g : annihilator) len = std::min<unsigned>(len, unsigned(g.crystalline_valuation()));
  return len;
}

std::string CyclicAModule::to_string() const {
  if (is_free()) return "A";
  if (is_zero()) return "0";
  std::string s = "A/(";
  for (std::size_t i = 0; i < annihilator.size(); ++i) s += (i ? ", " : "") + annihilator[i].to_string();
  return s + ")";
}

bool operator==(const CyclicAModule& a, const CyclicAModule& b) { return a.annihilator == b.annihilator; }

Json to_json(const CyclicAModule& a) {
  Json j;
  Json g = Json::array();
  for (const auto& x : a.annihilator) g.push_back(to_json(x));
  j["annihilator"] = g;
  j["text"] = a.to_string();
  return j;
}

std::string Multiplier::to_string() const {
  std::string s = atoms.to_string();
  for (const auto& u : units)
    s += "·u_{" + std::to_string(u.i) + "," + std::to_string(u.j) + "}" +
         (u.exponent == 1 ? "" : "^" + std::to_string(u.exponent));
  return s;
}

Multiplier operator*(const Multiplier& a, const Multiplier& b) {
  return {a.atoms * b.atoms, merge_units(a.units, b.units)};
}

MackeyDescriptor MackeyDescriptor::W() {
  MackeyDescriptor d;
  d.kind = MackeyKind::W;
  return d;
}

MackeyDescriptor MackeyDescriptor::trW(int r) {
  if (r < 0) throw DomainError("trW needs r >= 0");
  MackeyDescriptor d;
  d.kind = MackeyKind::TrW;
  d.r = r;
  return d;
}

MackeyDescriptor MackeyDescriptor::phiW(int r) {
  if (r < -1) throw DomainError("phiW needs r >= -1");
  if (r == -1) return W();
  MackeyDescriptor d;
  d.kind = MackeyKind::PhiW;
  d.r = r;
  return d;
}

MackeyDescriptor MackeyDescriptor::constR() {
  MackeyDescriptor d;
  d.kind = MackeyKind::ConstR;
  return d;
}

MackeyDescriptor MackeyDescriptor::quotient(const MackeyDescriptor& inner, const AtomProduct& divisor) {
  if (!divisor.nonnegative()) throw DomainError("quotient divisor must be in A");
  MackeyDescriptor d;
  d.kind = MackeyKind::Quotient;
  d.inner = std::make_shared<const MackeyDescriptor>(inner);
  d.divisor = divisor;
  return d;
}

MackeyDescriptor MackeyDescriptor::trPhi(int s, int r) {
  if (r < 0 || s < r) throw DomainError("trPhi needs 0 <= r <= s");
  MackeyDescriptor d;
  d.kind = MackeyKind::TrPhi;
  d.s = s;
  d.r = r;
  return d;
}

int MackeyDescriptor::phi_level() const {
  switch (kind) {
    case MackeyKind::PhiW:
    case MackeyKind::TrPhi: return r;
    case MackeyKind::Quotient: return inner->phi_level();
    default: return -1;
  }
}

std::string MackeyDescriptor::to_string() const {
  auto grp = [](int k) { return k == 0 ? std::string("e") : "C_{p^" + std::to_string(k) + "}"; };
  switch (kind) {
    case MackeyKind::Zero: return "0";
    case MackeyKind::W: return "W";
    case MackeyKind::TrW: return "tr_{" + grp(r) + "}W";
    case MackeyKind::PhiW: return "Φ^{" + grp(r) + "}W";
    case MackeyKind::ConstR: return "R";
    case MackeyKind::TrPhi: return "tr_{" + grp(s) + "}Φ^{" + grp(r) + "}W";
    case MackeyKind::Quotient: return inner->to_string() + "/(" + divisor.to_string() + ")";
  }
  return "?";
}

bool operator==(const MackeyDescriptor& a, const MackeyDescriptor& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case MackeyKind::TrW:
    case MackeyKind::PhiW: return a.r == b.r;
    case MackeyKind::TrPhi: return a.r == b.r && a.s == b.s;
    case MackeyKind::Quotient: return a.divisor == b.divisor && *a.inner == *b.inner;
    default: return true;
  }
}

Json to_json(const MackeyDescriptor& d) {
  static const char* names[] = {"zero", "W", "trW", "phiW", "constR", "quotient", "trPhi"};
  Json j;
  j["kind"] = names[int(d.kind)];
  Json params = Json::object();
  switch (d.kind) {
    case MackeyKind::TrW:
    case MackeyKind::PhiW: params["r"] = d.r; break;
    case MackeyKind::TrPhi:
      params["s"] = d.s;
      params["r"] = d.r;
      break;
    case MackeyKind::Quotient:
      params["inner"] = to_json(*d.inner);
      params["divisor"] = to_json(d.divisor);
      break;
    default: break;
  }
  j["params"] = params;
  j["text"] = d.to_string();
  return j;
}

CyclicAModule realize(const MackeyDescriptor& d, unsigned k) {
  using AP = AtomProduct;
  const int kk = int(k);
  switch (d.kind) {
    case MackeyKind::Zero: return CyclicAModule::zero_module();
    case MackeyKind::W: return CyclicAModule::quotient({AP::qA_pk(k + 1)});
    case MackeyKind::TrW: return CyclicAModule::quotient({AP::qA_pk(unsigned(std::min(kk, d.r)) + 1)});
    case MackeyKind::PhiW:
      if (kk <= d.r) return CyclicAModule::zero_module();
      return CyclicAModule::quotient({AP::phi_qA_pk(unsigned(d.r + 1), unsigned(kk - d.r))});
    case MackeyKind::TrPhi:
      if (kk <= d.r) return CyclicAModule::zero_module();
      return CyclicAModule::quotient({AP::phi_qA_pk(unsigned(d.r + 1), unsigned(std::min(kk, d.s) - d.r))});
    case MackeyKind::ConstR: return CyclicAModule::quotient({AP::qA_pk(1)});
    case MackeyKind::Quotient: {
      auto gens = realize(*d.inner, k).annihilator;
      gens.push_back(d.divisor);
      return CyclicAModule::quotient(gens);
    }
  }
  throw InternalError("unknown descriptor kind");
}

MackeyTower realize_tower(const MackeyDescriptor& d, u64 p, unsigned n) {
  MackeyTower t;
  t.p = p;
  for (unsigned k = 0; k <= n; ++k) t.levels.push_back(realize(d, k));
  const MackeyDescriptor* base = &d;
  while (base->kind == MackeyKind::Quotient) base = base->inner.get();
  for (unsigned k = 0; k < n; ++k) {
    Multiplier res = Multiplier::one(), tr = tr_step(k);
    switch (base->kind) {
      case MackeyKind::Zero: tr = Multiplier::one(); break;
      case MackeyKind::ConstR: tr = Multiplier::of(AtomProduct::p_power(1)); break;
      case MackeyKind::TrW:
      case MackeyKind::TrPhi: {
        int cut = base->kind == MackeyKind::TrW ? base->r : base->s;
        if (int(k) >= cut) std::swap(res, tr);
        break;
      }
      default: break;
    }
    t.res.push_back(res);
    t.tr.push_back(tr);
  }
  return t;
}

MackeyTower witt_tower(u64 p, unsigned n) {
  require_prime(p);
  return realize_tower(MackeyDescriptor::W(), p, n);
}

MackeyRing make_mackey_ring(const Model& base, unsigned n) {
  unsigned nn = std::max(n, 1u);
  Model m = unit_table_model(base, nn, nn);
  if (m.kind != ModelKind::Crystalline) {
    u64 d0 = u64(std::max(0L, orientation(m).degree()));
    u64 deg = 0;
    for (unsigned j = 0; j <= nn; ++j) deg += d0 * sat_pow(m.p, j);
    u64 need = 2 * (deg + unit_table_degree(m, nn, nn)) + 2;
    if (need > (1u << 14)) throw DomainError("Mackey ring precision too large");
    m = m.with_precision(std::max<unsigned>(m.N, unsigned(need)), m.M);
  }
  Prism P = make_prism(m);
  return MackeyRing{m, extended_units(P, nn, nn)};
}

LocalQElem to_ring(const Multiplier& mult, const MackeyRing& R) {
  LocalQElem x = to_ring(mult.atoms, R.model);
  for (const auto& u : mult.units) x = x * unit_power(R.units.at(u.i, u.j), u.exponent);
  return x;
}

bool axiom_check(const MackeyTower& t, const MackeyRing& R) {
  if (t.p != R.model.p) throw ModelMismatch("tower and ring have different primes");
  const Multiplier p = Multiplier::of(AtomProduct::p_power(1));
  for (unsigned k = 0; k < t.top(); ++k)
    if (!congruent_in(t.res[k] * t.tr[k], p, t.levels[k], R)) return false;
  return true;
}

ExactnessReport exactness_report(const MackeyTower& A, const MackeyTower& B, const MackeyTower& C,
                                 const std::vector<Multiplier>& f, const std::vector<Multiplier>& g,
                                 const MackeyRing& R, std::uint64_t seed) {
  const std::size_t L = A.levels.size();
  if (B.levels.size() != L || C.levels.size() != L || f.size() != L || g.size() != L)
    throw DomainError("exactness_check: incompatible shapes");
  if (A.p != R.model.p || B.p != R.model.p || C.p != R.model.p)
    throw ModelMismatch("towers and ring have different primes");
  ExactnessReport rep;
  Fail fail{rep};
  if (R.model.kind == ModelKind::Crystalline) check_crystalline(A, B, C, f, g, R, fail);
  else check_symbolic(A, B, C, f, g, R, seed, fail);
  return rep;
}

bool exactness_check(const MackeyTower& A, const MackeyTower& B, const MackeyTower& C,
                     const std::vector<Multiplier>& f, const std::vector<Multiplier>& g, const MackeyRing& R) {
  return exactness_report(A, B, C, f, g, R).ok;
}

std::vector<Multiplier> transfer_inclusion(int r, int s, unsigned n) {
  if (r < 0 || (s >= 0 && s < r)) throw DomainError("transfer_inclusion needs 0 <= r <= s");
  std::vector<Multiplier> out;
  for (unsigned k = 0; k <= n; ++k) {
    Multiplier m = Multiplier::one();
    int top = s < 0 ? int(k) : std::min(int(k), s);
    for (int j = r; j < top; ++j) m = m * tr_step(unsigned(j));
    out.push_back(m);
  }
  return out;
}

std::vector<MackeySequence> example_sequences(u64 p) {
  require_prime(p);
  using D = MackeyDescriptor;
  const unsigned n = 2;
  std::vector<Multiplier> ones(n + 1, Multiplier::one());
  std::vector<MackeySequence> out;
  out.push_back({"tr_e W -> W -> Φ^e W", realize_tower(D::trW(0), p, n), realize_tower(D::W(), p, n),
                 realize_tower(D::phiW(0), p, n), transfer_inclusion(0, -1, n), ones});
  out.push_back({"tr_{C_p} W -> W -> Φ^{C_p} W", realize_tower(D::trW(1), p, n), realize_tower(D::W(), p, n),
                 realize_tower(D::phiW(1), p, n), transfer_inclusion(1, -1, n), ones});
  out.push_back({"tr_e W -> tr_{C_p} W -> Φ^e tr_{C_p} W", realize_tower(D::trW(0), p, n),
                 realize_tower(D::trW(1), p, n), realize_tower(D::trPhi(1, 0), p, n), transfer_inclusion(0, 1, n),
                 ones});
  return out;
}

}  // namespace prismslice
