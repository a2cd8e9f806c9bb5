#include "prismslice/rings.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "prismslice/errors.hpp"
#include "zmod.hpp"

namespace prismslice {

std::string to_string(ModelKind k) {
  switch (k) {
    case ModelKind::QCrystalline: return "qcrys";
    case ModelKind::PerfectQ: return "perfq";
    case ModelKind::Crystalline: return "crys";
    case ModelKind::Kisin: return "kisin";
  }
  return "?";
}

Precision default_precision() {
  Precision pr;
  if (const char* env = std::getenv("PRISMSLICE_PRECISION")) {
    unsigned n = 0, m = 0;
    char comma = 0;
    std::istringstream is(env);
    if (is >> n >> comma >> m && comma == ',' && n > 0 && m > 0) {
      pr.N = n;
      pr.M = m;
    }
  }
  return pr;
}

static void check_precision(u64 p, unsigned N, unsigned M) {
  require_prime(p);
  if (N == 0 || M == 0) throw PrecisionExhausted("precision must be positive");
  if (sat_pow(p, M) >= (u64(1) << 63))
    throw DomainError("p^M must stay below 2^63 (p=" + std::to_string(p) + ", M=" + std::to_string(M) + ")");
}

Model Model::q_crystalline(u64 p, Precision prec) {
  check_precision(p, prec.N, prec.M);
  return Model{ModelKind::QCrystalline, p, 0, prec.N, prec.M};
}

Model Model::perfect_q(u64 p, unsigned depth, Precision prec) {
  check_precision(p, prec.N, prec.M);
  if (depth < 1) throw DomainError("perfect_q model needs depth >= 1");
  return Model{ModelKind::PerfectQ, p, depth, prec.N, prec.M};
}

Model Model::crystalline(u64 p, unsigned M) {
  check_precision(p, 1, M);
  return Model{ModelKind::Crystalline, p, 0, 1, M};
}

Model Model::kisin(u64 p, Precision prec) {
  check_precision(p, prec.N, prec.M);
  return Model{ModelKind::Kisin, p, 0, prec.N, prec.M};
}

bool Model::same_ring(const Model& o) const {
  auto family = [](ModelKind k) { return k == ModelKind::PerfectQ ? ModelKind::QCrystalline : k; };
  return family(kind) == family(o.kind) && p == o.p && depth == o.depth;
}

Model Model::with_precision(unsigned n, unsigned m) const {
  Model r = *this;
  check_precision(p, n, m);
  r.N = kind == ModelKind::Crystalline ? 1 : n;
  r.M = m;
  return r;
}

Model Model::with_depth(unsigned e) const {
  if (!is_q()) throw ModelMismatch("depth only exists for the q-models");
  Model r = *this;
  r.depth = e;
  if (r.kind == ModelKind::QCrystalline && e > 0) r.kind = ModelKind::PerfectQ;
  return r;
}

std::string Model::name() const {
  std::string s = prismslice::to_string(kind) + "(p=" + std::to_string(p);
  if (kind == ModelKind::PerfectQ) s += ",e=" + std::to_string(depth);
  return s + ")";
}

bool operator==(const Model& a, const Model& b) {
  return a.kind == b.kind && a.p == b.p && a.depth == b.depth && a.N == b.N && a.M == b.M;
}

// ---------------------------------------------------------------------------

LocalQElem::LocalQElem(const Model& model, std::vector<u64> coeffs, unsigned N, unsigned M, bool exact_poly)
    : model_(model), N_(N), M_(M), c_(std::move(coeffs)), poly_(exact_poly) {
  if (N_ == 0 || M_ == 0) throw PrecisionExhausted("precision dropped to zero in " + model.name());
  if (model_.kind == ModelKind::Crystalline) N_ = 1;
  if (c_.size() > N_) {
    for (std::size_t k = N_; k < c_.size(); ++k)
      if (c_[k] != 0) poly_ = false;
    c_.resize(N_);
  }
  c_.resize(N_, 0);
  u64 mod = sat_pow(model_.p, M_);
  for (auto& x : c_) x %= mod;
}

u64 LocalQElem::modulus() const { return sat_pow(model_.p, M_); }

long LocalQElem::degree() const {
  for (long k = long(c_.size()) - 1; k >= 0; --k)
    if (c_[k]) return k;
  return -1;
}

bool LocalQElem::is_zero() const { return degree() < 0; }

unsigned LocalQElem::p_content() const {
  unsigned v = M_;
  for (u64 x : c_) {
    if (!x) continue;
    unsigned e = 0;
    while (x % model_.p == 0) {
      x /= model_.p;
      ++e;
    }
    v = std::min(v, e);
  }
  return v;
}

unsigned LocalQElem::w_order() const {
  for (unsigned k = 0; k < c_.size(); ++k)
    if (c_[k] % model_.p) return k;
  return N_;
}

LocalQElem LocalQElem::reduced(unsigned N, unsigned M) const {
  N = std::min(N, N_);
  M = std::min(M, M_);
  bool poly = poly_ && degree() < long(N);
  return LocalQElem(model_, std::vector<u64>(c_.begin(), c_.begin() + std::min<std::size_t>(N, c_.size())), N, M,
                    poly);
}

std::string LocalQElem::to_string() const {
  std::ostringstream os;
  os << "[";
  long d = degree();
  for (long k = 0; k <= d; ++k) os << (k ? ", " : "") << c_[k];
  os << "]";
  if (!poly_) os << " + O(t^" << N_ << ")";
  os << " mod " << model_.p << "^" << M_;
  return os.str();
}

// ---------------------------------------------------------------------------

namespace {

void require_same(const LocalQElem& a, const LocalQElem& b) {
  if (!a.model().same_ring(b.model()))
    throw ModelMismatch("model mismatch: " + a.model().name() + " vs " + b.model().name());
}

Zmod zmod_of(const LocalQElem& x) { return Zmod(x.modulus()); }

LocalQElem make(const LocalQElem& like, std::vector<u64> c, unsigned N, unsigned M, bool poly) {
  return LocalQElem(like.model(), std::move(c), N, M, poly);
}

std::vector<u64> reduce_to(const std::vector<u64>& c, std::size_t L, u64 mod) {
  std::vector<u64> r(L, 0);
  for (std::size_t k = 0; k < std::min(L, c.size()); ++k) r[k] = c[k] % mod;
  return r;
}

}  // namespace

LocalQElem constant(const Model& m, std::int64_t c) {
  Zmod Z(sat_pow(m.p, m.M));
  return LocalQElem(m, {Z.from_i64(c)}, m.N, m.M, true);
}

LocalQElem zero(const Model& m) { return constant(m, 0); }
LocalQElem one(const Model& m) { return constant(m, 1); }

LocalQElem variable(const Model& m) {
  if (m.kind == ModelKind::Crystalline) return zero(m);
  return LocalQElem(m, {0, 1}, m.N, m.M, m.N > 1);
}

LocalQElem ring_add(const LocalQElem& a, const LocalQElem& b) {
  require_same(a, b);
  unsigned N = std::min(a.prec_w(), b.prec_w()), M = std::min(a.prec_p(), b.prec_p());
  Zmod Z(sat_pow(a.model().p, M));
  std::vector<u64> c(N);
  for (unsigned k = 0; k < N; ++k) c[k] = Z.add(a.coeff(k) % Z.mod, b.coeff(k) % Z.mod);
  return make(a, std::move(c), N, M, a.exact_poly() && b.exact_poly());
}

LocalQElem ring_neg(const LocalQElem& a) {
  Zmod Z = zmod_of(a);
  std::vector<u64> c(a.coeffs());
  for (auto& x : c) x = Z.neg(x);
  return make(a, std::move(c), a.prec_w(), a.prec_p(), a.exact_poly());
}

LocalQElem ring_sub(const LocalQElem& a, const LocalQElem& b) { return ring_add(a, ring_neg(b)); }

LocalQElem ring_scale(const LocalQElem& a, std::int64_t s) {
  Zmod Z = zmod_of(a);
  u64 f = Z.from_i64(s);
  std::vector<u64> c(a.coeffs());
  for (auto& x : c) x = Z.mul(x, f);
  return make(a, std::move(c), a.prec_w(), a.prec_p(), a.exact_poly());
}

LocalQElem ring_mul(const LocalQElem& a, const LocalQElem& b) {
  require_same(a, b);
  unsigned N = std::min(a.prec_w(), b.prec_w()), M = std::min(a.prec_p(), b.prec_p());
  Zmod Z(sat_pow(a.model().p, M));
  auto c = mul_trunc(reduce_to(a.coeffs(), N, Z.mod), reduce_to(b.coeffs(), N, Z.mod), N, Z);
  long da = a.degree(), db = b.degree();
  bool poly = a.exact_poly() && b.exact_poly() && (da < 0 || db < 0 || da + db < long(N));
  return make(a, std::move(c), N, M, poly);
}

LocalQElem ring_pow(const LocalQElem& a, u64 e) {
  LocalQElem r = constant(a.model().with_precision(a.prec_w(), a.prec_p()), 1);
  LocalQElem b = a;
  while (e) {
    if (e & 1) r = ring_mul(r, b);
    e >>= 1;
    if (e) b = ring_mul(b, b);
  }
  return r;
}

LocalQElem operator+(const LocalQElem& a, const LocalQElem& b) { return ring_add(a, b); }
LocalQElem operator-(const LocalQElem& a, const LocalQElem& b) { return ring_sub(a, b); }
LocalQElem operator-(const LocalQElem& a) { return ring_neg(a); }
LocalQElem operator*(const LocalQElem& a, const LocalQElem& b) { return ring_mul(a, b); }

bool operator==(const LocalQElem& a, const LocalQElem& b) {
  if (!a.model().same_ring(b.model())) return false;
  return ring_sub(a, b).is_zero();
}

LocalQElem u_power(const Model& m, std::int64_t k) {
  switch (m.kind) {
    case ModelKind::Crystalline:
      return one(m);
    case ModelKind::Kisin: {
      if (k < 0) throw DomainError("z is not invertible");
      std::vector<u64> c(std::size_t(k) + 1, 0);
      c[k] = 1;
      return LocalQElem(m, std::move(c), m.N, m.M, k < std::int64_t(m.N));
    }
    default: {
      LocalQElem base = LocalQElem(m, {1, 1}, m.N, m.M, m.N > 1);
      LocalQElem r = ring_pow(base, u64(k < 0 ? -k : k));
      return k < 0 ? inverse(r) : r;
    }
  }
}

LocalQElem q_power(const Model& m, std::int64_t a) {
  if (!m.is_q()) throw ModelMismatch("q only exists in the q-models");
  return u_power(m, a * std::int64_t(sat_pow(m.p, m.depth)));
}

LocalQElem frobenius(const LocalQElem& x, unsigned k) {
  const Model& m = x.model();
  if (k == 0 || m.kind == ModelKind::Crystalline) return x;
  unsigned N = x.prec_w();
  Zmod Z = zmod_of(x);
  LocalQElem cur = x;
  for (unsigned step = 0; step < k; ++step) {
    long d = cur.degree();
    std::vector<u64> out(N, 0);
    if (m.kind == ModelKind::Kisin) {
      for (long j = 0; j <= d; ++j)
        if (u64(j) * m.p < N) out[j * m.p] = cur.coeff(j);
    } else if (d >= 0) {
      // Horner in s = (1+t)^p - 1
      std::vector<u64> s(m.p + 1, 0);
      for (u64 j = 1; j <= m.p; ++j) s[j] = Z.binom_small(m.p, j);
      std::vector<u64> acc{cur.coeff(d)};
      for (long j = d - 1; j >= 0; --j) {
        acc = mul_trunc(acc, s, std::min<std::size_t>(N, acc.size() + m.p), Z);
        acc[0] = Z.add(acc[0], cur.coeff(j));
      }
      for (std::size_t j = 0; j < acc.size() && j < N; ++j) out[j] = acc[j];
    }
    bool poly = cur.exact_poly() && (d < 0 || u64(d) * m.p < N);
    cur = make(x, std::move(out), N, x.prec_p(), poly);
  }
  return cur;
}

std::optional<LocalQElem> divide_by_p_power(const LocalQElem& x, unsigned t) {
  if (t == 0) return x;
  if (t >= x.prec_p()) throw PrecisionExhausted("division by p^" + std::to_string(t) + " exhausts p-precision");
  u64 pt = sat_pow(x.model().p, t);
  std::vector<u64> c(x.coeffs());
  for (auto& v : c) {
    if (v % pt) return std::nullopt;
    v /= pt;
  }
  return make(x, std::move(c), x.prec_w(), x.prec_p() - t, x.exact_poly());
}

LocalQElem delta(const LocalQElem& x) {
  LocalQElem diff = ring_sub(frobenius(x, 1), ring_pow(x, x.model().p));
  auto d = divide_by_p_power(diff, 1);
  if (!d) throw InternalError("phi(x) - x^p not divisible by p");
  return *d;
}

LocalQElem q_integer(const Model& m, u64 n, unsigned level) {
  if (m.kind == ModelKind::Kisin) throw ModelMismatch("q-integers do not exist in the Kisin model");
  if (m.kind == ModelKind::Crystalline) return constant(m, std::int64_t(n));
  if (level > m.depth) throw DomainError("q_integer level exceeds depth");
  LocalQElem w = u_power(m, std::int64_t(sat_pow(m.p, m.depth - level)));
  LocalQElem acc = zero(m), x = one(m);
  for (u64 i = 0; i < n; ++i) {
    acc = ring_add(acc, x);
    if (i + 1 < n) x = ring_mul(x, w);
  }
  return acc;
}

LocalQElem orientation(const Model& m) {
  switch (m.kind) {
    case ModelKind::QCrystalline: return q_integer(m, m.p, 0);
    case ModelKind::PerfectQ: return q_integer(m, m.p, 1);
    case ModelKind::Crystalline: return constant(m, std::int64_t(m.p));
    case ModelKind::Kisin: return ring_sub(variable(m), constant(m, std::int64_t(m.p)));
  }
  throw InternalError("unknown model");
}

LocalQElem qA_pk(const Model& m, unsigned k) {
  LocalQElem r = one(m), xi = orientation(m);
  for (unsigned i = 0; i < k; ++i) {
    r = ring_mul(r, xi);
    if (i + 1 < k) xi = frobenius(xi, 1);
  }
  return r;
}

LocalQElem qA_bracket(const Model& m, u64 n) { return qA_pk(m, vp(m.p, n)); }

LocalQElem qA_factorial(const Model& m, u64 n) {
  LocalQElem r = one(m);
  std::vector<LocalQElem> pk;
  for (u64 j = 1; j <= n; ++j) {
    unsigned v = vp(m.p, j);
    while (pk.size() <= v) pk.push_back(qA_pk(m, unsigned(pk.size())));
    if (v) r = ring_mul(r, pk[v]);
  }
  return r;
}

LocalQElem relabel_depth(const LocalQElem& x, unsigned new_depth) {
  if (!x.model().is_q()) throw ModelMismatch("relabel_depth needs a q-model");
  if (new_depth < x.model().depth) throw DomainError("relabel_depth cannot lower the depth");
  return LocalQElem(x.model().with_depth(new_depth), x.coeffs(), x.prec_w(), x.prec_p(), x.exact_poly());
}

bool is_unit(const LocalQElem& x) { return x.coeff(0) % x.model().p != 0; }

LocalQElem inverse(const LocalQElem& x) {
  if (!is_unit(x)) throw DomainError("inverse of a non-unit");
  Zmod Z = zmod_of(x);
  auto c = series_inverse(x.coeffs(), x.prec_w(), Z);
  return make(x, std::move(c), x.prec_w(), x.prec_p(), x.degree() <= 0);
}

// ---------------------------------------------------------------------------
// Weierstrass division

namespace {

unsigned valuation(u64 v, u64 p, unsigned cap) {
  if (!v) return cap;
  unsigned e = 0;
  while (v % p == 0 && e < cap) {
    v /= p;
    ++e;
  }
  return e;
}

struct CoreResult {
  std::vector<u64> q;  // length L - d
  std::vector<u64> r;  // length d
};

// Division at length L by b with w-order d (b arbitrary truncated series).
CoreResult weier_core(std::vector<u64> a, const std::vector<u64>& b, unsigned d, unsigned L, const Zmod& Z,
                      unsigned max_iter) {
  a.resize(L, 0);
  std::vector<u64> blo(b.begin(), b.begin() + d);
  std::vector<u64> bhi(L - d, 0);
  for (unsigned k = d; k < L && k < b.size(); ++k) bhi[k - d] = b[k];
  auto V = series_inverse(bhi, L - d, Z);
  CoreResult out{std::vector<u64>(L - d, 0), {}};
  std::vector<u64> r = std::move(a);
  for (unsigned it = 0;; ++it) {
    std::vector<u64> hi(r.begin() + d, r.end());
    if (std::all_of(hi.begin(), hi.end(), [](u64 v) { return v == 0; })) break;
    if (it > max_iter) throw InternalError("Weierstrass iteration did not converge");
    auto c = mul_trunc(hi, V, L - d, Z);
    for (unsigned k = 0; k < L - d; ++k) out.q[k] = Z.add(out.q[k], c[k]);
    auto bc = mul_trunc(blo, c, L, Z);
    std::vector<u64> nr(L, 0);
    for (unsigned k = 0; k < L; ++k) nr[k] = Z.sub(k < d ? r[k] : 0, bc[k]);
    r = std::move(nr);
  }
  r.resize(d);
  out.r = std::move(r);
  return out;
}

// Euclidean division by a polynomial whose leading coefficient (degree d) is a unit.
CoreResult euclid(std::vector<u64> a, const std::vector<u64>& b, unsigned d, const Zmod& Z) {
  u64 linv = Z.inv(b[d]);
  long da = long(a.size()) - 1;
  while (da >= 0 && a[da] == 0) --da;
  CoreResult out;
  out.q.assign(da >= long(d) ? da - d + 1 : 0, 0);
  for (long k = da; k >= long(d); --k) {
    u64 c = Z.mul(a[k], linv);
    if (!c) continue;
    out.q[k - d] = c;
    for (unsigned j = 0; j <= d; ++j) a[k - d + j] = Z.sub(a[k - d + j], Z.mul(c, b[j]));
  }
  a.resize(d, 0);
  out.r = std::move(a);
  return out;
}

bool distinguished_poly(const LocalQElem& b, unsigned d) { return b.exact_poly() && b.degree() == long(d); }

}  // namespace

Division weierstrass_divide(const LocalQElem& a, const LocalQElem& b) {
  require_same(a, b);
  const Model& m = a.model();
  const u64 p = m.p;
  unsigned N = std::min(a.prec_w(), b.prec_w()), M = std::min(a.prec_p(), b.prec_p());
  Zmod Z(sat_pow(p, M));
  auto ac = reduce_to(a.coeffs(), N, Z.mod);
  auto bc = reduce_to(b.coeffs(), N, Z.mod);
  unsigned d = b.w_order();
  if (d >= N) throw PrecisionExhausted("divisor has no unit coefficient below t^" + std::to_string(N));
  if (d == 0) {
    LocalQElem q = ring_mul(a, inverse(b));
    return {q, make(a, {}, N, M, true)};
  }
  bool dist = distinguished_poly(b, d);
  if (dist && a.exact_poly() && a.degree() < long(N)) {
    auto res = euclid(ac, bc, d, Z);
    return {make(a, res.q, N, M, true), make(a, res.r, N, M, true)};
  }
  CoreResult res = dist ? euclid(ac, bc, d, Z) : weier_core(ac, bc, d, N, Z, M + 2);
  res.q.resize(N - d, 0);

  // Sensitivity to the unknown tail: divide t^N the same way.
  std::vector<u64> tn(N + 1, 0);
  tn[N] = 1;
  CoreResult sens = dist ? euclid(tn, bc, d, Z) : weier_core(tn, bc, d, N + 1, Z, M + 2);
  unsigned nu = M;
  for (u64 v : sens.r) nu = std::min(nu, valuation(v, p, M));
  unsigned Mr = std::min(M, nu);
  if (Mr == 0) throw PrecisionExhausted("Weierstrass remainder has no p-adic precision left");
  // Quotient coefficient k is known mod p^{val Q(t^N)_k}; keep the longest prefix that
  // retains at least half of the remainder's p-precision.
  std::vector<unsigned> run(N - d);
  unsigned cur = Mr;
  for (unsigned k = 0; k < N - d; ++k) {
    cur = std::min(cur, valuation(k < sens.q.size() ? sens.q[k] : 0, p, M));
    run[k] = cur;
  }
  unsigned target = (Mr + 1) / 2;
  unsigned Nq = 0;
  while (Nq < N - d && run[Nq] >= target) ++Nq;
  unsigned Mq = Nq ? run[Nq - 1] : run[0];
  if (Nq == 0) Nq = 1;
  if (Mq == 0) throw PrecisionExhausted("Weierstrass quotient has no precision left");
  res.q.resize(Nq);
  return {make(a, res.q, Nq, Mq, false), make(a, res.r, N, Mr, true)};
}

LocalQElem remainder_mod(const LocalQElem& a, const LocalQElem& b) {
  require_same(a, b);
  unsigned s = b.p_content();
  if (s >= b.prec_p()) throw DomainError("reduction modulo zero");
  if (s > 0) {
    auto bu = divide_by_p_power(b, s);
    if (!is_unit(*bu)) throw DomainError("ideal p^s * (non-unit) is not supported");
    unsigned M = std::min(a.prec_p(), s);
    return make(a, reduce_to(a.coeffs(), a.prec_w(), sat_pow(a.model().p, M)), a.prec_w(), M, a.exact_poly());
  }
  return weierstrass_divide(a, b).remainder;
}

bool divisible_by(const LocalQElem& a, const LocalQElem& b) { return remainder_mod(a, b).is_zero(); }

bool congruent_mod(const LocalQElem& a, const LocalQElem& b, const LocalQElem& m) {
  return divisible_by(ring_sub(a, b), m);
}

std::optional<LocalQElem> divide_exact(const LocalQElem& a, const LocalQElem& b) {
  require_same(a, b);
  unsigned s = b.p_content();
  if (s >= b.prec_p()) throw DomainError("division by zero");
  LocalQElem aa = a, bb = b;
  if (s > 0) {
    auto as = divide_by_p_power(a, s);
    if (!as) return std::nullopt;
    aa = *as;
    bb = *divide_by_p_power(b, s);
  }
  if (is_unit(bb)) return ring_mul(aa, inverse(bb));
  Division dv = weierstrass_divide(aa, bb);
  if (!dv.remainder.is_zero()) return std::nullopt;
  return dv.quotient;
}

bool associates(const LocalQElem& a, const LocalQElem& b) {
  if (b.is_zero() || a.is_zero()) return a.is_zero() && b.is_zero();
  auto q = divide_exact(a, b);
  return q && is_unit(*q);
}

bool associates_p_power_mod(const LocalQElem& a, unsigned s, const LocalQElem& ideal) {
  require_same(a, ideal);
  if (is_unit(ideal)) return true;  // A/(unit) = 0
  LocalQElem r = remainder_mod(a, ideal);
  LocalQElem pr = remainder_mod(ring_pow(constant(a.model(), std::int64_t(a.model().p)), s), ideal);
  if (pr.is_zero()) return r.is_zero();
  if (r.p_content() < s) return false;
  auto v = divide_by_p_power(r, s);
  return v && is_unit(*v);
}

Json to_json(const LocalQElem& x) {
  Json j;
  j["model"] = x.model().name();
  j["basis"] = x.model().kind == ModelKind::Kisin ? "z^k" : x.model().kind == ModelKind::Crystalline ? "1" : "(u-1)^k";
  j["prec_w"] = x.prec_w();
  j["prec_p"] = x.prec_p();
  j["exact"] = x.exact_poly();
  Json c = Json::array();
  long d = x.degree();
  for (long k = 0; k <= d; ++k) c.push_back(x.coeff(k));
  j["coeffs"] = c;
  return j;
}

}  // namespace prismslice
