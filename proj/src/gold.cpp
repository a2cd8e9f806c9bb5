#include "prismslice/gold.hpp"

#include <algorithm>
#include <tuple>
#include <vector>

#include "prismslice/errors.hpp"

namespace prismslice {

namespace {

template <class Map>
void clean(Map& m) {
  for (auto it = m.begin(); it != m.end();) it = it->second == 0 ? m.erase(it) : std::next(it);
}

template <class Map>
std::int64_t get(const Map& m, unsigned k) {
  auto it = m.find(k);
  return it == m.end() ? 0 : it->second;
}

std::string power(const std::string& base, std::int64_t e) {
  return e == 1 ? base : base + "^" + std::to_string(e);
}

}  // namespace

AtomProduct AtomProduct::zero_element() {
  AtomProduct a;
  a.zero = true;
  return a;
}

AtomProduct AtomProduct::p_power(std::int64_t k) {
  AtomProduct a;
  a.exp_p = k;
  return a;
}

AtomProduct AtomProduct::xi(unsigned j, std::int64_t k) {
  AtomProduct a;
  if (k) a.exp_xi[j] = k;
  return a;
}

AtomProduct AtomProduct::qA_pk(unsigned k) { return phi_qA_pk(0, k); }

AtomProduct AtomProduct::phi_qA_pk(unsigned r, unsigned k) {
  AtomProduct a;
  for (unsigned j = r; j < r + k; ++j) a.exp_xi[j] = 1;
  return a;
}

AtomProduct AtomProduct::factorial(u64 p, u64 n) {
  require_prime(p);
  AtomProduct a;
  for (unsigned j = 0;; ++j) {
    u64 pj = sat_pow(p, j + 1);
    if (pj > n) break;
    a.exp_xi[j] = std::int64_t(n / pj);
  }
  return a;
}

std::int64_t AtomProduct::xi_at(unsigned j) const { return get(exp_xi, j); }

bool AtomProduct::nonnegative() const {
  if (exp_p < 0) return false;
  return std::all_of(exp_xi.begin(), exp_xi.end(), [](const auto& kv) { return kv.second >= 0; });
}

std::int64_t AtomProduct::crystalline_valuation() const {
  if (zero) throw DomainError("valuation of zero");
  std::int64_t v = exp_p;
  for (const auto& [j, e] : exp_xi) v += e;
  return v;
}

std::string AtomProduct::to_string() const {
  if (zero) return "0";
  std::string s;
  auto add = [&](const std::string& t) { s += (s.empty() ? "" : "·") + t; };
  if (exp_p) add(power("p", exp_p));
  for (const auto& [j, e] : exp_xi) add(power("ξ_" + std::to_string(j), e));
  return s.empty() ? "1" : s;
}

AtomProduct operator*(const AtomProduct& a, const AtomProduct& b) {
  if (a.zero || b.zero) return AtomProduct::zero_element();
  AtomProduct r = a;
  r.exp_p += b.exp_p;
  for (const auto& [j, e] : b.exp_xi) r.exp_xi[j] += e;
  clean(r.exp_xi);
  return r;
}

AtomProduct operator/(const AtomProduct& a, const AtomProduct& b) {
  if (b.zero) throw DomainError("division by zero atom product");
  if (a.zero) return a;
  AtomProduct r = a;
  r.exp_p -= b.exp_p;
  for (const auto& [j, e] : b.exp_xi) r.exp_xi[j] -= e;
  clean(r.exp_xi);
  return r;
}

bool operator==(const AtomProduct& a, const AtomProduct& b) {
  if (a.zero || b.zero) return a.zero == b.zero;
  return a.exp_p == b.exp_p && a.exp_xi == b.exp_xi;
}

bool operator<(const AtomProduct& a, const AtomProduct& b) {
  return std::tie(a.zero, a.exp_p, a.exp_xi) < std::tie(b.zero, b.exp_p, b.exp_xi);
}

AtomProduct phi_shift(const AtomProduct& a, unsigned r) {
  if (a.zero) return a;
  AtomProduct s;
  s.exp_p = a.exp_p;
  for (const auto& [j, e] : a.exp_xi) s.exp_xi[j + r] = e;
  return s;
}

bool divides(const AtomProduct& a, const AtomProduct& b) {
  if (b.zero) return true;
  if (a.zero) return false;
  return (b / a).nonnegative();
}

AtomProduct atom_gcd(const AtomProduct& a, const AtomProduct& b) {
  if (a.zero) return b;
  if (b.zero) return a;
  AtomProduct g;
  g.exp_p = std::min(a.exp_p, b.exp_p);
  for (const auto& [j, e] : a.exp_xi) {
    std::int64_t m = std::min(e, b.xi_at(j));
    if (m) g.exp_xi[j] = m;
  }
  for (const auto& [j, e] : b.exp_xi)
    if (!a.exp_xi.count(j) && e < 0) g.exp_xi[j] = e;
  return g;
}

Json to_json(const AtomProduct& a) {
  Json j;
  j["zero"] = a.zero;
  j["p"] = a.exp_p;
  Json x = Json::object();
  for (const auto& [k, e] : a.exp_xi) x[std::to_string(k)] = e;
  j["xi"] = x;
  j["text"] = a.to_string();
  return j;
}

LocalQElem to_ring(const AtomProduct& a, const Model& m) {
  if (a.zero) return zero(m);
  if (!a.nonnegative()) throw DomainError("to_ring needs nonnegative exponents: " + a.to_string());
  LocalQElem r = ring_pow(constant(m, std::int64_t(m.p)), u64(a.exp_p));
  LocalQElem xi = orientation(m);
  unsigned at = 0;
  for (const auto& [j, e] : a.exp_xi) {
    xi = frobenius(xi, j - at);
    at = j;
    r = r * ring_pow(xi, u64(e));
  }
  return r;
}

GoldMonomial GoldMonomial::sigma(std::int64_t k) {
  GoldMonomial m;
  m.sigma_exp = k;
  return m;
}

GoldMonomial GoldMonomial::a(unsigned i, std::int64_t k) {
  GoldMonomial m;
  if (k) m.a_exp[i] = k;
  return m;
}

GoldMonomial GoldMonomial::u(unsigned i, std::int64_t k) {
  GoldMonomial m;
  if (k) m.u_exp[i] = k;
  return m;
}

GoldMonomial GoldMonomial::a_of(const PTypicalRep& alpha) {
  GoldMonomial m;
  m.a_exp = alpha.mult;
  return m;
}

GoldMonomial GoldMonomial::u_of(const PTypicalRep& alpha) {
  GoldMonomial m;
  m.u_exp = alpha.mult;
  return m;
}

bool GoldMonomial::nonnegative() const {
  auto nn = [](const auto& mp) {
    return std::all_of(mp.begin(), mp.end(), [](const auto& kv) { return kv.second >= 0; });
  };
  return sigma_exp >= 0 && nn(a_exp) && nn(u_exp);
}

std::string GoldMonomial::to_string() const {
  std::string s;
  auto add = [&](const std::string& t) { s += (s.empty() ? "" : " ") + t; };
  if (sigma_exp) add(power("σ", sigma_exp));
  for (const auto& [i, e] : a_exp) add(power("a_{λ_" + std::to_string(i) + "}", e));
  for (const auto& [i, e] : u_exp) add(power("u_{λ_" + std::to_string(i) + "}", e));
  return s.empty() ? "1" : s;
}

GoldMonomial operator*(const GoldMonomial& a, const GoldMonomial& b) {
  GoldMonomial r = a;
  r.sigma_exp += b.sigma_exp;
  for (const auto& [i, e] : b.a_exp) r.a_exp[i] += e;
  for (const auto& [i, e] : b.u_exp) r.u_exp[i] += e;
  clean(r.a_exp);
  clean(r.u_exp);
  return r;
}

GoldMonomial inverse(const GoldMonomial& m) {
  GoldMonomial r;
  r.sigma_exp = -m.sigma_exp;
  for (const auto& [i, e] : m.a_exp) r.a_exp[i] = -e;
  for (const auto& [i, e] : m.u_exp) r.u_exp[i] = -e;
  return r;
}

bool operator==(const GoldMonomial& a, const GoldMonomial& b) {
  return a.sigma_exp == b.sigma_exp && a.a_exp == b.a_exp && a.u_exp == b.u_exp;
}

Json to_json(const GoldMonomial& m) {
  Json j;
  j["sigma"] = m.sigma_exp;
  Json a = Json::object(), u = Json::object();
  for (const auto& [i, e] : m.a_exp) a[std::to_string(i)] = e;
  for (const auto& [i, e] : m.u_exp) u[std::to_string(i)] = e;
  j["a"] = a;
  j["u"] = u;
  j["text"] = m.to_string();
  return j;
}

PTypicalRep degree(const GoldMonomial& m) {
  PTypicalRep d;
  std::int64_t triv = m.sigma_exp;
  for (const auto& [i, e] : m.u_exp) triv += e;
  d.trivial_real = 2 * triv;
  for (const auto& [i, e] : m.a_exp) d = d + PTypicalRep::lambda(i, -e);
  for (const auto& [i, e] : m.u_exp) d = d + PTypicalRep::lambda(i, -e);
  return d;
}

GoldMonomial canonical_generator(u64 p, u64 i, const PTypicalRep& alpha) {
  require_prime(p);
  if (!alpha.actual() || alpha.mult_inf != 0 || alpha.trivial_real != 0)
    throw DomainError("canonical_generator needs an actual fixed-point-free alpha, got " + alpha.to_string());
  const std::int64_t ii = std::int64_t(i);
  if (dim_seq(alpha, 0) <= ii) return GoldMonomial::sigma(ii - dim_seq(alpha, 0)) * GoldMonomial::u_of(alpha);
  for (unsigned r = 1;; ++r) {
    std::int64_t dr = dim_seq(alpha, r), dr1 = dim_seq(alpha, r - 1);
    if (dr <= ii && ii < dr1) {
      GoldMonomial g = GoldMonomial::a(r - 1, dr1 - ii) * GoldMonomial::u(r - 1, ii - dr);
      for (const auto& [s, k] : alpha.mult) {
        if (s < r - 1) g = g * GoldMonomial::a(s, k);
        if (s >= r) g = g * GoldMonomial::u(s, k);
      }
      return g;
    }
    if (int(r) > alpha.top() + 1) throw InternalError("no case of the dimension dichotomy applies");
  }
}

RewriteTrace rewrite_ratio(const GoldMonomial& m1, const GoldMonomial& m2, std::mt19937_64* rng,
                           unsigned step_budget) {
  if (!(degree(m1) == degree(m2)))
    throw DomainError("reduce_ratio degree mismatch: " + degree(m1).to_string() + " vs " + degree(m2).to_string());
  GoldMonomial r = m1 * inverse(m2);
  RewriteTrace tr;
  // A move divides r by mono and multiplies the coefficient by coef (or the reverse when inv).
  struct Move {
    GoldMonomial mono;
    AtomProduct coef;
    bool inv;
  };
  auto r1 = [](unsigned j) {
    return std::pair{GoldMonomial::sigma() * GoldMonomial::a(j) * GoldMonomial::u(j, -1), AtomProduct::qA_pk(j + 1)};
  };
  auto r2 = [](unsigned i, unsigned j) {
    return std::pair{GoldMonomial::a(j) * GoldMonomial::u(i) * GoldMonomial::a(i, -1) * GoldMonomial::u(j, -1),
                     AtomProduct::phi_qA_pk(i + 1, j - i)};
  };
  auto a_at = [&](unsigned k) { return get(r.a_exp, k); };
  while (!(r == GoldMonomial())) {
    if (tr.steps++ >= step_budget) throw InternalError("rewrite step budget exhausted");
    std::vector<unsigned> idx;
    for (const auto& [k, e] : r.a_exp) idx.push_back(k);
    for (const auto& [k, e] : r.u_exp) idx.push_back(k);
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    std::vector<Move> moves;
    for (auto it = idx.rbegin(); it != idx.rend(); ++it) {
      unsigned j = *it;
      auto [mono, coef] = r1(j);
      if (r.sigma_exp > 0 && a_at(j) > 0 && get(r.u_exp, j) < 0) moves.push_back({mono, coef, false});
      if (r.sigma_exp < 0 && a_at(j) < 0 && get(r.u_exp, j) > 0) moves.push_back({mono, coef, true});
    }
    if (rng || moves.empty())
      for (unsigned i : idx)
        for (unsigned j : idx) {
          if (i >= j) continue;
          auto [mono, coef] = r2(i, j);
          if (a_at(j) > 0 && a_at(i) < 0) moves.push_back({mono, coef, false});
          if (a_at(j) < 0 && a_at(i) > 0) moves.push_back({mono, coef, true});
        }
    if (moves.empty()) throw InternalError("ratio of equal degree is not reducible: " + r.to_string());
    const Move& mv = rng ? moves[(*rng)() % moves.size()] : moves.front();
    if (mv.inv) {
      r = r * mv.mono;
      tr.coefficient = tr.coefficient / mv.coef;
    } else {
      r = r * inverse(mv.mono);
      tr.coefficient = tr.coefficient * mv.coef;
    }
  }
  return tr;
}

std::optional<AtomProduct> reduce_ratio(const GoldMonomial& m1, const GoldMonomial& m2) {
  AtomProduct c = rewrite_ratio(m1, m2).coefficient;
  if (!c.nonnegative()) return std::nullopt;
  return c;
}

bool key_identity(u64 p, u64 k) {
  require_prime(p);
  if (k == 0) throw DomainError("key_identity needs k >= 1");
  PTypicalRep b = brace_rep(p, k);
  auto c = reduce_ratio(GoldMonomial::sigma(std::int64_t(k)) * GoldMonomial::a_of(b), GoldMonomial::u_of(b));
  AtomProduct f = AtomProduct::factorial(p, p * k);
  if (!c || !(*c == f)) return false;
  u64 deg = 0;
  for (const auto& [j, e] : f.exp_xi) deg += u64(e) * (p - 1) * sat_pow(p, j);
  Model m = Model::perfect_q(p, 1, {unsigned(std::max<u64>(48, deg + 2)), 16});
  return associates(to_ring(*c, m), qA_factorial(m, p * k));
}

}  // namespace prismslice
