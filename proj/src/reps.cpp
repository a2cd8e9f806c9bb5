#include "prismslice/reps.hpp"

#include "prismslice/errors.hpp"

namespace prismslice {

namespace {

void clean(PTypicalRep& a) {
  for (auto it = a.mult.begin(); it != a.mult.end();)
    it = it->second == 0 ? a.mult.erase(it) : std::next(it);
}

std::int64_t as_signed(u64 x) { return std::int64_t(x); }

}  // namespace

PTypicalRep PTypicalRep::lambda(unsigned i, std::int64_t k) {
  PTypicalRep r;
  if (k) r.mult[i] = k;
  return r;
}

PTypicalRep PTypicalRep::lambda_inf(std::int64_t k) {
  PTypicalRep r;
  r.mult_inf = k;
  return r;
}

PTypicalRep PTypicalRep::trivial(std::int64_t k) {
  PTypicalRep r;
  r.trivial_real = k;
  return r;
}

std::int64_t PTypicalRep::at(unsigned i) const {
  auto it = mult.find(i);
  return it == mult.end() ? 0 : it->second;
}

std::int64_t PTypicalRep::complex_dim() const {
  std::int64_t d = mult_inf;
  for (const auto& [i, k] : mult) d += k;
  return d;
}

bool PTypicalRep::actual() const {
  if (mult_inf < 0 || trivial_real < 0) return false;
  for (const auto& [i, k] : mult)
    if (k < 0) return false;
  return true;
}

int PTypicalRep::top() const { return mult.empty() ? -1 : int(mult.rbegin()->first); }

std::string PTypicalRep::to_string() const {
  std::string s;
  auto term = [&](std::int64_t k, const std::string& name) {
    if (k == 0) return;
    if (!s.empty()) s += k < 0 ? " - " : " + ";
    else if (k < 0) s += "-";
    std::int64_t a = k < 0 ? -k : k;
    if (a != 1 || name.empty()) s += std::to_string(a);
    s += name;
  };
  term(trivial_real, "");
  for (const auto& [i, k] : mult) term(k, "λ_" + std::to_string(i));
  term(mult_inf, "λ_∞");
  return s.empty() ? "0" : s;
}

PTypicalRep operator+(const PTypicalRep& a, const PTypicalRep& b) {
  PTypicalRep r = a;
  for (const auto& [i, k] : b.mult) r.mult[i] += k;
  r.mult_inf += b.mult_inf;
  r.trivial_real += b.trivial_real;
  clean(r);
  return r;
}

PTypicalRep operator-(const PTypicalRep& a) { return -1 * a; }
PTypicalRep operator-(const PTypicalRep& a, const PTypicalRep& b) { return a + (-b); }

PTypicalRep operator*(std::int64_t k, const PTypicalRep& a) {
  PTypicalRep r;
  for (const auto& [i, m] : a.mult) r.mult[i] = k * m;
  r.mult_inf = k * a.mult_inf;
  r.trivial_real = k * a.trivial_real;
  clean(r);
  return r;
}

bool operator==(const PTypicalRep& a, const PTypicalRep& b) {
  return a.mult == b.mult && a.mult_inf == b.mult_inf && a.trivial_real == b.trivial_real;
}

Json to_json(const PTypicalRep& a) {
  Json j;
  Json m = Json::object();
  for (const auto& [i, k] : a.mult) m[std::to_string(i)] = k;
  j["lambda"] = m;
  j["lambda_inf"] = a.mult_inf;
  j["trivial_real"] = a.trivial_real;
  j["text"] = a.to_string();
  return j;
}

PTypicalRep bracket_rep(u64 p, u64 n) {
  require_prime(p);
  PTypicalRep r;
  if (n == 0) return r;
  r.mult_inf = 1;
  u64 ps = 1;
  for (unsigned s = 0; ps < n; ++s) {
    u64 next = sat_pow(p, s + 1);
    std::int64_t k = as_signed(ceil_div(n, ps)) - as_signed(ceil_div(n, next));
    if (k) r.mult[s] = k;
    ps = next;
  }
  return r;
}

PTypicalRep brace_rep(u64 p, u64 n) {
  require_prime(p);
  PTypicalRep r;
  u64 ps = 1;
  for (unsigned s = 0; ps <= n; ++s) {
    u64 next = sat_pow(p, s + 1);
    std::int64_t k = as_signed(n / ps) - as_signed(n / next);
    if (k) r.mult[s] = k;
    ps = next;
  }
  return r;
}

PTypicalRep p_typify(u64 p, const std::vector<u64>& exponents) {
  require_prime(p);
  PTypicalRep r;
  for (u64 e : exponents) {
    if (e == 0) ++r.mult_inf;
    else ++r.mult[vp(p, e)];
  }
  return r;
}

std::int64_t dim_seq(const PTypicalRep& a, unsigned r) {
  std::int64_t d = a.mult_inf;
  for (auto it = a.mult.lower_bound(r); it != a.mult.end(); ++it) d += it->second;
  return d;
}

PTypicalRep fixed_points(const PTypicalRep& a) {
  PTypicalRep r;
  for (const auto& [i, k] : a.mult)
    if (i > 0) r.mult[i - 1] = k;
  r.mult_inf = a.mult_inf;
  r.trivial_real = a.trivial_real;
  return r;
}

PTypicalRep restrict_brace_level(u64 p, u64 n, unsigned k) {
  require_prime(p);
  PTypicalRep r;
  r.mult_inf = as_signed(n / sat_pow(p, k));
  for (unsigned s = 0; s < k; ++s) {
    std::int64_t m = as_signed(n / sat_pow(p, s)) - as_signed(n / sat_pow(p, s + 1));
    if (m) r.mult[s] = m;
  }
  return r;
}

bool hill_yarnall_certificate(u64 p, u64 n) {
  PTypicalRep V = bracket_rep(p, n);
  if (dim_seq(V, 0) != as_signed(n)) return false;
  for (unsigned k = 0;; ++k) {
    u64 pk = sat_pow(p, k);
    if (2 * dim_seq(V, k) < as_signed(ceil_div(2 * n, pk))) return false;
    if (pk >= 2 * n) break;
  }
  return true;
}

PTypicalRep mack_trunc_rep(u64 p, u64 n, u64 s, unsigned k) {
  require_prime(p);
  if (s == 0 || s % 2 != 0) throw DomainError("mack_trunc needs s even and positive");
  u64 pk = sat_pow(p, k);
  if (pk == UINT64_MAX || s * pk <= 2 * n) throw DomainError("mack_trunc needs s p^k > 2n");
  std::int64_t half = as_signed(s / 2);
  PTypicalRep alpha, beta;
  for (unsigned r = 0; r < k; ++r) {
    alpha = alpha + PTypicalRep::lambda(r, as_signed(sat_pow(p, k - r) - sat_pow(p, k - r - 1)));
    beta = beta + PTypicalRep::lambda(r, as_signed(n / sat_pow(p, r)) - as_signed(n / sat_pow(p, r + 1)));
  }
  return PTypicalRep::lambda_inf(half - as_signed(n / pk)) + half * alpha - beta;
}

bool mack_trunc_certificate(u64 p, u64 n, u64 s, unsigned k) {
  PTypicalRep V = mack_trunc_rep(p, n, s, k);
  for (const auto& [i, m] : V.mult)
    if (m < 0) return false;
  return V.mult_inf > 0;
}

}  // namespace prismslice
