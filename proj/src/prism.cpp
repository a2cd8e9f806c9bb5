#include "prismslice/prism.hpp"

#include <algorithm>

#include "prismslice/errors.hpp"
#include "prismslice/witt.hpp"

namespace prismslice {

Prism make_prism(const Model& m) {
  LocalQElem xi = orientation(m);
  LocalQElem d = delta(xi);
  if (xi.is_zero() || is_unit(xi)) throw PrismFailure("orientation must be a nonzero non-unit", xi);
  if (!is_unit(d)) throw PrismFailure("delta([p]_A) is not a unit", d);
  return Prism{m, xi, d};
}

LocalQElem prism_condition(const Prism& P) {
  LocalQElem d = delta(P.orientation);
  if (!is_unit(d)) throw PrismFailure("delta([p]_A) is not a unit", d);
  return d;
}

const LocalQElem& UnitTable::at(unsigned i, unsigned j) const {
  auto it = u_.find({i, j});
  if (it == u_.end())
    throw DomainError("unit table has no entry (" + std::to_string(i) + "," + std::to_string(j) + ")");
  return it->second;
}

unsigned unit_table_degree(const Model& m, unsigned imax, unsigned jmax) {
  if (m.kind == ModelKind::Crystalline) return 0;
  const u64 p = m.p;
  const u64 d0 = u64(std::max(0L, orientation(m.with_precision(std::max(m.N, 64u), m.M)).degree()));
  auto xi = [&](unsigned k) { return d0 * sat_pow(p, k); };
  u64 u11 = p * d0;
  u64 best = std::max(u11, xi(jmax));
  // diagonal and off-diagonal recursions, tracked as degree bounds
  std::vector<u64> diag{0, u11};
  for (unsigned i = 1; i < std::min(imax, jmax); ++i)
    diag.push_back(std::max((p - 1) * diag[i] + xi(i), sat_pow(p, i) * u11));
  for (unsigned i = 1; i < diag.size(); ++i) {
    u64 cur = diag[i];
    best = std::max(best, cur);
    for (unsigned j = i; j < jmax; ++j) {
      cur = std::max(p * cur, sat_pow(p, j) * u11);
      best = std::max(best, cur);
    }
  }
  u64 pk = 0;
  for (unsigned k = 0; k < imax; ++k) pk += xi(k);
  best = std::max(best, pk);
  if (best > 1u << 14) throw DomainError("unit table degree too large");
  return unsigned(best);
}

Model unit_table_model(const Model& m, unsigned imax, unsigned jmax) {
  if (m.kind == ModelKind::Crystalline) return m;
  unsigned need = unit_table_degree(m, imax, jmax) + 1;
  return m.with_precision(std::max(m.N, need), m.M);
}

UnitTable extended_units(const Prism& P, unsigned imax, unsigned jmax) {
  if (imax == 0 || jmax == 0) throw DomainError("unit table needs imax, jmax >= 1");
  const Model& m = P.model;
  const LocalQElem pp = constant(m, std::int64_t(m.p));
  const LocalQElem u11 = prism_condition(P);
  UnitTable U(imax, jmax);
  std::vector<LocalQElem> phi_xi{P.orientation}, phi_u11{u11};
  for (unsigned k = 1; k <= jmax; ++k) {
    phi_xi.push_back(frobenius(phi_xi.back(), 1));
    phi_u11.push_back(frobenius(phi_u11.back(), 1));
  }
  const LocalQElem p_pm2 = ring_pow(pp, m.p - 2), p_pm1 = ring_pow(pp, m.p - 1);
  LocalQElem diag = u11;
  for (unsigned i = 1; i <= std::min(imax, jmax); ++i) {
    if (i > 1) diag = ring_pow(diag, m.p - 1) * p_pm2 * phi_xi[i - 1] + phi_u11[i - 1];
    LocalQElem cur = diag;
    U.set(i, i, cur);
    for (unsigned j = i; j < jmax; ++j) {
      cur = ring_pow(cur, m.p) * p_pm1 + phi_u11[j];
      U.set(i, j + 1, cur);
    }
  }
  for (const auto& [ij, u] : U.entries()) {
    if (!is_unit(u)) throw InternalError("non-unit entry in the unit table");
    if (!verify_congruence(P, U, ij.first, ij.second))
      throw InternalError("unit table entry fails its congruence at (" + std::to_string(ij.first) + "," +
                          std::to_string(ij.second) + ")");
  }
  return U;
}

bool verify_congruence(const Prism& P, const UnitTable& U, unsigned i, unsigned j) {
  if (i == 0 || i > j) throw DomainError("verify_congruence needs 1 <= i <= j");
  const Model& m = P.model;
  LocalQElem lhs = frobenius(P.orientation, j);
  LocalQElem rhs = ring_scale(U.at(i, j), std::int64_t(m.p));
  return congruent_mod(lhs, rhs, qA_pk(m, i));
}

bool corollary_congruence(const Prism& P, unsigned i, unsigned j, unsigned r) {
  if (i == 0 || i > j || i > r) throw DomainError("corollary_congruence needs 1 <= i <= min(j, r)");
  const Model& m = P.model;
  LocalQElem a = frobenius(qA_pk(m, j - i), r);
  return associates_p_power_mod(a, j - i, qA_pk(m, i));
}

bool sharper_base_congruence(const Prism& P) {
  const Model& m = P.model;
  LocalQElem lhs = frobenius(P.orientation, 1);
  LocalQElem rhs = ring_scale(P.delta_unit, std::int64_t(m.p));
  return congruent_mod(lhs, rhs, ring_pow(P.orientation, m.p));
}

LocalQElem borger_norm_lift(const Prism& P, const UnitTable& U, unsigned n, const LocalQElem& x) {
  if (n == 0) throw DomainError("norm lift needs n >= 1");
  LocalQElem d = delta(x);
  if (d.is_zero()) return frobenius(x, 1);
  return frobenius(x, 1) - frobenius(P.orientation, n) * inverse(U.at(n, n)) * d;
}

LocalQElem q_pochhammer(const LocalQElem& x, const LocalQElem& y, unsigned n) {
  const Model& m = x.model();
  if (!m.is_q()) throw ModelMismatch("q_pochhammer needs a q-model");
  if (n == 0) throw DomainError("q_pochhammer needs n >= 1");
  LocalQElem step = q_power(m, std::int64_t(sat_pow(m.p, n - 1)));
  LocalQElem out = one(m), qy = y;
  for (u64 i = 0; i < m.p; ++i) {
    out = out * (x - qy);
    qy = qy * step;
  }
  return out;
}

NormLiftReport norm_lift_report(const Prism& P, unsigned n, const LocalQElem& candidate, const LocalQElem& x,
                                bool witt_cross_check) {
  const Model& m = P.model;
  NormLiftReport rep;
  rep.phi_congruence = congruent_mod(candidate, frobenius(x, 1), frobenius(P.orientation, n));
  rep.power_congruence = congruent_mod(candidate, ring_pow(x, m.p), qA_pk(m, n));
  if (witt_cross_check && m.kind == ModelKind::PerfectQ && n + 1 <= kWittCacheBound) {
    unsigned D = m.depth + n;
    auto big = iso_witt(candidate, n + 1, D);
    auto small = iso_witt(x, n, D);
    WittCalc<ResidueRing> W(big.ring, m.p);
    rep.witt_diagram = W.eq(big.vec, W.norm(small.vec));
  }
  return rep;
}

bool norm_lift_check(const Prism& P, unsigned n, const LocalQElem& candidate, const LocalQElem& x) {
  return norm_lift_report(P, n, candidate, x).ok();
}

QLegendreReport q_legendre_report(u64 p, u64 n, unsigned M) {
  require_prime(p);
  if (n == 0) throw DomainError("q_legendre_check needs n >= 1");
  QLegendreReport rep;
  // [n]_q! has t-degree n(n-1)/2; leave room so every factor stays an exact polynomial.
  u64 deg = n * (n - 1) / 2;
  rep.N = unsigned(std::max<u64>(48, deg + 2));
  Model m = Model::q_crystalline(p, {rep.N, M});
  LocalQElem fact = one(m);
  for (u64 k = 2; k <= n; ++k) fact = fact * q_integer(m, k, 0);
  for (u64 pr = p; pr <= n; pr *= p) rep.exponents.push_back(n / pr);
  LocalQElem phi_form = one(m), bracket_form = one(m), xi = orientation(m);
  for (std::size_t r = 0; r < rep.exponents.size(); ++r) {
    phi_form = phi_form * ring_pow(frobenius(xi, unsigned(r)), rep.exponents[r]);
    u64 next = r + 1 < rep.exponents.size() ? rep.exponents[r + 1] : 0;
    bracket_form = bracket_form * ring_pow(qA_pk(m, unsigned(r + 1)), rep.exponents[r] - next);
  }
  rep.phi_form = associates(fact, phi_form);
  rep.bracket_form = associates(fact, bracket_form);
  if (auto u = divide_exact(fact, phi_form)) rep.unit = *u;
  return rep;
}

bool q_legendre_check(u64 p, u64 n) { return q_legendre_report(p, n).ok(); }

bool warning_identity_check(u64 a, u64 b) {
  using P = ExactQPoly;
  P x = P::monomial(1, a), y = P::monomial(1, b), z = x - y;
  P lhs = P::constant(1);
  for (u64 i = 0; i < 3; ++i) lhs = lhs * (x - P::monomial(1, i) * y);
  P d2 = delta_m(z, 2), d3 = delta_m(z, 3);
  P three = P::q_integer(3), two = P::q_integer(2);
  P rhs = psi(z, 3) - three * d3 - three * (two - P::constant(2)) * (z * d2 - d3);
  return lhs == rhs;
}

Json prism_report(const Model& base, unsigned jmax) {
  Json j;
  Model m = unit_table_model(base, jmax, jmax);
  j["model"] = m.name();
  j["precision"] = {{"N", m.N}, {"M", m.M}};
  Prism P;
  try {
    P = make_prism(m);
  } catch (const PrismFailure& e) {
    j["prism_condition"] = false;
    j["witness"] = to_json(e.witness);
    j["ok"] = false;
    return j;
  }
  j["prism_condition"] = true;
  j["delta_orientation"] = to_json(P.delta_unit);
  bool ok = true;
  UnitTable U = extended_units(P, jmax, jmax);
  Json cong = Json::array();
  for (const auto& [ij, u] : U.entries()) {
    bool v = verify_congruence(P, U, ij.first, ij.second);
    ok = ok && v;
    cong.push_back({{"i", ij.first}, {"j", ij.second}, {"unit", is_unit(u)}, {"congruence", v}});
  }
  j["unit_table"] = cong;
  Json cor = Json::array();
  for (unsigned i = 1; i <= std::min(3u, jmax); ++i)
    for (unsigned jj = i; jj <= jmax; ++jj)
      for (unsigned r = i; r <= jmax; ++r) {
        bool v = corollary_congruence(P, i, jj, r);
        ok = ok && v;
        cor.push_back({{"i", i}, {"j", jj}, {"r", r}, {"congruence", v}});
      }
  j["corollary"] = cor;
  j["ok"] = ok;
  return j;
}

}  // namespace prismslice
