#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>

#include "prismslice/json.hpp"
#include "prismslice/reps.hpp"
#include "prismslice/rings.hpp"

namespace prismslice {

// unit * p^exp_p * prod_j xi_j^exp_xi[j], xi_j = phi^j([p]_A). The zero flag marks the element 0.
// Zero exponents are never stored.
struct AtomProduct {
  bool zero = false;
  std::int64_t exp_p = 0;
  std::map<unsigned, std::int64_t> exp_xi;

  static AtomProduct unit() { return {}; }
  static AtomProduct zero_element();
  static AtomProduct p_power(std::int64_t k);
  static AtomProduct xi(unsigned j, std::int64_t k = 1);
  // [p^k]_A = xi_0 ... xi_{k-1}
  static AtomProduct qA_pk(unsigned k);
  // phi^r([p^k]_A) = xi_r ... xi_{r+k-1}
  static AtomProduct phi_qA_pk(unsigned r, unsigned k);
  // [n]_A! ; xi_j appears floor(n / p^{j+1}) times
  static AtomProduct factorial(u64 p, u64 n);

  std::int64_t xi_at(unsigned j) const;
  bool is_unit() const { return !zero && exp_p == 0 && exp_xi.empty(); }
  bool nonnegative() const;
  // exp_p + sum exp_xi; only meaningful when nonzero.
  std::int64_t crystalline_valuation() const;
  std::string to_string() const;
};

AtomProduct operator*(const AtomProduct& a, const AtomProduct& b);
// Exponent subtraction; the result may have negative exponents.
AtomProduct operator/(const AtomProduct& a, const AtomProduct& b);
bool operator==(const AtomProduct& a, const AtomProduct& b);
bool operator<(const AtomProduct& a, const AtomProduct& b);
AtomProduct phi_shift(const AtomProduct& a, unsigned r);
bool divides(const AtomProduct& a, const AtomProduct& b);
AtomProduct atom_gcd(const AtomProduct& a, const AtomProduct& b);
Json to_json(const AtomProduct& a);

// The associate class representative p^e * prod xi_j^e_j in the model (no unit).
LocalQElem to_ring(const AtomProduct& a, const Model& m);

struct GoldMonomial {
  std::int64_t sigma_exp = 0;
  std::map<unsigned, std::int64_t> a_exp;
  std::map<unsigned, std::int64_t> u_exp;

  static GoldMonomial sigma(std::int64_t k = 1);
  static GoldMonomial a(unsigned i, std::int64_t k = 1);
  static GoldMonomial u(unsigned i, std::int64_t k = 1);
  // a_alpha = prod a_{lambda_i}^{k_i} and u_alpha likewise, for alpha = sum k_i lambda_i.
  static GoldMonomial a_of(const PTypicalRep& alpha);
  static GoldMonomial u_of(const PTypicalRep& alpha);

  bool nonnegative() const;
  std::string to_string() const;
};

GoldMonomial operator*(const GoldMonomial& a, const GoldMonomial& b);
GoldMonomial inverse(const GoldMonomial& m);
bool operator==(const GoldMonomial& a, const GoldMonomial& b);
Json to_json(const GoldMonomial& m);

PTypicalRep degree(const GoldMonomial& m);

GoldMonomial canonical_generator(u64 p, u64 i, const PTypicalRep& alpha);

// c with m1 = c * m2 up to unit; nullopt when the ratio is not in A (NotComparable).
// Throws DomainError on a degree mismatch.
std::optional<AtomProduct> reduce_ratio(const GoldMonomial& m1, const GoldMonomial& m2);

struct RewriteTrace {
  AtomProduct coefficient;
  unsigned steps = 0;
};

// The rewriting itself. With rng == nullptr the fixed strategy is used (R1 with the largest
// index first, then R2); otherwise each step picks a random applicable move.
RewriteTrace rewrite_ratio(const GoldMonomial& m1, const GoldMonomial& m2, std::mt19937_64* rng = nullptr,
                           unsigned step_budget = 1u << 20);

// sigma^k a_{{k}} u_{{k}}^{-1} against [pk]_A!, as atoms and in the ring model.
bool key_identity(u64 p, u64 k);

}  // namespace prismslice
