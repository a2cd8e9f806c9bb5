#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "prismslice/combinatorics.hpp"
#include "prismslice/json.hpp"

namespace prismslice {

// sum_i mult[i] lambda_i + mult_inf lambda_inf + trivial_real (real trivial summands).
// Zero multiplicities are never stored.
struct PTypicalRep {
  std::map<unsigned, std::int64_t> mult;
  std::int64_t mult_inf = 0;
  std::int64_t trivial_real = 0;

  static PTypicalRep lambda(unsigned i, std::int64_t k = 1);
  static PTypicalRep lambda_inf(std::int64_t k = 1);
  static PTypicalRep trivial(std::int64_t k);

  std::int64_t at(unsigned i) const;
  std::int64_t complex_dim() const;
  std::int64_t real_dim() const { return 2 * complex_dim() + trivial_real; }
  bool actual() const;
  bool is_zero() const { return mult.empty() && mult_inf == 0 && trivial_real == 0; }
  // Largest i with a nonzero multiplicity, -1 if none.
  int top() const;
  std::string to_string() const;
};

PTypicalRep operator+(const PTypicalRep& a, const PTypicalRep& b);
PTypicalRep operator-(const PTypicalRep& a, const PTypicalRep& b);
PTypicalRep operator-(const PTypicalRep& a);
PTypicalRep operator*(std::int64_t k, const PTypicalRep& a);
bool operator==(const PTypicalRep& a, const PTypicalRep& b);

Json to_json(const PTypicalRep& a);

// [n]_lambda = 1 + lambda + ... + lambda^{n-1}, p-typified.
PTypicalRep bracket_rep(u64 p, u64 n);
// {n}_lambda = lambda + ... + lambda^n, p-typified.
PTypicalRep brace_rep(u64 p, u64 n);
// lambda^i -> lambda_{v_p(i)}, lambda^0 -> lambda_inf.
PTypicalRep p_typify(u64 p, const std::vector<u64>& exponents);

// d_r(alpha) = k_r + k_{r+1} + ... + k_inf.
std::int64_t dim_seq(const PTypicalRep& a, unsigned r);
// lambda_0 -> 0, lambda_i -> lambda_{i-1}, lambda_inf and trivial summands fixed.
PTypicalRep fixed_points(const PTypicalRep& a);
// Restriction of {n}_lambda to C_{p^k}.
PTypicalRep restrict_brace_level(u64 p, u64 n, unsigned k);

bool hill_yarnall_certificate(u64 p, u64 n);
// The representation V = (s/2 - floor(n/p^k)) lambda_inf + (s/2) alpha - beta.
PTypicalRep mack_trunc_rep(u64 p, u64 n, u64 s, unsigned k);
bool mack_trunc_certificate(u64 p, u64 n, u64 s, unsigned k);

}  // namespace prismslice
