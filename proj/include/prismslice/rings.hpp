#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "prismslice/combinatorics.hpp"
#include "prismslice/json.hpp"

namespace prismslice {

enum class ModelKind { QCrystalline, PerfectQ, Crystalline, Kisin };

std::string to_string(ModelKind k);

struct Precision {
  unsigned N = 48;
  unsigned M = 24;
};

// N=48, M=24 unless PRISMSLICE_PRECISION="N,M" is set.
Precision default_precision();

// Truncated ring Z[t]/(p^M, t^N). For the q-models t = u - 1 with u = q^{1/p^depth};
// for the Kisin model t = z; the crystalline model is Z/p^M (N = 1).
struct Model {
  ModelKind kind = ModelKind::QCrystalline;
  u64 p = 2;
  unsigned depth = 0;
  unsigned N = 48;
  unsigned M = 24;

  static Model q_crystalline(u64 p, Precision prec = default_precision());
  static Model perfect_q(u64 p, unsigned depth, Precision prec = default_precision());
  static Model crystalline(u64 p, unsigned M = default_precision().M);
  static Model kisin(u64 p, Precision prec = default_precision());

  bool is_q() const { return kind == ModelKind::QCrystalline || kind == ModelKind::PerfectQ; }
  bool same_ring(const Model& o) const;
  Model with_precision(unsigned n, unsigned m) const;
  Model with_depth(unsigned e) const;
  std::string name() const;
};

bool operator==(const Model& a, const Model& b);

class LocalQElem {
 public:
  LocalQElem() = default;
  // Coefficients are reduced mod p^M and truncated to N entries.
  LocalQElem(const Model& model, std::vector<u64> coeffs, unsigned N, unsigned M, bool exact_poly);

  const Model& model() const { return model_; }
  unsigned prec_w() const { return N_; }
  unsigned prec_p() const { return M_; }
  u64 modulus() const;
  const std::vector<u64>& coeffs() const { return c_; }
  u64 coeff(std::size_t k) const { return k < c_.size() ? c_[k] : 0; }
  // True when the stored coefficients are the complete expansion mod p^M.
  bool exact_poly() const { return poly_; }

  // Highest nonzero index, -1 for zero.
  long degree() const;
  bool is_zero() const;
  // Min p-adic valuation of the coefficients, capped at M.
  unsigned p_content() const;
  // First index with a coefficient prime to p; N if there is none.
  unsigned w_order() const;
  LocalQElem reduced(unsigned N, unsigned M) const;
  std::string to_string() const;

 private:
  Model model_;
  unsigned N_ = 0;
  unsigned M_ = 0;
  std::vector<u64> c_;
  bool poly_ = true;
};

LocalQElem constant(const Model& m, std::int64_t c);
LocalQElem zero(const Model& m);
LocalQElem one(const Model& m);
// t = u - 1 (or z).
LocalQElem variable(const Model& m);
// u^k (q-models) or z^k (Kisin).
LocalQElem u_power(const Model& m, std::int64_t k);
// q^a = u^{a p^depth}.
LocalQElem q_power(const Model& m, std::int64_t a);

LocalQElem ring_add(const LocalQElem& a, const LocalQElem& b);
LocalQElem ring_sub(const LocalQElem& a, const LocalQElem& b);
LocalQElem ring_neg(const LocalQElem& a);
LocalQElem ring_mul(const LocalQElem& a, const LocalQElem& b);
LocalQElem ring_scale(const LocalQElem& a, std::int64_t c);
LocalQElem ring_pow(const LocalQElem& a, u64 e);
LocalQElem operator+(const LocalQElem& a, const LocalQElem& b);
LocalQElem operator-(const LocalQElem& a, const LocalQElem& b);
LocalQElem operator-(const LocalQElem& a);
LocalQElem operator*(const LocalQElem& a, const LocalQElem& b);
// Equality of the known parts at the common precision.
bool operator==(const LocalQElem& a, const LocalQElem& b);

LocalQElem frobenius(const LocalQElem& x, unsigned k = 1);
LocalQElem delta(const LocalQElem& x);

// Sum_{0<=i<n} u^{i p^{e-level}}.
LocalQElem q_integer(const Model& m, u64 n, unsigned level);
// [p]_A: [p]_q, [p]_{q^{1/p}}, p or z - p depending on the model.
LocalQElem orientation(const Model& m);
LocalQElem qA_pk(const Model& m, unsigned k);
LocalQElem qA_bracket(const Model& m, u64 n);
LocalQElem qA_factorial(const Model& m, u64 n);

// Same coefficients at depth e' >= e; represents phi^{-(e'-e)}(x).
LocalQElem relabel_depth(const LocalQElem& x, unsigned new_depth);

bool is_unit(const LocalQElem& x);
LocalQElem inverse(const LocalQElem& x);

// Coefficientwise division by p^t; nullopt when some coefficient is not divisible.
std::optional<LocalQElem> divide_by_p_power(const LocalQElem& x, unsigned t);

struct Division {
  LocalQElem quotient;
  LocalQElem remainder;
};

// a = b q + r with deg r < w_order(b); b must be nonzero mod p.
Division weierstrass_divide(const LocalQElem& a, const LocalQElem& b);
LocalQElem remainder_mod(const LocalQElem& a, const LocalQElem& b);
bool divisible_by(const LocalQElem& a, const LocalQElem& b);
bool congruent_mod(const LocalQElem& a, const LocalQElem& b, const LocalQElem& m);
// nullopt is NotDivisible.
std::optional<LocalQElem> divide_exact(const LocalQElem& a, const LocalQElem& b);
bool associates(const LocalQElem& a, const LocalQElem& b);
// a == unit * p^s modulo (ideal): the remainder mod ideal is p^s times a unit of A/(ideal).
bool associates_p_power_mod(const LocalQElem& a, unsigned s, const LocalQElem& ideal);

Json to_json(const LocalQElem& x);

}  // namespace prismslice
