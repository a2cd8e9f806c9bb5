#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <utility>

#include "prismslice/exact_poly.hpp"
#include "prismslice/json.hpp"
#include "prismslice/rings.hpp"

namespace prismslice {

struct Prism {
  Model model;
  LocalQElem orientation;
  LocalQElem delta_unit;  // delta(orientation)
};

struct PrismFailure : std::runtime_error {
  LocalQElem witness;
  PrismFailure(const std::string& what, LocalQElem w) : std::runtime_error(what), witness(std::move(w)) {}
};

// Builds the prism of a model; throws PrismFailure if delta([p]_A) is not a unit.
Prism make_prism(const Model& m);
// Returns delta([p]_A) after checking it is a unit.
LocalQElem prism_condition(const Prism& P);

class UnitTable {
 public:
  UnitTable(unsigned imax, unsigned jmax) : imax_(imax), jmax_(jmax) {}
  unsigned imax() const { return imax_; }
  unsigned jmax() const { return jmax_; }
  bool has(unsigned i, unsigned j) const { return u_.count({i, j}) != 0; }
  const LocalQElem& at(unsigned i, unsigned j) const;
  void set(unsigned i, unsigned j, LocalQElem u) { u_.insert_or_assign({i, j}, std::move(u)); }
  const std::map<std::pair<unsigned, unsigned>, LocalQElem>& entries() const { return u_; }

 private:
  unsigned imax_, jmax_;
  std::map<std::pair<unsigned, unsigned>, LocalQElem> u_;
};

// Upper bound for the t-degree of every element used by extended_units(imax, jmax) and its
// congruence checks; at N above this bound all of them are exact polynomials.
unsigned unit_table_degree(const Model& m, unsigned imax, unsigned jmax);
// The model with N raised (if needed) so that the unit table is exact.
Model unit_table_model(const Model& m, unsigned imax, unsigned jmax);

// u_{i,j} for 1 <= i <= min(j, imax), j <= jmax, with phi^j([p]_A) = u_{i,j} p mod [p^i]_A.
UnitTable extended_units(const Prism& P, unsigned imax, unsigned jmax);
bool verify_congruence(const Prism& P, const UnitTable& U, unsigned i, unsigned j);
// phi^r([p^{j-i}]_A) = u p^{j-i} mod [p^i]_A with u a unit, for i <= min(j, r).
bool corollary_congruence(const Prism& P, unsigned i, unsigned j, unsigned r);
// phi([p]_A) = u_{1,1} p mod [p]_A^p.
bool sharper_base_congruence(const Prism& P);

// phi(x) - phi^n([p]_A) u_{n,n}^{-1} delta(x).
LocalQElem borger_norm_lift(const Prism& P, const UnitTable& U, unsigned n, const LocalQElem& x);
// prod_{i<p} (x - q^{i p^{n-1}} y).
LocalQElem q_pochhammer(const LocalQElem& x, const LocalQElem& y, unsigned n);

struct NormLiftReport {
  bool phi_congruence = false;    // candidate = phi(x) mod phi^n([p]_A)
  bool power_congruence = false;  // candidate = x^p mod [p^n]_A
  std::optional<bool> witt_diagram;  // iso_witt(candidate, n+1) = N(iso_witt(x, n)), perfect-q only
  bool ok() const { return phi_congruence && power_congruence && witt_diagram.value_or(true); }
};

NormLiftReport norm_lift_report(const Prism& P, unsigned n, const LocalQElem& candidate, const LocalQElem& x,
                                bool witt_cross_check = true);
bool norm_lift_check(const Prism& P, unsigned n, const LocalQElem& candidate, const LocalQElem& x);

struct QLegendreReport {
  bool phi_form = false;      // [n]_q! ~ prod_r phi^{r-1}([p]_q)^{floor(n/p^r)}
  bool bracket_form = false;  // [n]_q! ~ prod_r [p^r]_q^{floor(n/p^r) - floor(n/p^{r+1})}
  unsigned N = 0;             // t-adic precision used
  std::vector<u64> exponents;  // floor(n/p^r), r = 1, 2, ...
  LocalQElem unit;            // [n]_q! / (phi form)
  bool ok() const { return phi_form && bracket_form; }
};

// Runs in the q-crystalline model with N raised above the degree of [n]_q!.
QLegendreReport q_legendre_report(u64 p, u64 n, unsigned M = default_precision().M);
bool q_legendre_check(u64 p, u64 n);

// (x,-y;q)_3 = psi^3(z) - [3]_q delta_3(z) - [3]_q([2]_q - 2)(z delta_2(z) - delta_3(z)),
// x = q^a, y = q^b, z = x - y, over the integers.
bool warning_identity_check(u64 a, u64 b);

// Verification summary used by the CLI.
Json prism_report(const Model& m, unsigned jmax);

}  // namespace prismslice
