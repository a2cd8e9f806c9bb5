#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace prismslice {

using BigInt = boost::multiprecision::cpp_int;

// Polynomial in q with integer coefficients; trailing zeros are stripped.
class ExactQPoly {
 public:
  ExactQPoly() = default;
  explicit ExactQPoly(std::vector<BigInt> coeffs);
  static ExactQPoly constant(const BigInt& c);
  static ExactQPoly monomial(const BigInt& c, std::size_t k);
  // [n]_q
  static ExactQPoly q_integer(std::uint64_t n);

  const std::vector<BigInt>& coeffs() const { return c_; }
  long degree() const { return long(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  BigInt coeff(std::size_t k) const { return k < c_.size() ? c_[k] : BigInt(0); }
  std::string to_string() const;

  friend ExactQPoly operator+(const ExactQPoly& a, const ExactQPoly& b);
  friend ExactQPoly operator-(const ExactQPoly& a, const ExactQPoly& b);
  friend ExactQPoly operator-(const ExactQPoly& a);
  friend ExactQPoly operator*(const ExactQPoly& a, const ExactQPoly& b);
  friend bool operator==(const ExactQPoly& a, const ExactQPoly& b) { return a.c_ == b.c_; }

 private:
  void normalize();
  std::vector<BigInt> c_;
};

ExactQPoly pow(const ExactQPoly& a, std::uint64_t e);
ExactQPoly psi(const ExactQPoly& x, std::uint64_t m);
// Exact division of every coefficient; throws InternalError when inexact.
ExactQPoly divide_exact_int(const ExactQPoly& x, const BigInt& d);
ExactQPoly delta_m(const ExactQPoly& x, std::uint64_t m);
// Remainder modulo a monic polynomial.
ExactQPoly rem_monic(const ExactQPoly& a, const ExactQPoly& m);

bool semimult_check(std::uint64_t m, std::uint64_t n);
bool psi_congruence_check(std::uint64_t m, std::uint64_t n, std::uint64_t k);

}  // namespace prismslice
