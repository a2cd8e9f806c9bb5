#include "prismslice/exact_poly.hpp"

#include <sstream>

#include "prismslice/combinatorics.hpp"
#include "prismslice/errors.hpp"

namespace prismslice {

ExactQPoly::ExactQPoly(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { normalize(); }

void ExactQPoly::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

ExactQPoly ExactQPoly::constant(const BigInt& c) { return ExactQPoly({c}); }

ExactQPoly ExactQPoly::monomial(const BigInt& c, std::size_t k) {
  std::vector<BigInt> v(k + 1, 0);
  v[k] = c;
  return ExactQPoly(std::move(v));
}

ExactQPoly ExactQPoly::q_integer(std::uint64_t n) { return ExactQPoly(std::vector<BigInt>(n, 1)); }

std::string ExactQPoly::to_string() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (c_[k] == 0) continue;
    if (!first) os << (c_[k] < 0 ? " - " : " + ");
    else if (c_[k] < 0) os << "-";
    first = false;
    BigInt a = c_[k] < 0 ? BigInt(-c_[k]) : c_[k];
    if (k == 0 || a != 1) os << a;
    if (k > 0) os << (a != 1 ? "*" : "") << "q" << (k > 1 ? "^" + std::to_string(k) : "");
  }
  return os.str();
}

ExactQPoly operator+(const ExactQPoly& a, const ExactQPoly& b) {
  std::vector<BigInt> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = a.coeff(k) + b.coeff(k);
  return ExactQPoly(std::move(c));
}

ExactQPoly operator-(const ExactQPoly& a) {
  std::vector<BigInt> c(a.c_);
  for (auto& x : c) x = -x;
  return ExactQPoly(std::move(c));
}

ExactQPoly operator-(const ExactQPoly& a, const ExactQPoly& b) { return a + (-b); }

ExactQPoly operator*(const ExactQPoly& a, const ExactQPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<BigInt> c(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  }
  return ExactQPoly(std::move(c));
}

ExactQPoly pow(const ExactQPoly& a, std::uint64_t e) {
  ExactQPoly r = ExactQPoly::constant(1), b = a;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

ExactQPoly psi(const ExactQPoly& x, std::uint64_t m) {
  if (m == 0) throw DomainError("psi needs m >= 1");
  if (x.is_zero()) return {};
  std::vector<BigInt> c(std::size_t(x.degree()) * m + 1, 0);
  for (std::size_t k = 0; k < x.coeffs().size(); ++k) c[k * m] = x.coeffs()[k];
  return ExactQPoly(std::move(c));
}

ExactQPoly divide_exact_int(const ExactQPoly& x, const BigInt& d) {
  std::vector<BigInt> c(x.coeffs());
  for (auto& v : c) {
    if (v % d != 0) throw InternalError("inexact integer division of a polynomial");
    v /= d;
  }
  return ExactQPoly(std::move(c));
}

ExactQPoly delta_m(const ExactQPoly& x, std::uint64_t m) {
  if (!is_prime(m)) throw DomainError("delta_m needs a prime");
  return divide_exact_int(psi(x, m) - pow(x, m), BigInt(m));
}

ExactQPoly rem_monic(const ExactQPoly& a, const ExactQPoly& m) {
  if (m.is_zero() || m.coeffs().back() != 1) throw DomainError("rem_monic needs a monic divisor");
  std::vector<BigInt> r(a.coeffs());
  long dm = m.degree();
  for (long k = long(r.size()) - 1; k >= dm; --k) {
    BigInt c = r[k];
    if (c == 0) continue;
    for (long j = 0; j <= dm; ++j) r[k - dm + j] -= c * m.coeffs()[j];
  }
  if (long(r.size()) > dm) r.resize(std::size_t(dm));
  return ExactQPoly(std::move(r));
}

bool semimult_check(std::uint64_t m, std::uint64_t n) {
  return ExactQPoly::q_integer(m * n) == ExactQPoly::q_integer(m) * psi(ExactQPoly::q_integer(n), m);
}

bool psi_congruence_check(std::uint64_t m, std::uint64_t n, std::uint64_t k) {
  ExactQPoly lhs = psi(ExactQPoly::q_integer(n), m * k) - ExactQPoly::constant(BigInt(n));
  return rem_monic(lhs, ExactQPoly::q_integer(m)).is_zero();
}

}  // namespace prismslice
