#include "prismslice/combinatorics.hpp"

#include <limits>
#include <string>

#include "prismslice/errors.hpp"

namespace prismslice {

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

void require_prime(u64 p) {
  if (!is_prime(p)) throw DomainError("not a prime: " + std::to_string(p));
}

u64 sat_pow(u64 p, unsigned k) {
  u64 r = 1;
  for (unsigned s = 0; s < k; ++s) {
    if (r > std::numeric_limits<u64>::max() / p) return std::numeric_limits<u64>::max();
    r *= p;
  }
  return r;
}

u64 ceil_div(u64 a, u64 b) { return a / b + (a % b != 0); }

unsigned vp(u64 p, u64 n) {
  require_prime(p);
  if (n == 0) throw DomainError("vp(0) is infinite");
  unsigned e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  return e;
}

u64 legendre_valuation(u64 p, u64 n) {
  require_prime(p);
  u64 s = 0;
  for (u64 q = n / p; q > 0; q /= p) s += q;
  return s;
}

bool floor_ceil_shift(u64 p, u64 n, unsigned k) {
  require_prime(p);
  u64 pk = sat_pow(p, k);
  return ceil_div(n + 1, pk) - 1 == n / pk;
}

unsigned floor_log_ratio(u64 p, u64 n, u64 i) {
  unsigned r = 0;
  // p^(r+1) * i <= n, written so that nothing overflows
  for (u64 x = i; x <= n / p; x *= p) ++r;
  return r;
}

static void check_slice_args(u64 n, u64 i) {
  if (i == 0 || i > n) throw DomainError("slice index needs 0 < i <= n");
}

unsigned slice_m(u64 p, u64 n, u64 i) {
  require_prime(p);
  check_slice_args(n, i);
  // min r with p^(r+1) * i >= n; x never exceeds n * p
  unsigned r = 0;
  for (u64 x = i * p; x < n; x *= p) ++r;
  return r;
}

bool power_case(u64 p, u64 n, u64 i) {
  require_prime(p);
  check_slice_args(n, i);
  if (n % i) return false;
  u64 q = n / i;
  while (q % p == 0) q /= p;
  return q == 1;
}

unsigned slice_h(u64 p, u64 n, u64 i) {
  require_prime(p);
  check_slice_args(n, i);
  if (i == n) return 0;
  unsigned lg = floor_log_ratio(p, n, i);
  if (power_case(p, n, i)) return lg;
  unsigned v = vp(p, n);
  return v < lg ? v : lg;
}

SliceIndices slice_indices(u64 p, u64 n, u64 i) {
  SliceIndices s;
  s.p = p;
  s.n = n;
  s.i = i;
  s.m = slice_m(p, n, i);
  s.h = slice_h(p, n, i);
  s.power_case = power_case(p, n, i);
  return s;
}

unsigned ell(u64 p, u64 i, u64 n) {
  require_prime(p);
  if (i == 0 || i >= n) throw DomainError("ell needs 0 < i < n");
  for (unsigned r = 0;; ++r) {
    u64 pr = sat_pow(p, r);
    if (ceil_div(n, pr) == ceil_div(i, pr)) return r;
  }
}

unsigned slice_r(u64 p, u64 i, u64 j) {
  require_prime(p);
  if (i < 1 || j < 1) throw DomainError("slice_r needs i, j >= 1");
  unsigned r = 0;
  for (u64 x = i; x < i + j; x *= p) ++r;
  return r;
}

u64 slice_f(u64 p, u64 n, u64 i) {
  require_prime(p);
  check_slice_args(n, i);
  u64 f = 0;
  for (u64 m = i; m < n; ++m) f += slice_h(p, m, i) + 1;
  return f;
}

}  // namespace prismslice
