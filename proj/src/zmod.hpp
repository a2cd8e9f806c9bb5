#pragma once

#include <cstdint>
#include <vector>

#include "prismslice/errors.hpp"

namespace prismslice {

using u128 = unsigned __int128;

// Arithmetic modulo mod < 2^63.
struct Zmod {
  std::uint64_t mod;

  explicit Zmod(std::uint64_t m) : mod(m) {}

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t s = a + b;
    return s >= mod ? s - mod : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + mod - b; }
  std::uint64_t neg(std::uint64_t a) const { return a ? mod - a : 0; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return std::uint64_t(u128(a) * b % mod); }
  std::uint64_t from_i64(std::int64_t v) const {
    std::int64_t r = v % std::int64_t(mod);
    return std::uint64_t(r < 0 ? r + std::int64_t(mod) : r);
  }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t r = 1 % mod;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  std::uint64_t inv(std::uint64_t a) const {
    __int128 t = 0, nt = 1, r = __int128(mod), nr = __int128(a % mod);
    while (nr != 0) {
      __int128 q = r / nr;
      __int128 tmp = t - q * nt;
      t = nt;
      nt = tmp;
      tmp = r - q * nr;
      r = nr;
      nr = tmp;
    }
    if (r != 1) throw DomainError("not invertible modulo p^M");
    if (t < 0) t += __int128(mod);
    return std::uint64_t(t);
  }
  // Binomial coefficient for small n, exact then reduced.
  std::uint64_t binom_small(std::uint64_t n, std::uint64_t k) const {
    u128 c = 1;
    for (std::uint64_t j = 1; j <= k; ++j) c = c * (n - k + j) / j;
    return std::uint64_t(c % mod);
  }
};

// Product truncated to length L.
inline std::vector<std::uint64_t> mul_trunc(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b,
                                            std::size_t L, const Zmod& Z) {
  std::size_t la = a.size(), lb = b.size();
  while (la && a[la - 1] == 0) --la;
  while (lb && b[lb - 1] == 0) --lb;
  std::vector<std::uint64_t> out(L, 0);
  if (!la || !lb) return out;
  std::size_t top = std::min(L, la + lb - 1);
  if (Z.mod < (std::uint64_t(1) << 40) && L < (std::size_t(1) << 40)) {
    std::vector<u128> acc(top, 0);
    for (std::size_t i = 0; i < la && i < top; ++i) {
      if (!a[i]) continue;
      u128 ai = a[i];
      std::size_t jmax = std::min(lb, top - i);
      u128* dst = acc.data() + i;
      for (std::size_t j = 0; j < jmax; ++j) dst[j] += ai * b[j];
    }
    for (std::size_t k = 0; k < top; ++k) out[k] = std::uint64_t(acc[k] % Z.mod);
  } else {
    for (std::size_t i = 0; i < la && i < top; ++i) {
      if (!a[i]) continue;
      std::size_t jmax = std::min(lb, top - i);
      for (std::size_t j = 0; j < jmax; ++j) out[i + j] = Z.add(out[i + j], Z.mul(a[i], b[j]));
    }
  }
  return out;
}

// Inverse of a series with unit constant term, to length L.
inline std::vector<std::uint64_t> series_inverse(const std::vector<std::uint64_t>& a, std::size_t L, const Zmod& Z) {
  std::vector<std::uint64_t> y(L, 0);
  if (!L) return y;
  std::uint64_t c0inv = Z.inv(a.empty() ? 0 : a[0]);
  y[0] = c0inv;
  std::size_t la = a.size();
  while (la && a[la - 1] == 0) --la;
  for (std::size_t k = 1; k < L; ++k) {
    u128 s = 0;
    std::uint64_t acc = 0;
    std::size_t jmax = std::min(k, la ? la - 1 : 0);
    for (std::size_t j = 1; j <= jmax; ++j) {
      if (Z.mod < (std::uint64_t(1) << 40))
        s += u128(a[j]) * y[k - j];
      else
        acc = Z.add(acc, Z.mul(a[j], y[k - j]));
    }
    if (Z.mod < (std::uint64_t(1) << 40)) acc = std::uint64_t(s % Z.mod);
    y[k] = Z.mul(Z.neg(acc), c0inv);
  }
  return y;
}

}  // namespace prismslice
