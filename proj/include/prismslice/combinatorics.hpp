#pragma once

#include <cstdint>

namespace prismslice {

using u64 = std::uint64_t;

bool is_prime(u64 n);
void require_prime(u64 p);

// Saturating p^k; returns UINT64_MAX on overflow.
u64 sat_pow(u64 p, unsigned k);
u64 ceil_div(u64 a, u64 b);

unsigned vp(u64 p, u64 n);
u64 legendre_valuation(u64 p, u64 n);
bool floor_ceil_shift(u64 p, u64 n, unsigned k);

struct SliceIndices {
  u64 p = 2;
  u64 n = 1;
  u64 i = 1;
  unsigned m = 0;
  unsigned h = 0;
  bool power_case = false;
};

// Largest r with p^r * i <= n (requires 0 < i <= n).
unsigned floor_log_ratio(u64 p, u64 n, u64 i);

unsigned slice_m(u64 p, u64 n, u64 i);
unsigned slice_h(u64 p, u64 n, u64 i);
bool power_case(u64 p, u64 n, u64 i);
SliceIndices slice_indices(u64 p, u64 n, u64 i);

unsigned ell(u64 p, u64 i, u64 n);
unsigned slice_r(u64 p, u64 i, u64 j);
u64 slice_f(u64 p, u64 n, u64 i);

}  // namespace prismslice
