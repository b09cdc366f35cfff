#pragma once

// Word-size modular arithmetic shared by every module. Moduli are below
// 2^63; products go through 128-bit intermediates.

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace gaussfermat {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

/// Exclusive upper bound for every modulus and candidate integer.
inline constexpr u64 kMaxModulus = u64{1} << 63;

/// Throws std::out_of_range unless 2 <= n < 2^63.
inline void require_modulus(u64 n, const char* what = "modulus") {
  if (n < 2 || n >= kMaxModulus) {
    throw std::out_of_range(std::string(what) + " must satisfy 2 <= n < 2^63, got " +
                            std::to_string(n));
  }
}

inline u64 mul_mod(u64 a, u64 b, u64 n) {
  if ((a | b) < (u64{1} << 32)) return (a * b) % n;
  return static_cast<u64>((static_cast<u128>(a) * b) % n);
}

inline u64 add_mod(u64 a, u64 b, u64 n) {
  // a, b < n < 2^63, so the sum cannot wrap.
  u64 s = a + b;
  return s >= n ? s - n : s;
}

inline u64 sub_mod(u64 a, u64 b, u64 n) { return a >= b ? a - b : a + (n - b); }

inline u64 pow_mod(u64 base, u64 exp, u64 n) {
  u64 result = 1 % n;
  base %= n;
  while (exp != 0) {
    if (exp & 1) result = mul_mod(result, base, n);
    base = mul_mod(base, base, n);
    exp >>= 1;
  }
  return result;
}

/// Reduces a signed value into [0, n).
inline u64 reduce_signed(i64 x, u64 n) {
  i128 r = static_cast<i128>(x) % static_cast<i128>(n);
  if (r < 0) r += n;
  return static_cast<u64>(r);
}

/// Modular inverse of a (mod n); returns 0 when gcd(a, n) != 1.
inline u64 inv_mod(u64 a, u64 n) {
  i128 t = 0, new_t = 1;
  i128 r = n, new_r = a % n;
  while (new_r != 0) {
    i128 q = r / new_r;
    i128 tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (r != 1) return 0;
  if (t < 0) t += n;
  return static_cast<u64>(t);
}

/// lcm that reports overflow instead of wrapping.
inline u64 checked_lcm(u64 a, u64 b) {
  if (a == 0 || b == 0) return 0;
  u128 l = static_cast<u128>(a / std::gcd(a, b)) * b;
  if (l > UINT64_MAX) throw std::overflow_error("lcm exceeds 64 bits");
  return static_cast<u64>(l);
}

inline u64 checked_mul(u64 a, u64 b) {
  u128 p = static_cast<u128>(a) * b;
  if (p > UINT64_MAX) throw std::overflow_error("product exceeds 64 bits");
  return static_cast<u64>(p);
}

}  // namespace gaussfermat
