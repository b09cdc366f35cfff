#pragma once

// Deliberately naive reference implementations used as test oracles. Nothing
// here calls into the library's arithmetic; keep it that way.

#include <cstdint>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

namespace oracle {

using u64 = std::uint64_t;
using i128 = __int128;

inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

inline std::map<u64, unsigned> factor(u64 n) {
  std::map<u64, unsigned> f;
  for (u64 d = 2; d * d <= n; ++d) {
    while (n % d == 0) {
      ++f[d];
      n /= d;
    }
  }
  if (n > 1) ++f[n];
  return f;
}

struct Pair {
  i128 re, im;
  bool operator==(const Pair&) const = default;
};

inline i128 mod(i128 x, i128 n) {
  x %= n;
  return x < 0 ? x + n : x;
}

inline Pair mul(Pair x, Pair y, u64 n) {
  return {mod(x.re * y.re - x.im * y.im, n), mod(x.re * y.im + x.im * y.re, n)};
}

/// Repeated multiplication; only for small exponents.
inline Pair slow_pow(Pair z, u64 e, u64 n) {
  Pair r{1 % static_cast<i128>(n), 0};
  for (u64 k = 0; k < e; ++k) r = mul(r, z, n);
  return r;
}

/// Right-to-left binary powering on raw pairs.
inline Pair fast_pow(Pair z, u64 e, u64 n) {
  Pair r{1 % static_cast<i128>(n), 0};
  z = {mod(z.re, n), mod(z.im, n)};
  while (e) {
    if (e & 1) r = mul(r, z, n);
    z = mul(z, z, n);
    e >>= 1;
  }
  return r;
}

inline u64 scalar_pow(u64 a, u64 e, u64 n) {
  i128 r = 1 % n, b = a % n;
  while (e) {
    if (e & 1) r = r * b % n;
    b = b * b % n;
    e >>= 1;
  }
  return static_cast<u64>(r);
}

/// Inverse by exhaustive search; n small.
inline i128 scalar_inverse(i128 a, u64 n) {
  a = mod(a, n);
  for (u64 x = 1; x < n; ++x) {
    if (a * x % n == 1) return x;
  }
  return 0;
}

inline u64 test_exponent(u64 n) { return n % 4 == 1 ? n - 1 : (n % 4 == 3 ? n + 1 : n); }

/// z / conj(z) = z^2 / (z conj z), or nothing when the norm is not a unit.
inline bool ratio(i128 a, i128 b, u64 n, Pair& out) {
  const i128 N = a * a + b * b;
  if (std::gcd(static_cast<u64>(N), n) != 1) return false;
  const i128 inv = scalar_inverse(N, n);
  const Pair sq = mul({mod(a, n), mod(b, n)}, {mod(a, n), mod(b, n)}, n);
  out = {mod(sq.re * inv, n), mod(sq.im * inv, n)};
  return true;
}

/// Composite n, gcd(n, a^2+b^2) = 1, (z/zbar)^F(n) = 1.
inline bool is_gfp(u64 n, i128 a, i128 b) {
  if (is_prime(n)) return false;
  Pair r;
  if (!ratio(a, b, n, r)) return false;
  return fast_pow(r, test_exponent(n), n) == Pair{1 % static_cast<i128>(n), 0};
}

inline bool is_fermat_psp(u64 n, u64 a) {
  return !is_prime(n) && std::gcd(a, n) == 1 && scalar_pow(a, n - 1, n) == 1;
}

/// All (a, b) with a^2 + b^2 = 1 mod n by scanning n^2 pairs.
inline std::vector<std::pair<u64, u64>> group_scan(u64 n) {
  std::vector<std::pair<u64, u64>> out;
  for (u64 a = 0; a < n; ++a) {
    for (u64 b = 0; b < n; ++b) {
      if ((a * a + b * b) % n == 1 % n) out.emplace_back(a, b);
    }
  }
  return out;
}

/// Order by repeated multiplication.
inline u64 order(Pair z, u64 n) {
  Pair x = z;
  u64 k = 1;
  const Pair one{1 % static_cast<i128>(n), 0};
  while (!(x == one)) {
    x = mul(x, z, n);
    ++k;
  }
  return k;
}

inline u64 euler_phi(u64 n) {
  u64 c = 0;
  for (u64 k = 1; k <= n; ++k) c += std::gcd(k, n) == 1;
  return c;
}

/// Exponent of (Z/nZ)* by brute force.
inline u64 carmichael_lambda(u64 n) {
  u64 l = 1;
  for (u64 a = 1; a < n; ++a) {
    if (std::gcd(a, n) != 1) continue;
    u64 x = a % n, k = 1;
    while (x != 1 % n) {
      x = x * a % n;
      ++k;
    }
    l = std::lcm(l, k);
  }
  return l;
}

/// Korselt's criterion directly from trial-division factors.
inline bool is_carmichael(u64 n) {
  if (n % 2 == 0 || is_prime(n) || n < 3) return false;
  for (auto [p, e] : factor(n)) {
    if (e > 1 || (n - 1) % (p - 1) != 0) return false;
  }
  return true;
}

}  // namespace oracle
