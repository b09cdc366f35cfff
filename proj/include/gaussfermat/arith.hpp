#pragma once

// Primality, factorization and the arithmetic functions attached to G_n:
// the Gaussian totient Phi(n) = |G_n|, the Gaussian Carmichael function
// lambda_G(n) = exp(G_n), the test exponent F(n), and the cyclic
// decomposition of G_n.

#include <cstdint>
#include <vector>

#include "gaussfermat/modmath.hpp"
#include "gaussfermat/residue.hpp"

namespace gaussfermat {

struct PrimePower {
  u64 prime;
  unsigned exponent;

  /// prime^exponent; callers only build these from factorizations of
  /// 64-bit integers, so the value always fits.
  u64 value() const {
    u64 v = 1;
    for (unsigned k = 0; k < exponent; ++k) v *= prime;
    return v;
  }

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// n = prod prime^exponent with strictly increasing primes.
struct Factorization {
  u64 n = 1;
  std::vector<PrimePower> factors;

  bool is_prime() const { return factors.size() == 1 && factors[0].exponent == 1; }
  bool is_square_free() const;
  std::size_t distinct_primes() const { return factors.size(); }
};

/// Deterministic for every 64-bit input.
bool is_prime(u64 n);

/// Complete factorization. Trial division up to 10^6, then Brent's variant of
/// Pollard rho with the fixed polynomial sequence x^2 + c, c = 1, 2, ...
/// Throws std::out_of_range unless 2 <= n < 2^63.
Factorization factorize(u64 n);

/// Builds a Factorization from already-known prime powers (sorted, validated
/// product). Used by the census sieve.
Factorization make_factorization(u64 n, std::vector<PrimePower> factors);

/// (-1/p) for odd primes, 0 for p = 2. Throws std::invalid_argument if p is
/// not prime.
int beta(u64 p);

/// n-1 if n = 1 (mod 4), n+1 if n = 3 (mod 4), n if n is even.
/// The order of G_p when p is prime.
u64 script_F(u64 n);

/// |G_{p^k}|.
u64 gaussian_phi_prime_power(u64 p, unsigned k);
/// exp(G_{p^k}).
u64 gaussian_lambda_prime_power(u64 p, unsigned k);

/// Phi(n) = |G_n|. Phi(1) = 1. Throws std::overflow_error if the value
/// does not fit in 64 bits.
u64 gaussian_phi(u64 n);
u64 gaussian_phi(const Factorization& f);

/// Exponent of G_n. lambda_G(1) = 1.
u64 gaussian_lambda(u64 n);
u64 gaussian_lambda(const Factorization& f);

/// Orders of the cyclic factors of G_n, its order and exponent.
struct GroupDescriptor {
  std::vector<u64> cyclic_orders;
  u64 order = 1;
  u64 exponent = 1;
};

/// Concatenates the cyclic factors of every prime-power component:
///   G_2          = C_2
///   G_{2^k}      = C_{2^(k-2)} x C_2 x C_4        (k >= 2)
///   G_{p^k}      = C_{p^(k-1)} x C_{p-1}          (p = 1 mod 4)
///   G_{p^k}      = C_{p^(k-1)} x C_{p+1}          (p = 3 mod 4)
GroupDescriptor group_structure(u64 n);
GroupDescriptor group_structure(const Factorization& f);

/// Euler totient and Carmichael lambda of (Z/nZ)*.
u64 classical_phi(u64 n);
u64 classical_phi(const Factorization& f);
u64 classical_lambda(u64 n);
u64 classical_lambda(const Factorization& f);

/// Multiplicative order of z, given the order of a group containing it.
/// Walks down the divisors of `group_order` one prime at a time.
u64 element_order(const GaussianResidue& z, u64 group_order);

}  // namespace gaussfermat
