#pragma once

// Number classes built on G_n: G-Carmichael, G-cyclic, G-Lehmer, the Giuga
// set, r-Williams numbers, and their classical counterparts.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gaussfermat/arith.hpp"

namespace gaussfermat {

/// Raised when two computations that must agree by theorem disagree.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Outcome of a Korselt-style criterion with the first offending prime.
struct KorseltResult {
  bool holds = false;
  /// First prime p | n whose divisibility condition fails, if any.
  std::optional<u64> violating_prime;
  std::string reason;
};

/// Composite n with F(p) | F(n) for every prime p | n, and either n odd
/// square-free, or 4 | n with n/4 in {2, 3, 5} or n/4 not prime.
KorseltResult g_carmichael_criterion(const Factorization& f);
bool is_g_carmichael(u64 n);
bool is_g_carmichael(const Factorization& f);

/// Composite n with lambda_G(n) | F(n).
bool is_g_carmichael_via_lambda(u64 n);
bool is_g_carmichael_via_lambda(const Factorization& f);

/// Korselt: composite, odd, square-free, p-1 | n-1 for all p | n.
KorseltResult carmichael_criterion(const Factorization& f);
bool is_carmichael(u64 n);
bool is_carmichael(const Factorization& f);

/// gcd(Phi(n), n) = 1.
bool is_g_cyclic(u64 n);
bool is_g_cyclic(const Factorization& f);

/// gcd(phi(n), n) = 1.
bool is_cyclic_number(u64 n);
bool is_cyclic_number(const Factorization& f);

/// Composite n with Phi(n) | F(n).
bool is_g_lehmer(u64 n);
bool is_g_lehmer(const Factorization& f);

/// Phi(n)^Phi(n) = 1 (mod n).
bool phi_power_congruence(u64 n);
bool phi_power_congruence(const Factorization& f);

/// lambda_G(n)^lambda_G(n) = 1 (mod n).
bool lambda_power_congruence(u64 n);
bool lambda_power_congruence(const Factorization& f);

inline constexpr u64 kDefaultGiugaCap = 100'000;

/// Whether sum_{z in G_n} z^F(n) = F(n) + 0i (mod n).
///
/// G_n maps onto each G_q (q a prime-power factor) with fibres of size
/// Phi(n / q), so the sum reduced mod q equals Phi(n/q) * sum_{w in G_q} w^F(n).
/// For odd p, G_q is cyclic and the inner sum is a geometric series in a
/// generator; powers of two are enumerated. Throws std::out_of_range when n
/// exceeds `cap`.
bool giuga_membership(u64 n, u64 cap = kDefaultGiugaCap);

/// The Giuga sum itself, returned for cross-checking.
GaussianResidue giuga_sum(u64 n, u64 cap = kDefaultGiugaCap);

/// Composite n such that every prime p | n has (p+r) | (n+r) and
/// (p-r) | (n-r).
bool is_r_williams(u64 n, u64 r);
bool is_r_williams(const Factorization& f, u64 r);

/// Odd n = pq, p < q primes, q = p + 2 and 8 | p + q.
bool is_twin_pair_product(const Factorization& f);

/// For n = 3 (mod 4): Carmichael and G-Carmichael. The equivalent condition
/// (1-Williams with every prime factor = 3 mod 4) is evaluated too; a
/// disagreement throws ConsistencyError. Throws std::invalid_argument when
/// n != 3 (mod 4).
bool carmichael_and_g_carmichael_3mod4(u64 n);
bool carmichael_and_g_carmichael_3mod4(const Factorization& f);

struct ClassifyOptions {
  bool giuga = false;
  u64 giuga_cap = kDefaultGiugaCap;
};

struct ClassificationReport {
  u64 n = 0;
  bool is_prime = false;
  bool g_carmichael = false;
  bool carmichael = false;
  bool g_cyclic = false;
  bool cyclic = false;
  bool g_lehmer = false;
  bool phi_power_congruence = false;
  bool lambda_power_congruence = false;
  std::optional<bool> giuga_member;
  bool williams_1 = false;

  u64 phi = 0;
  u64 lambda = 0;
  u64 script_f = 0;
  /// Primes breaking the respective Korselt-style conditions.
  std::optional<u64> g_carmichael_witness;
  std::optional<u64> carmichael_witness;
};

/// Every flag for n >= 2; giuga_member only when requested and n <= cap.
ClassificationReport classify(u64 n, const ClassifyOptions& options = {});

}  // namespace gaussfermat
