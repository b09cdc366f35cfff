#include "gaussfermat/classify.hpp"

#include <algorithm>
#include <numeric>

namespace gaussfermat {

namespace {

Factorization checked_factorization(u64 n) {
  require_modulus(n, "classifier argument");
  return factorize(n);
}

bool divides(u64 d, u64 x) { return d != 0 ? x % d == 0 : x == 0; }

bool divides_signed(i128 d, i128 x) {
  if (d < 0) d = -d;
  return d != 0 ? x % d == 0 : x == 0;
}

/// 1 + x + ... + x^(s-1) by halving, no division needed.
GaussianResidue geometric_sum(const GaussianResidue& x, u64 s) {
  const u64 q = x.modulus();
  if (s == 0) return GaussianResidue::zero(q);
  if (s % 2 == 1) return GaussianResidue::one(q) + x * geometric_sum(x, s - 1);
  return geometric_sum(x, s / 2) * (GaussianResidue::one(q) + pow(x, s / 2));
}

/// A generator of the cyclic group G_q, q = p^k with p odd. Candidates come
/// from the rational parametrization ((1-t^2) + 2ti) / (1+t^2).
GaussianResidue cyclic_generator(u64 p, u64 q, u64 order) {
  const auto primes = factorize(order).factors;
  for (u64 t = 1;; ++t) {
    const u64 tt = mul_mod(t % q, t % q, q);
    const u64 d = add_mod(1, tt, q);
    if (d % p == 0) continue;
    const u64 inv = inv_mod(d, q);
    const GaussianResidue g(mul_mod(sub_mod(1, tt, q), inv, q), mul_mod(2 * t % q, inv, q), q);
    if (std::all_of(primes.begin(), primes.end(),
                    [&](const PrimePower& r) { return !pow(g, order / r.prime).is_one(); })) {
      return g;
    }
  }
}

/// sum_{w in G_q} w^e.
GaussianResidue power_sum_prime_power(const PrimePower& pp, u64 e) {
  const u64 q = pp.value();
  if (pp.prime == 2) {
    GaussianResidue s = GaussianResidue::zero(q);
    for (const auto& [a, b] : norm_one_solutions(q)) s = s + pow(GaussianResidue(a, b, q), e);
    return s;
  }
  // Cyclic of order m: w^e runs d = gcd(m, e) times over the subgroup of
  // order m/d generated by g^d.
  const u64 m = gaussian_phi_prime_power(pp.prime, pp.exponent);
  const u64 d = std::gcd(m, e);
  const GaussianResidue h = pow(cyclic_generator(pp.prime, q, m), d);
  return scale(geometric_sum(h, m / d), d % q);
}

}  // namespace

KorseltResult g_carmichael_criterion(const Factorization& f) {
  const u64 n = f.n;
  if (f.is_prime()) return {false, std::nullopt, "prime"};
  const u64 fn = script_F(n);
  for (const auto& pp : f.factors) {
    if (!divides(script_F(pp.prime), fn)) {
      return {false, pp.prime, "F(p) does not divide F(n)"};
    }
  }
  if (n % 2 == 1) {
    for (const auto& pp : f.factors) {
      if (pp.exponent > 1) return {false, pp.prime, "odd and not square-free"};
    }
    return {true, std::nullopt, {}};
  }
  if (n % 4 != 0) return {false, 2, "even but not a multiple of 4"};
  const u64 quarter = n / 4;
  if (quarter == 2 || quarter == 3 || quarter == 5 || !is_prime(quarter)) {
    return {true, std::nullopt, {}};
  }
  return {false, quarter, "n/4 is a prime outside {2, 3, 5}"};
}

bool is_g_carmichael(const Factorization& f) { return g_carmichael_criterion(f).holds; }
bool is_g_carmichael(u64 n) { return is_g_carmichael(checked_factorization(n)); }

bool is_g_carmichael_via_lambda(const Factorization& f) {
  return !f.is_prime() && divides(gaussian_lambda(f), script_F(f.n));
}
bool is_g_carmichael_via_lambda(u64 n) {
  return is_g_carmichael_via_lambda(checked_factorization(n));
}

KorseltResult carmichael_criterion(const Factorization& f) {
  const u64 n = f.n;
  if (f.is_prime()) return {false, std::nullopt, "prime"};
  if (n % 2 == 0) return {false, 2, "even"};
  for (const auto& pp : f.factors) {
    if (pp.exponent > 1) return {false, pp.prime, "not square-free"};
    if (!divides(pp.prime - 1, n - 1)) return {false, pp.prime, "p-1 does not divide n-1"};
  }
  return {true, std::nullopt, {}};
}

bool is_carmichael(const Factorization& f) { return carmichael_criterion(f).holds; }
bool is_carmichael(u64 n) { return is_carmichael(checked_factorization(n)); }

bool is_g_cyclic(const Factorization& f) { return std::gcd(gaussian_phi(f), f.n) == 1; }
bool is_g_cyclic(u64 n) { return is_g_cyclic(checked_factorization(n)); }

bool is_cyclic_number(const Factorization& f) { return std::gcd(classical_phi(f), f.n) == 1; }
bool is_cyclic_number(u64 n) { return is_cyclic_number(checked_factorization(n)); }

bool is_g_lehmer(const Factorization& f) {
  return !f.is_prime() && divides(gaussian_phi(f), script_F(f.n));
}
bool is_g_lehmer(u64 n) { return is_g_lehmer(checked_factorization(n)); }

bool phi_power_congruence(const Factorization& f) {
  const u64 phi = gaussian_phi(f);
  return pow_mod(phi, phi, f.n) == 1;
}
bool phi_power_congruence(u64 n) { return phi_power_congruence(checked_factorization(n)); }

bool lambda_power_congruence(const Factorization& f) {
  const u64 lambda = gaussian_lambda(f);
  return pow_mod(lambda, lambda, f.n) == 1;
}
bool lambda_power_congruence(u64 n) { return lambda_power_congruence(checked_factorization(n)); }

GaussianResidue giuga_sum(u64 n, u64 cap) {
  require_modulus(n, "giuga argument");
  if (n > cap) {
    throw std::out_of_range("giuga_membership: " + std::to_string(n) + " exceeds cap " +
                            std::to_string(cap));
  }
  const Factorization f = factorize(n);
  const u64 exponent = script_F(n);
  u64 sum_re = 0, sum_im = 0;
  for (const auto& pp : f.factors) {
    const u64 q = pp.value();
    // Elements of G_q have order dividing lambda_G(q).
    const u64 e = exponent % gaussian_lambda_prime_power(pp.prime, pp.exponent);
    const GaussianResidue part = power_sum_prime_power(pp, e);
    const u64 fibre = gaussian_phi(n / q) % q;
    const u64 re = mul_mod(part.re(), fibre, q);
    const u64 im = mul_mod(part.im(), fibre, q);
    // Lift to mod n with the CRT idempotent for q.
    const u64 m = n / q;
    const u64 idempotent = mul_mod(m, inv_mod(m % q, q), n);
    sum_re = add_mod(sum_re, mul_mod(re, idempotent, n), n);
    sum_im = add_mod(sum_im, mul_mod(im, idempotent, n), n);
  }
  return {sum_re, sum_im, n};
}

bool giuga_membership(u64 n, u64 cap) {
  const GaussianResidue s = giuga_sum(n, cap);
  return s.re() == script_F(n) % n && s.im() == 0;
}

bool is_r_williams(const Factorization& f, u64 r) {
  if (r == 0 || r >= kMaxModulus) throw std::out_of_range("r must satisfy 1 <= r < 2^63");
  if (f.is_prime() || !f.is_square_free()) return false;
  const i128 n = f.n;
  return std::all_of(f.factors.begin(), f.factors.end(), [&](const PrimePower& pp) {
    const i128 p = pp.prime;
    return divides_signed(p + r, n + r) && divides_signed(p - r, n - r);
  });
}
bool is_r_williams(u64 n, u64 r) { return is_r_williams(checked_factorization(n), r); }

bool is_twin_pair_product(const Factorization& f) {
  if (f.n % 2 == 0 || f.factors.size() != 2 || !f.is_square_free()) return false;
  const u64 p = f.factors[0].prime;
  const u64 q = f.factors[1].prime;
  return q == p + 2 && (p + q) % 8 == 0;
}

bool carmichael_and_g_carmichael_3mod4(const Factorization& f) {
  if (f.n % 4 != 3) {
    throw std::invalid_argument("carmichael_and_g_carmichael_3mod4 requires n = 3 (mod 4), got " +
                                std::to_string(f.n));
  }
  const bool both = is_carmichael(f) && is_g_carmichael(f);
  const bool williams =
      is_r_williams(f, 1) && std::all_of(f.factors.begin(), f.factors.end(),
                                         [](const PrimePower& pp) { return pp.prime % 4 == 3; });
  if (both != williams) {
    throw ConsistencyError("Carmichael/G-Carmichael versus 1-Williams mismatch at n = " +
                           std::to_string(f.n));
  }
  return both;
}
bool carmichael_and_g_carmichael_3mod4(u64 n) {
  return carmichael_and_g_carmichael_3mod4(checked_factorization(n));
}

ClassificationReport classify(u64 n, const ClassifyOptions& options) {
  const Factorization f = checked_factorization(n);
  ClassificationReport r;
  r.n = n;
  r.is_prime = f.is_prime();
  r.phi = gaussian_phi(f);
  r.lambda = gaussian_lambda(f);
  r.script_f = script_F(n);

  const KorseltResult gk = g_carmichael_criterion(f);
  r.g_carmichael = gk.holds;
  if (!r.is_prime) r.g_carmichael_witness = gk.violating_prime;
  const KorseltResult ck = carmichael_criterion(f);
  r.carmichael = ck.holds;
  if (!r.is_prime) r.carmichael_witness = ck.violating_prime;

  r.g_cyclic = is_g_cyclic(f);
  r.cyclic = is_cyclic_number(f);
  r.g_lehmer = is_g_lehmer(f);
  r.phi_power_congruence = phi_power_congruence(f);
  r.lambda_power_congruence = lambda_power_congruence(f);
  r.williams_1 = is_r_williams(f, 1);
  if (options.giuga && n <= options.giuga_cap) r.giuga_member = giuga_membership(n, options.giuga_cap);

  if (r.g_lehmer && !r.g_carmichael) {
    throw ConsistencyError("G-Lehmer number that is not G-Carmichael: " + std::to_string(n));
  }
  if ((r.phi_power_congruence || r.lambda_power_congruence) && !r.g_cyclic) {
    throw ConsistencyError("power congruence holds but n is not G-cyclic: " + std::to_string(n));
  }
  return r;
}

}  // namespace gaussfermat
