#include "gaussfermat/arith.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <stdexcept>
#include <string>

namespace gaussfermat {

namespace {

constexpr u64 kTrialDivisionLimit = 1'000'000;

// Small primes for trial division, built once.
const std::vector<std::uint32_t>& trial_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    std::vector<bool> composite(kTrialDivisionLimit + 1, false);
    std::vector<std::uint32_t> out;
    for (u64 p = 2; p <= kTrialDivisionLimit; ++p) {
      if (composite[p]) continue;
      out.push_back(static_cast<std::uint32_t>(p));
      for (u64 m = p * p; m <= kTrialDivisionLimit; m += p) composite[m] = true;
    }
    return out;
  }();
  return primes;
}

bool miller_rabin_round(u64 n, u64 a, u64 d, unsigned s) {
  a %= n;
  if (a == 0) return true;
  u64 x = pow_mod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (unsigned r = 1; r < s; ++r) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

// Brent's cycle detection on x -> x^2 + c; returns a nontrivial factor or n.
u64 brent_rho(u64 n, u64 c) {
  constexpr u64 kBatch = 128;
  u64 y = 2, x = 2, ys = 2, q = 1, g = 1;
  auto f = [&](u64 v) { return add_mod(mul_mod(v, v, n), c, n); };
  for (u64 r = 1; g == 1; r <<= 1) {
    x = y;
    for (u64 i = 0; i < r; ++i) y = f(y);
    for (u64 k = 0; k < r && g == 1; k += kBatch) {
      ys = y;
      const u64 steps = std::min(kBatch, r - k);
      for (u64 i = 0; i < steps; ++i) {
        y = f(y);
        q = mul_mod(q, x > y ? x - y : y - x, n);
      }
      g = std::gcd(q, n);
    }
  }
  if (g == n) {
    // Batched product hit zero; replay one step at a time.
    do {
      ys = f(ys);
      g = std::gcd(x > ys ? x - ys : ys - x, n);
    } while (g == 1);
  }
  return g;
}

void factor_large(u64 n, std::vector<u64>& primes) {
  if (n == 1) return;
  if (is_prime(n)) {
    primes.push_back(n);
    return;
  }
  for (u64 c = 1;; ++c) {
    const u64 d = brent_rho(n, c);
    if (d != n) {
      factor_large(d, primes);
      factor_large(n / d, primes);
      return;
    }
  }
}

void require_positive(u64 n) {
  if (n == 0 || n >= kMaxModulus) {
    throw std::out_of_range("argument must satisfy 1 <= n < 2^63, got " + std::to_string(n));
  }
}

}  // namespace

bool Factorization::is_square_free() const {
  return std::all_of(factors.begin(), factors.end(),
                     [](const PrimePower& pp) { return pp.exponent == 1; });
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  if (n < 41 * 41) return true;
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Witness set proven sufficient for all n < 2^64.
  for (u64 a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
    if (!miller_rabin_round(n, a, d, s)) return false;
  }
  return true;
}

Factorization factorize(u64 n) {
  require_modulus(n, "factorize argument");
  Factorization f;
  f.n = n;
  u64 rest = n;
  for (std::uint32_t p : trial_primes()) {
    if (u64{p} * p > rest) break;
    if (rest % p != 0) continue;
    unsigned e = 0;
    do {
      rest /= p;
      ++e;
    } while (rest % p == 0);
    f.factors.push_back({p, e});
  }
  if (rest == 1) return f;

  std::vector<u64> primes;
  if (rest <= kTrialDivisionLimit * kTrialDivisionLimit) {
    primes.push_back(rest);  // no divisor up to sqrt(rest) remains
  } else {
    factor_large(rest, primes);
  }
  std::sort(primes.begin(), primes.end());
  for (u64 p : primes) {
    if (!f.factors.empty() && f.factors.back().prime == p) {
      ++f.factors.back().exponent;
    } else {
      f.factors.push_back({p, 1});
    }
  }
  return f;
}

Factorization make_factorization(u64 n, std::vector<PrimePower> factors) {
  u128 product = 1;
  for (std::size_t k = 0; k < factors.size(); ++k) {
    if (k > 0 && factors[k].prime <= factors[k - 1].prime) {
      throw std::invalid_argument("factorization primes must be strictly increasing");
    }
    for (unsigned e = 0; e < factors[k].exponent; ++e) product *= factors[k].prime;
  }
  if (product != n) throw std::invalid_argument("factorization does not multiply to n");
  return Factorization{n, std::move(factors)};
}

int beta(u64 p) {
  if (!is_prime(p)) throw std::invalid_argument("beta: " + std::to_string(p) + " is not prime");
  if (p == 2) return 0;
  return p % 4 == 1 ? 1 : -1;
}

u64 script_F(u64 n) {
  require_positive(n);
  switch (n % 4) {
    case 1: return n - 1;
    case 3: return n + 1;
    default: return n;
  }
}

u64 gaussian_phi_prime_power(u64 p, unsigned k) {
  if (p == 2) return k == 1 ? 2 : checked_mul(PrimePower{2, k}.value(), 2);
  const u64 head = PrimePower{p, k - 1}.value();
  return checked_mul(head, p % 4 == 1 ? p - 1 : p + 1);
}

u64 gaussian_lambda_prime_power(u64 p, unsigned k) {
  if (p == 2) {
    if (k == 1) return 2;
    if (k <= 4) return 4;
    return PrimePower{2, k - 2}.value();
  }
  return gaussian_phi_prime_power(p, k);
}

u64 gaussian_phi(const Factorization& f) {
  u64 result = 1;
  for (const auto& pp : f.factors) {
    result = checked_mul(result, gaussian_phi_prime_power(pp.prime, pp.exponent));
  }
  return result;
}

u64 gaussian_phi(u64 n) {
  require_positive(n);
  return n == 1 ? 1 : gaussian_phi(factorize(n));
}

u64 gaussian_lambda(const Factorization& f) {
  u64 result = 1;
  for (const auto& pp : f.factors) {
    result = checked_lcm(result, gaussian_lambda_prime_power(pp.prime, pp.exponent));
  }
  return result;
}

u64 gaussian_lambda(u64 n) {
  require_positive(n);
  return n == 1 ? 1 : gaussian_lambda(factorize(n));
}

GroupDescriptor group_structure(const Factorization& f) {
  GroupDescriptor g;
  for (const auto& [p, k] : f.factors) {
    if (p == 2) {
      if (k == 1) {
        g.cyclic_orders.push_back(2);
      } else {
        g.cyclic_orders.insert(g.cyclic_orders.end(), {PrimePower{2, k - 2}.value(), 2, 4});
      }
    } else {
      g.cyclic_orders.push_back(PrimePower{p, k - 1}.value());
      g.cyclic_orders.push_back(p % 4 == 1 ? p - 1 : p + 1);
    }
  }
  for (u64 c : g.cyclic_orders) {
    g.order = checked_mul(g.order, c);
    g.exponent = checked_lcm(g.exponent, c);
  }
  return g;
}

GroupDescriptor group_structure(u64 n) {
  require_positive(n);
  return n == 1 ? GroupDescriptor{} : group_structure(factorize(n));
}

u64 classical_phi(const Factorization& f) {
  u64 result = 1;
  for (const auto& [p, k] : f.factors) result *= PrimePower{p, k - 1}.value() * (p - 1);
  return result;
}

u64 classical_phi(u64 n) {
  require_positive(n);
  return n == 1 ? 1 : classical_phi(factorize(n));
}

u64 classical_lambda(const Factorization& f) {
  u64 result = 1;
  for (const auto& [p, k] : f.factors) {
    u64 l;
    if (p == 2) {
      l = k == 1 ? 1 : (k == 2 ? 2 : PrimePower{2, k - 2}.value());
    } else {
      l = PrimePower{p, k - 1}.value() * (p - 1);
    }
    result = checked_lcm(result, l);
  }
  return result;
}

u64 classical_lambda(u64 n) {
  require_positive(n);
  return n == 1 ? 1 : classical_lambda(factorize(n));
}

u64 element_order(const GaussianResidue& z, u64 group_order) {
  if (group_order == 0) throw std::invalid_argument("group order must be positive");
  if (!pow(z, group_order).is_one()) {
    throw std::invalid_argument("element does not lie in a group of the given order");
  }
  if (group_order == 1) return 1;
  u64 order = group_order;
  for (const auto& [p, k] : factorize(group_order).factors) {
    for (unsigned e = 0; e < k; ++e) {
      if (!pow(z, order / p).is_one()) break;
      order /= p;
    }
  }
  return order;
}

}  // namespace gaussfermat
