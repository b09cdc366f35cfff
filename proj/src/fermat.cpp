#include "gaussfermat/fermat.hpp"

#include <numeric>

#include "gaussfermat/arith.hpp"

namespace gaussfermat {

std::string_view to_string(TestOutcome outcome) {
  switch (outcome) {
    case TestOutcome::Pass: return "pass";
    case TestOutcome::Fail: return "fail";
    case TestOutcome::InvalidBase: return "invalid-base";
  }
  return "?";
}

TestOutcome gaussian_fermat_ratio_test(u64 n, const GaussianBase& z) {
  require_modulus(n);
  const auto ratio = unit_ratio(z, n);
  if (!ratio) return TestOutcome::InvalidBase;
  return pow(*ratio, script_F(n)).is_one() ? TestOutcome::Pass : TestOutcome::Fail;
}

TestOutcome gaussian_fermat_im_test(u64 n, const GaussianBase& z) {
  require_modulus(n);
  if (std::gcd(n, z.norm()) != 1) return TestOutcome::InvalidBase;

  // Left-to-right binary powering on raw (re, im) pairs, three products per
  // multiplication: (a+bi)(c+di) = (ac-bd) + ((a+b)(c+d) - ac - bd)i.
  const u64 zr = reduce_signed(z.re(), n);
  const u64 zi = reduce_signed(z.im(), n);
  auto multiply = [n](u64& a, u64& b, u64 c, u64 d) {
    const u64 ac = mul_mod(a, c, n);
    const u64 bd = mul_mod(b, d, n);
    const u64 cross = mul_mod(add_mod(a, b, n), add_mod(c, d, n), n);
    a = sub_mod(ac, bd, n);
    b = sub_mod(sub_mod(cross, ac, n), bd, n);
  };
  const u64 e = script_F(n);
  u64 re = 1 % n, im = 0;
  for (int bit = 63; bit >= 0; --bit) {
    multiply(re, im, re, im);
    if ((e >> bit) & 1) multiply(re, im, zr, zi);
  }
  return im == 0 ? TestOutcome::Pass : TestOutcome::Fail;
}

bool is_gfp(u64 n, const GaussianBase& z) {
  return !is_prime(n) && gaussian_fermat_ratio_test(n, z) == TestOutcome::Pass;
}

TestOutcome classical_fermat_test(u64 n, u64 a) {
  require_modulus(n);
  if (std::gcd(a, n) != 1) return TestOutcome::InvalidBase;
  return pow_mod(a, n - 1, n) == 1 ? TestOutcome::Pass : TestOutcome::Fail;
}

bool is_fermat_psp(u64 n, u64 a) {
  return !is_prime(n) && classical_fermat_test(n, a) == TestOutcome::Pass;
}

}  // namespace gaussfermat
