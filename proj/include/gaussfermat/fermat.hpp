#pragma once

// Classical and Gaussian Fermat compositeness tests.
//
// For a prime p coprime to z * conj(z):
//   (z / conj(z))^F(p) = 1 (mod p)     (ratio form)
//   Im(z^F(p)) = 0 (mod p)             (imaginary-part form)
// A composite n passing the ratio form for base z is a Gaussian Fermat
// pseudoprime (GFP) to that base.

#include <array>
#include <string_view>

#include "gaussfermat/residue.hpp"

namespace gaussfermat {

/// Fail proves compositeness. Pass proves nothing. InvalidBase means the
/// base shares a factor with n and the test does not apply.
enum class TestOutcome { Pass, Fail, InvalidBase };

std::string_view to_string(TestOutcome outcome);

TestOutcome gaussian_fermat_ratio_test(u64 n, const GaussianBase& z);

/// Same verdicts as the ratio form; computed along a separate code path.
TestOutcome gaussian_fermat_im_test(u64 n, const GaussianBase& z);

/// Composite n, gcd(n, z zbar) = 1 and the ratio test passes.
bool is_gfp(u64 n, const GaussianBase& z);

/// a^(n-1) = 1 (mod n); InvalidBase when gcd(a, n) > 1.
TestOutcome classical_fermat_test(u64 n, u64 a);

/// Composite n passing the classical test to base a.
bool is_fermat_psp(u64 n, u64 a);

/// Bases used by the property suites: the ten Gaussian bases of the
/// joint-pseudoprime table followed by 1+i and 2+i.
inline const std::array<GaussianBase, 12> kBasePanel = {
    GaussianBase{1, 2}, GaussianBase{1, 4}, GaussianBase{1, 6}, GaussianBase{1, 10},
    GaussianBase{2, 5}, GaussianBase{2, 7}, GaussianBase{3, 8}, GaussianBase{3, 10},
    GaussianBase{4, 5}, GaussianBase{4, 9}, GaussianBase{1, 1}, GaussianBase{2, 1},
};

}  // namespace gaussfermat
