#pragma once

// Arithmetic in the ring Z[i]/nZ[i] and the norm-one group
// G_n = { a+bi : a^2 + b^2 = 1 (mod n) }.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gaussfermat/modmath.hpp"

namespace gaussfermat {

/// Raised when two residues with different moduli are combined.
class ModulusMismatch : public std::invalid_argument {
 public:
  ModulusMismatch(u64 lhs, u64 rhs)
      : std::invalid_argument("modulus mismatch: " + std::to_string(lhs) + " vs " +
                              std::to_string(rhs)) {}
};

/// A Gaussian integer before reduction, e.g. the base 1+2i.
/// Components are bounded by 2^31 in absolute value so that z * conj(z)
/// fits in 64 bits exactly.
class GaussianBase {
 public:
  static constexpr i64 kComponentLimit = i64{1} << 31;

  constexpr GaussianBase(i64 re, i64 im) : re_(re), im_(im) {
    if (re < -kComponentLimit || re > kComponentLimit || im < -kComponentLimit ||
        im > kComponentLimit) {
      throw std::out_of_range("Gaussian base component exceeds 2^31");
    }
    if (re == 0 && im == 0) throw std::invalid_argument("Gaussian base must be nonzero");
  }

  constexpr i64 re() const { return re_; }
  constexpr i64 im() const { return im_; }

  /// z * conj(z) over the integers.
  constexpr u64 norm() const {
    const u64 a = static_cast<u64>(re_ < 0 ? -re_ : re_);
    const u64 b = static_cast<u64>(im_ < 0 ? -im_ : im_);
    return a * a + b * b;
  }

  friend constexpr bool operator==(const GaussianBase&, const GaussianBase&) = default;

 private:
  i64 re_;
  i64 im_;
};

/// Canonical rendering "a+bi" / "a-bi".
std::string to_string(const GaussianBase& z);

/// Parses "a+bi", "a-bi", "a + b i", "bi", "a", "i", "-i" and similar.
/// Throws std::invalid_argument on malformed input.
GaussianBase parse_gaussian_base(std::string_view text);

/// Element of Z[i]/nZ[i] with canonical components in [0, n).
class GaussianResidue {
 public:
  /// Components must already be canonical.
  GaussianResidue(u64 re, u64 im, u64 modulus) : re_(re), im_(im), n_(modulus) {
    require_modulus(modulus);
    if (re >= modulus || im >= modulus) {
      throw std::out_of_range("residue components must lie in [0, n)");
    }
  }

  static GaussianResidue one(u64 modulus) { return {1, 0, modulus}; }
  static GaussianResidue zero(u64 modulus) { return {0, 0, modulus}; }

  u64 re() const { return re_; }
  u64 im() const { return im_; }
  u64 modulus() const { return n_; }

  bool is_one() const { return re_ == 1 && im_ == 0; }

  friend bool operator==(const GaussianResidue&, const GaussianResidue&) = default;
  friend auto operator<=>(const GaussianResidue&, const GaussianResidue&) = default;

 private:
  struct Unchecked {};
  GaussianResidue(Unchecked, u64 re, u64 im, u64 modulus) : re_(re), im_(im), n_(modulus) {}

  friend GaussianResidue add(const GaussianResidue&, const GaussianResidue&);
  friend GaussianResidue mul(const GaussianResidue&, const GaussianResidue&);
  friend GaussianResidue conj(const GaussianResidue&);
  friend GaussianResidue scale(const GaussianResidue&, u64);

  u64 re_;
  u64 im_;
  u64 n_;
};

std::string to_string(const GaussianResidue& z);

GaussianResidue reduce(const GaussianBase& z, u64 modulus);

GaussianResidue add(const GaussianResidue& x, const GaussianResidue& y);
GaussianResidue mul(const GaussianResidue& x, const GaussianResidue& y);
GaussianResidue conj(const GaussianResidue& z);

/// Multiplies both components by an integer scalar.
GaussianResidue scale(const GaussianResidue& z, u64 k);

/// (re^2 + im^2) mod n.
u64 norm(const GaussianResidue& z);

/// conj(z) * norm(z)^-1; empty when gcd(norm(z), n) > 1.
std::optional<GaussianResidue> inverse(const GaussianResidue& z);

GaussianResidue pow(const GaussianResidue& z, u64 exponent);

/// z / conj(z) reduced mod n, an element of G_n. Empty when
/// gcd(n, z * conj(z)) > 1, i.e. the base is unusable for this modulus.
std::optional<GaussianResidue> unit_ratio(const GaussianBase& z, u64 modulus);

inline GaussianResidue operator+(const GaussianResidue& x, const GaussianResidue& y) {
  return add(x, y);
}
inline GaussianResidue operator*(const GaussianResidue& x, const GaussianResidue& y) {
  return mul(x, y);
}

inline constexpr u64 kDefaultEnumerationCap = 10'000;

/// Moduli below this are enumerated by scanning all n^2 pairs; larger ones
/// are composed from per-prime-power solution sets with the CRT.
inline constexpr u64 kDirectScanLimit = 300;

/// All elements of G_n, ascending by (re, im).
/// Throws std::out_of_range when n exceeds `cap`.
std::vector<GaussianResidue> enumerate_group(u64 modulus, u64 cap = kDefaultEnumerationCap);

/// Solutions (a, b) of a^2 + b^2 = 1 (mod q) for a prime power q, as pairs in
/// ascending order. Runs in O(q + |G_q|).
std::vector<std::pair<u64, u64>> norm_one_solutions(u64 prime_power);

}  // namespace gaussfermat
