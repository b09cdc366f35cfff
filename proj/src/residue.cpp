#include "gaussfermat/residue.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "gaussfermat/arith.hpp"

namespace gaussfermat {

namespace {

void require_same_modulus(const GaussianResidue& x, const GaussianResidue& y) {
  if (x.modulus() != y.modulus()) throw ModulusMismatch(x.modulus(), y.modulus());
}

}  // namespace

std::string to_string(const GaussianBase& z) {
  std::string out = std::to_string(z.re());
  out += z.im() < 0 ? '-' : '+';
  out += std::to_string(z.im() < 0 ? -z.im() : z.im());
  out += 'i';
  return out;
}

GaussianBase parse_gaussian_base(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  auto fail = [&]() -> GaussianBase {
    throw std::invalid_argument("malformed Gaussian base: '" + std::string(text) + "'");
  };
  if (s.empty()) return fail();

  // Split into signed terms, each either real ("3") or imaginary ("2i", "i").
  i64 re = 0, im = 0;
  bool seen_re = false, seen_im = false;
  std::size_t pos = 0;
  while (pos < s.size()) {
    bool negative = false;
    if (s[pos] == '+' || s[pos] == '-') {
      negative = s[pos] == '-';
      ++pos;
    } else if (pos != 0) {
      return fail();
    }
    std::size_t end = pos;
    while (end < s.size() && std::isdigit(static_cast<unsigned char>(s[end]))) ++end;
    const bool imaginary = end < s.size() && s[end] == 'i';
    i64 value = 1;
    if (end > pos) {
      auto [ptr, ec] = std::from_chars(s.data() + pos, s.data() + end, value);
      if (ec != std::errc{} || ptr != s.data() + end) return fail();
    } else if (!imaginary) {
      return fail();
    }
    if (negative) value = -value;
    if (imaginary) {
      if (seen_im) return fail();
      seen_im = true;
      im = value;
      pos = end + 1;
    } else {
      if (seen_re || seen_im) return fail();
      seen_re = true;
      re = value;
      pos = end;
    }
  }
  return GaussianBase(re, im);
}

std::string to_string(const GaussianResidue& z) {
  return std::to_string(z.re()) + "+" + std::to_string(z.im()) + "i (mod " +
         std::to_string(z.modulus()) + ")";
}

GaussianResidue reduce(const GaussianBase& z, u64 modulus) {
  require_modulus(modulus);
  return {reduce_signed(z.re(), modulus), reduce_signed(z.im(), modulus), modulus};
}

GaussianResidue add(const GaussianResidue& x, const GaussianResidue& y) {
  require_same_modulus(x, y);
  const u64 n = x.n_;
  return {GaussianResidue::Unchecked{}, add_mod(x.re_, y.re_, n), add_mod(x.im_, y.im_, n), n};
}

GaussianResidue mul(const GaussianResidue& x, const GaussianResidue& y) {
  require_same_modulus(x, y);
  const u64 n = x.n_;
  const u64 ac = mul_mod(x.re_, y.re_, n);
  const u64 bd = mul_mod(x.im_, y.im_, n);
  const u64 ad = mul_mod(x.re_, y.im_, n);
  const u64 bc = mul_mod(x.im_, y.re_, n);
  return {GaussianResidue::Unchecked{}, sub_mod(ac, bd, n), add_mod(ad, bc, n), n};
}

GaussianResidue conj(const GaussianResidue& z) {
  return {GaussianResidue::Unchecked{}, z.re_, z.im_ == 0 ? 0 : z.n_ - z.im_, z.n_};
}

GaussianResidue scale(const GaussianResidue& z, u64 k) {
  const u64 n = z.n_;
  k %= n;
  return {GaussianResidue::Unchecked{}, mul_mod(z.re_, k, n), mul_mod(z.im_, k, n), n};
}

u64 norm(const GaussianResidue& z) {
  const u64 n = z.modulus();
  return add_mod(mul_mod(z.re(), z.re(), n), mul_mod(z.im(), z.im(), n), n);
}

std::optional<GaussianResidue> inverse(const GaussianResidue& z) {
  const u64 inv = inv_mod(norm(z), z.modulus());
  if (inv == 0) return std::nullopt;
  return scale(conj(z), inv);
}

GaussianResidue pow(const GaussianResidue& z, u64 exponent) {
  GaussianResidue result = GaussianResidue::one(z.modulus());
  GaussianResidue base = z;
  while (exponent != 0) {
    if (exponent & 1) result = mul(result, base);
    exponent >>= 1;
    if (exponent != 0) base = mul(base, base);
  }
  return result;
}

std::optional<GaussianResidue> unit_ratio(const GaussianBase& z, u64 modulus) {
  require_modulus(modulus);
  if (std::gcd(modulus, z.norm()) != 1) return std::nullopt;
  const GaussianResidue r = reduce(z, modulus);
  auto denominator = inverse(conj(r));
  // gcd(n, z zbar) = 1 implies the reduced norm is a unit as well.
  return mul(r, *denominator);
}

std::vector<std::pair<u64, u64>> norm_one_solutions(u64 q) {
  require_modulus(q);
  if (q > (u64{1} << 32)) throw std::out_of_range("norm_one_solutions: modulus too large");
  // Bucket every b by b^2 mod q (counting sort keeps each bucket ascending),
  // then for each a look up the bucket of 1 - a^2.
  std::vector<std::uint32_t> start(q + 1, 0);
  for (u64 b = 0; b < q; ++b) ++start[mul_mod(b, b, q) + 1];
  for (u64 k = 0; k < q; ++k) start[k + 1] += start[k];
  std::vector<std::uint32_t> roots(q);
  {
    std::vector<std::uint32_t> fill(start.begin(), start.end() - 1);
    for (u64 b = 0; b < q; ++b) roots[fill[mul_mod(b, b, q)]++] = static_cast<std::uint32_t>(b);
  }
  std::vector<std::pair<u64, u64>> out;
  for (u64 a = 0; a < q; ++a) {
    const u64 target = sub_mod(1 % q, mul_mod(a, a, q), q);
    for (auto k = start[target]; k < start[target + 1]; ++k) out.emplace_back(a, roots[k]);
  }
  return out;
}

std::vector<GaussianResidue> enumerate_group(u64 modulus, u64 cap) {
  require_modulus(modulus);
  if (modulus > cap) {
    throw std::out_of_range("enumerate_group: modulus " + std::to_string(modulus) +
                            " exceeds enumeration cap " + std::to_string(cap));
  }
  const u64 n = modulus;
  std::vector<GaussianResidue> out;
  if (n < kDirectScanLimit) {
    for (u64 a = 0; a < n; ++a) {
      for (u64 b = 0; b < n; ++b) {
        GaussianResidue z(a, b, n);
        if (norm(z) == 1) out.push_back(z);
      }
    }
    return out;
  }

  // CRT: x = sum_j x_j * M_j * (M_j^-1 mod q_j), M_j = n / q_j.
  std::vector<std::pair<u64, u64>> acc{{0, 0}};
  for (const auto& pp : factorize(n).factors) {
    const u64 q = pp.value();
    const u64 m = n / q;
    const u64 coeff = mul_mod(m, inv_mod(m % q, q), n);
    const auto local = norm_one_solutions(q);
    std::vector<std::pair<u64, u64>> next;
    next.reserve(acc.size() * local.size());
    for (const auto& [ar, ai] : acc) {
      for (const auto& [lr, li] : local) {
        next.emplace_back(add_mod(ar, mul_mod(lr, coeff, n), n),
                          add_mod(ai, mul_mod(li, coeff, n), n));
      }
    }
    acc = std::move(next);
  }
  std::sort(acc.begin(), acc.end());
  out.reserve(acc.size());
  for (const auto& [re, im] : acc) out.emplace_back(re, im, n);
  return out;
}

}  // namespace gaussfermat
