#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "mmfp/errors.hpp"

namespace mmfp {

using BigInt = mpz_class;
// Arbitrary-precision fraction, kept canonical (lowest terms, denominator > 0)
// by every constructor and operator below.
using Rational = mpq_class;

bool is_prime(std::uint64_t n);

// Prime verified by trial division at construction.
class Prime {
public:
  explicit Prime(std::uint64_t value);
  std::uint64_t value() const noexcept { return value_; }
  friend bool operator==(const Prime&, const Prime&) = default;

private:
  std::uint64_t value_ = 0;
};

// Identifies F_{p^d}.  For d == 2 the modulus is x^2 + m1*x + m0, the smallest
// irreducible monic in lexicographic (m0, m1) order, so element labels are
// reproducible across runs.  p must fit in 32 bits.
struct FieldTag {
  std::uint32_t p = 0;
  std::uint32_t d = 1;
  std::uint32_t m0 = 0;
  std::uint32_t m1 = 0;
  friend bool operator==(const FieldTag&, const FieldTag&) = default;
};

// Scalar arithmetic mod p.
namespace fp {

inline std::uint64_t add(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  std::uint64_t s = a + b;
  return s >= p ? s - p : s;
}

inline std::uint64_t sub(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return a >= b ? a - b : a + p - b;
}

inline std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return a * b % p;  // operands are canonical residues, p < 2^32
}

std::uint64_t pow(std::uint64_t base, std::uint64_t exp, std::uint64_t p);
std::uint64_t inv(std::uint64_t a, std::uint64_t p);

}  // namespace fp

// Element of F_{p^d}, d <= 2, as c0 + c1*x with canonical residues.  Arithmetic
// between distinct tags is a field_mismatch error.
class FieldElement {
public:
  FieldElement() = default;
  FieldElement(const FieldTag& tag, std::uint64_t c0, std::uint64_t c1 = 0);

  const FieldTag& tag() const noexcept { return tag_; }
  std::uint64_t c0() const noexcept { return c_[0]; }
  std::uint64_t c1() const noexcept { return c_[1]; }
  bool is_zero() const noexcept { return c_[0] == 0 && c_[1] == 0; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement inverse() const;
  FieldElement pow(std::uint64_t e) const;
  FieldElement frobenius() const;  // a^p

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.tag_ == b.tag_ && a.c_ == b.c_;
  }

  std::string str() const;

private:
  FieldTag tag_;
  std::array<std::uint64_t, 2> c_ = {0, 0};
};

// F_p or F_{p^2} with the deterministic modulus; factory for elements.
class ExtensionField {
public:
  ExtensionField(const Prime& p, unsigned degree);

  const FieldTag& tag() const noexcept { return tag_; }
  std::uint64_t characteristic() const noexcept { return tag_.p; }
  unsigned degree() const noexcept { return tag_.d; }
  std::uint64_t order() const noexcept;  // p^d

  FieldElement zero() const { return FieldElement(tag_, 0); }
  FieldElement one() const { return FieldElement(tag_, 1); }
  FieldElement element(std::uint64_t c0, std::uint64_t c1 = 0) const {
    return FieldElement(tag_, c0 % tag_.p, c1 % tag_.p);
  }
  // Enumeration used by find_roots: index n -> (n mod p) + (n div p)*x, so the
  // prime-field elements come first.
  FieldElement at(std::uint64_t index) const;
  // Embeds a prime-field value of the same characteristic.
  FieldElement embed(const FieldElement& sub) const;

private:
  FieldTag tag_;
};

// (num mod p) * (den mod p)^{-1}; denominator_divisible_by_p if p divides the
// denominator in lowest terms.
FieldElement reduce_rational(const Rational& r, const Prime& p);

// All roots of poly (coefficients ascending, over `field`) found by exhaustive
// evaluation; each root listed once, in enumeration order.
std::vector<FieldElement> find_roots(const std::vector<FieldElement>& poly,
                                     const ExtensionField& field,
                                     std::size_t degree_bound = 64);

}  // namespace mmfp
