#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mmfp/field.hpp"

namespace mmfp {

// Truncated q-expansion a_0 + a_1 q + ... + a_{m-1} q^{m-1} over F_{p^d},
// with an attached weight tag.  Precision is never extended silently.
class QSeries {
public:
  // flat holds precision*d residues, element n at [n*d .. n*d+d).
  QSeries(const FieldTag& tag, int weight, std::vector<std::uint64_t> flat);
  static QSeries zero(const FieldTag& tag, int weight, std::size_t precision);

  const FieldTag& tag() const noexcept { return tag_; }
  int weight() const noexcept { return weight_; }
  std::size_t precision() const noexcept { return flat_.size() / tag_.d; }

  FieldElement coeff(std::size_t n) const;
  void set_coeff(std::size_t n, const FieldElement& value);

  bool is_zero() const noexcept;
  std::optional<std::size_t> leading_index() const noexcept;

  QSeries truncated(std::size_t m) const;
  QSeries scaled(const FieldElement& c) const;
  QSeries lifted(const ExtensionField& field) const;  // retag into F_{p^2}
  QSeries operator+(const QSeries& o) const;
  QSeries operator-(const QSeries& o) const;

  // Equality of the first `through` coefficients.
  bool agrees_with(const QSeries& o, std::size_t through) const;

  const std::vector<std::uint64_t>& flat() const noexcept { return flat_; }

private:
  FieldTag tag_;
  int weight_ = 0;
  std::vector<std::uint64_t> flat_;
};

// Cauchy product truncated to the smaller precision; weights add.
QSeries series_mul(const QSeries& f, const QSeries& g);
QSeries series_pow(const QSeries& f, unsigned e, std::size_t precision);

// sigma_r(n) = sum of d^r over divisors d of n, exactly.
BigInt divisor_power_sum(std::uint64_t n, unsigned r);

// B_k with B_1 = -1/2, by the defining recurrence over exact rationals.
Rational bernoulli(unsigned k);

// E_k = 1 - (2k/B_k) sum_{n>=1} sigma_{k-1}(n) q^n mod p, weight tag k.
// For k divisible by p-1 the reduced constant vanishes and the constant
// series 1 is returned directly.
QSeries eisenstein_qexp(int k, const Prime& p, std::size_t m);

// q * prod_{n>=1} (1 - q^n)^24 mod p, weight tag 12.
QSeries delta_qexp(const Prime& p, std::size_t m);

// E_{p-1} mod p, with the constant-1 property checked rather than assumed.
struct HasseInvariant {
  Prime p;
  QSeries series;  // weight p-1, identically 1
};

HasseInvariant hasse_qexp(const Prime& p, std::size_t m);

}  // namespace mmfp
