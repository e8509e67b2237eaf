#include "mmfp/field.hpp"

#include <limits>

namespace mmfp {

const char* errc_name(errc code) noexcept {
  switch (code) {
    case errc::field_mismatch: return "FieldMismatch";
    case errc::denominator_divisible_by_p: return "DenominatorDivisibleByP";
    case errc::zero_polynomial: return "ZeroPolynomial";
    case errc::insufficient_precision: return "InsufficientPrecision";
    case errc::ell_equals_p: return "EllEqualsP";
    case errc::zero_form: return "ZeroForm";
    case errc::not_a_modular_form: return "NotAModularForm";
    case errc::not_an_eigenform: return "NotAnEigenform";
    case errc::theorem_violation: return "TheoremViolation";
    case errc::unresolved_eigensystem: return "UnresolvedEigensystem";
    case errc::hasse_not_constant: return "HasseNotConstant";
    case errc::unsupported: return "Unsupported";
    case errc::invalid_argument: return "InvalidArgument";
  }
  return "UnknownError";
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

Prime::Prime(std::uint64_t value) : value_(value) {
  if (!is_prime(value)) raise(errc::invalid_argument, std::to_string(value) + " is not prime");
}

namespace fp {

std::uint64_t pow(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
  std::uint64_t r = 1 % p, b = base % p;
  while (exp) {
    if (exp & 1) r = r * b % p;
    b = b * b % p;
    exp >>= 1;
  }
  return r;
}

std::uint64_t inv(std::uint64_t a, std::uint64_t p) {
  a %= p;
  if (a == 0) raise(errc::invalid_argument, "inverse of 0 mod " + std::to_string(p));
  return pow(a, p - 2, p);
}

}  // namespace fp

FieldElement::FieldElement(const FieldTag& tag, std::uint64_t c0, std::uint64_t c1)
    : tag_(tag), c_{c0 % tag.p, c1 % tag.p} {
  if (tag.d == 1 && c_[1] != 0)
    raise(errc::invalid_argument, "degree-1 element with nonzero x coefficient");
}

static void check_tags(const FieldElement& a, const FieldElement& b) {
  if (!(a.tag() == b.tag()))
    raise(errc::field_mismatch, "operands live in different fields");
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  check_tags(*this, o);
  return FieldElement(tag_, fp::add(c_[0], o.c_[0], tag_.p), fp::add(c_[1], o.c_[1], tag_.p));
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
  check_tags(*this, o);
  return FieldElement(tag_, fp::sub(c_[0], o.c_[0], tag_.p), fp::sub(c_[1], o.c_[1], tag_.p));
}

FieldElement FieldElement::operator-() const {
  return FieldElement(tag_, c_[0] ? tag_.p - c_[0] : 0, c_[1] ? tag_.p - c_[1] : 0);
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
  check_tags(*this, o);
  const std::uint64_t p = tag_.p;
  if (tag_.d == 1) return FieldElement(tag_, fp::mul(c_[0], o.c_[0], p));
  // (a0 + a1 x)(b0 + b1 x) with x^2 = -m1 x - m0
  std::uint64_t t0 = fp::mul(c_[0], o.c_[0], p);
  std::uint64_t t1 = fp::add(fp::mul(c_[0], o.c_[1], p), fp::mul(c_[1], o.c_[0], p), p);
  std::uint64_t t2 = fp::mul(c_[1], o.c_[1], p);
  return FieldElement(tag_, fp::sub(t0, fp::mul(t2, tag_.m0, p), p),
                      fp::sub(t1, fp::mul(t2, tag_.m1, p), p));
}

FieldElement FieldElement::inverse() const {
  const std::uint64_t p = tag_.p;
  if (is_zero()) raise(errc::invalid_argument, "inverse of zero");
  if (tag_.d == 1 || c_[1] == 0) return FieldElement(tag_, fp::inv(c_[0], p), 0);
  // conj(a) = a^p = (a0 - a1*m1) - a1*x; norm = a*conj lies in F_p
  FieldElement conj(tag_, fp::sub(c_[0], fp::mul(c_[1], tag_.m1, p), p), p - c_[1]);
  FieldElement n = *this * conj;
  if (n.c1() != 0) throw std::logic_error("norm left the prime field");
  std::uint64_t ninv = fp::inv(n.c0(), p);
  return FieldElement(tag_, fp::mul(conj.c0(), ninv, p), fp::mul(conj.c1(), ninv, p));
}

FieldElement FieldElement::pow(std::uint64_t e) const {
  FieldElement r(tag_, 1), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

FieldElement FieldElement::frobenius() const {
  return pow(tag_.p);
}

std::string FieldElement::str() const {
  if (tag_.d == 1) return std::to_string(c_[0]);
  return "[" + std::to_string(c_[0]) + "," + std::to_string(c_[1]) + "]";
}

// Smallest irreducible monic x^2 + m1*x + m0 in lexicographic (m0, m1) order.
static std::pair<std::uint32_t, std::uint32_t> deterministic_quadratic_modulus(std::uint64_t p) {
  for (std::uint64_t m0 = 0; m0 < p; ++m0) {
    for (std::uint64_t m1 = 0; m1 < p; ++m1) {
      bool has_root = false;
      for (std::uint64_t x = 0; x < p && !has_root; ++x)
        has_root = (x * x + m1 * x + m0) % p == 0;
      if (!has_root)
        return {static_cast<std::uint32_t>(m0), static_cast<std::uint32_t>(m1)};
    }
  }
  throw std::logic_error("no irreducible quadratic found");
}

ExtensionField::ExtensionField(const Prime& p, unsigned degree) {
  if (p.value() > std::numeric_limits<std::uint32_t>::max())
    raise(errc::invalid_argument, "characteristic does not fit in 32 bits");
  if (degree != 1 && degree != 2)
    raise(errc::unsupported, "extension degree " + std::to_string(degree) + " (cap is 2)");
  tag_.p = static_cast<std::uint32_t>(p.value());
  tag_.d = degree;
  if (degree == 2) {
    auto [m0, m1] = deterministic_quadratic_modulus(p.value());
    tag_.m0 = m0;
    tag_.m1 = m1;
    // verified irreducible by construction: no roots means no linear factor
  }
}

std::uint64_t ExtensionField::order() const noexcept {
  std::uint64_t n = tag_.p;
  return tag_.d == 2 ? n * n : n;
}

FieldElement ExtensionField::at(std::uint64_t index) const {
  return FieldElement(tag_, index % tag_.p, index / tag_.p);
}

FieldElement ExtensionField::embed(const FieldElement& sub) const {
  if (sub.tag() == tag_) return sub;
  if (sub.tag().p != tag_.p || sub.tag().d != 1)
    raise(errc::field_mismatch, "cannot embed " + sub.str());
  return FieldElement(tag_, sub.c0());
}

FieldElement reduce_rational(const Rational& r, const Prime& p) {
  ExtensionField F(p, 1);
  Rational canon = r;
  canon.canonicalize();  // mpq_class construction does not reduce to lowest terms
  BigInt pz(static_cast<unsigned long>(p.value()));
  BigInt den_mod = canon.get_den() % pz;
  if (den_mod == 0)
    raise(errc::denominator_divisible_by_p,
          "denominator of " + canon.get_str() + " vanishes mod " + std::to_string(p.value()));
  BigInt num_mod = canon.get_num() % pz;
  if (num_mod < 0) num_mod += pz;
  std::uint64_t n = num_mod.get_ui();
  std::uint64_t d = den_mod.get_ui();
  return F.element(fp::mul(n, fp::inv(d, p.value()), p.value()));
}

std::vector<FieldElement> find_roots(const std::vector<FieldElement>& poly,
                                     const ExtensionField& field,
                                     std::size_t degree_bound) {
  std::size_t deg = poly.size();
  while (deg > 0 && poly[deg - 1].is_zero()) --deg;
  if (deg == 0) raise(errc::zero_polynomial, "find_roots on the zero polynomial");
  if (deg - 1 > degree_bound)
    raise(errc::invalid_argument, "polynomial degree exceeds bound " + std::to_string(degree_bound));
  for (const auto& c : poly)
    if (!(c.tag() == field.tag()))
      raise(errc::field_mismatch, "coefficient not in the requested field");

  std::vector<FieldElement> roots;
  for (std::uint64_t i = 0; i < field.order(); ++i) {
    FieldElement x = field.at(i);
    FieldElement acc = field.zero();
    for (std::size_t j = deg; j-- > 0;) acc = acc * x + poly[j];
    if (acc.is_zero()) roots.push_back(x);
  }
  return roots;
}

}  // namespace mmfp
