#include "mmfp/qseries.hpp"

#include "mmfp/kernels.hpp"

namespace mmfp {

QSeries::QSeries(const FieldTag& tag, int weight, std::vector<std::uint64_t> flat)
    : tag_(tag), weight_(weight), flat_(std::move(flat)) {
  if (weight < 0) raise(errc::invalid_argument, "negative weight tag");
  if (flat_.empty() || flat_.size() % tag_.d != 0)
    raise(errc::invalid_argument, "coefficient buffer does not match precision");
  for (auto& v : flat_) v %= tag_.p;
}

QSeries QSeries::zero(const FieldTag& tag, int weight, std::size_t precision) {
  if (precision == 0) raise(errc::invalid_argument, "precision must be >= 1");
  return QSeries(tag, weight, std::vector<std::uint64_t>(precision * tag.d, 0));
}

FieldElement QSeries::coeff(std::size_t n) const {
  if (n >= precision()) raise(errc::insufficient_precision, "coefficient index past precision");
  return FieldElement(tag_, flat_[n * tag_.d], tag_.d == 2 ? flat_[n * tag_.d + 1] : 0);
}

void QSeries::set_coeff(std::size_t n, const FieldElement& value) {
  if (n >= precision()) raise(errc::insufficient_precision, "coefficient index past precision");
  if (!(value.tag() == tag_)) raise(errc::field_mismatch, "coefficient from another field");
  flat_[n * tag_.d] = value.c0();
  if (tag_.d == 2) flat_[n * tag_.d + 1] = value.c1();
}

bool QSeries::is_zero() const noexcept {
  for (auto v : flat_)
    if (v) return false;
  return true;
}

std::optional<std::size_t> QSeries::leading_index() const noexcept {
  for (std::size_t n = 0; n * tag_.d < flat_.size(); ++n)
    for (std::uint32_t j = 0; j < tag_.d; ++j)
      if (flat_[n * tag_.d + j]) return n;
  return std::nullopt;
}

QSeries QSeries::truncated(std::size_t m) const {
  if (m == 0 || m > precision())
    raise(errc::insufficient_precision, "cannot truncate to " + std::to_string(m));
  return QSeries(tag_, weight_,
                 std::vector<std::uint64_t>(flat_.begin(), flat_.begin() + m * tag_.d));
}

QSeries QSeries::scaled(const FieldElement& c) const {
  QSeries out = *this;
  for (std::size_t n = 0; n < precision(); ++n) out.set_coeff(n, coeff(n) * c);
  return out;
}

QSeries QSeries::lifted(const ExtensionField& field) const {
  if (field.tag() == tag_) return *this;
  if (tag_.d != 1 || field.tag().p != tag_.p)
    raise(errc::field_mismatch, "can only lift prime-field series");
  QSeries out = zero(field.tag(), weight_, precision());
  for (std::size_t n = 0; n < precision(); ++n)
    out.set_coeff(n, field.element(flat_[n]));
  return out;
}

static void check_addable(const QSeries& a, const QSeries& b) {
  if (!(a.tag() == b.tag())) raise(errc::field_mismatch, "series over different fields");
  if (a.weight() != b.weight())
    raise(errc::invalid_argument, "adding series of different weights");
}

QSeries QSeries::operator+(const QSeries& o) const {
  check_addable(*this, o);
  std::size_t m = std::min(precision(), o.precision());
  QSeries out = zero(tag_, weight_, m);
  for (std::size_t n = 0; n < m; ++n) out.set_coeff(n, coeff(n) + o.coeff(n));
  return out;
}

QSeries QSeries::operator-(const QSeries& o) const {
  check_addable(*this, o);
  std::size_t m = std::min(precision(), o.precision());
  QSeries out = zero(tag_, weight_, m);
  for (std::size_t n = 0; n < m; ++n) out.set_coeff(n, coeff(n) - o.coeff(n));
  return out;
}

bool QSeries::agrees_with(const QSeries& o, std::size_t through) const {
  if (precision() < through || o.precision() < through)
    raise(errc::insufficient_precision, "comparison past available precision");
  for (std::size_t n = 0; n < through; ++n)
    if (!(coeff(n) == o.coeff(n))) return false;
  return true;
}

QSeries series_mul(const QSeries& f, const QSeries& g) {
  if (!(f.tag() == g.tag())) raise(errc::field_mismatch, "series over different fields");
  const FieldTag& tag = f.tag();
  std::size_t m = std::min(f.precision(), g.precision());
  QSeries out = QSeries::zero(tag, f.weight() + g.weight(), m);
  if (tag.d == 1) {
    std::vector<std::uint64_t> c(m);
    kernels::cauchy_product(f.flat().data(), f.precision(), g.flat().data(), g.precision(),
                            c.data(), m, tag.p);
    return QSeries(tag, f.weight() + g.weight(), std::move(c));
  }
  for (std::size_t i = 0; i < m; ++i) {
    FieldElement a = f.coeff(i);
    if (a.is_zero()) continue;
    for (std::size_t j = 0; i + j < m; ++j)
      out.set_coeff(i + j, out.coeff(i + j) + a * g.coeff(j));
  }
  return out;
}

QSeries series_pow(const QSeries& f, unsigned e, std::size_t precision) {
  QSeries base = f.truncated(precision);
  QSeries result = QSeries::zero(f.tag(), 0, base.precision());
  result.set_coeff(0, FieldElement(f.tag(), 1));
  QSeries acc = result;
  bool started = false;
  for (int bit = 31; bit >= 0; --bit) {
    if (started) acc = series_mul(acc, acc);
    if (e & (1u << bit)) {
      acc = started ? series_mul(acc, base) : base;
      started = true;
    }
  }
  return started ? acc : result;  // e == 0 gives the constant 1, weight 0
}

BigInt divisor_power_sum(std::uint64_t n, unsigned r) {
  if (n == 0) raise(errc::invalid_argument, "divisor sum of 0");
  BigInt total = 0;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    BigInt t;
    mpz_ui_pow_ui(t.get_mpz_t(), d, r);
    total += t;
    std::uint64_t e = n / d;
    if (e != d) {
      mpz_ui_pow_ui(t.get_mpz_t(), e, r);
      total += t;
    }
  }
  return total;
}

Rational bernoulli(unsigned k) {
  // B_m = -1/(m+1) * sum_{j<m} C(m+1, j) B_j
  std::vector<Rational> b;
  b.reserve(k + 1);
  b.emplace_back(1);
  for (unsigned m = 1; m <= k; ++m) {
    Rational sum = 0;
    BigInt binom;
    for (unsigned j = 0; j < m; ++j) {
      mpz_bin_uiui(binom.get_mpz_t(), m + 1, j);
      sum += Rational(binom) * b[j];
    }
    Rational val = -sum / Rational(m + 1);
    val.canonicalize();
    b.push_back(val);
  }
  return b[k];
}

// sigma_{k-1}(n) mod p by summing d^{k-1} mod p over divisors.
static std::uint64_t sigma_mod(std::uint64_t n, unsigned r, std::uint64_t p) {
  std::uint64_t total = 0;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    total = fp::add(total, fp::pow(d, r, p), p);
    std::uint64_t e = n / d;
    if (e != d) total = fp::add(total, fp::pow(e, r, p), p);
  }
  return total;
}

QSeries eisenstein_qexp(int k, const Prime& p, std::size_t m) {
  if (p.value() < 5) raise(errc::unsupported, "characteristic must be >= 5");
  if (k < 4 || k % 2) raise(errc::invalid_argument, "weight must be even and >= 4");
  if (m == 0) raise(errc::invalid_argument, "precision must be >= 1");
  ExtensionField F(p, 1);
  QSeries out = QSeries::zero(F.tag(), k, m);
  out.set_coeff(0, F.one());
  if (static_cast<std::uint64_t>(k) % (p.value() - 1) == 0) {
    // von Staudt-Clausen: ord_p(B_k) = -1 here, so -2k/B_k reduces to 0
    return out;
  }
  Rational constant = Rational(-2 * k) / bernoulli(static_cast<unsigned>(k));
  constant.canonicalize();
  FieldElement c = reduce_rational(constant, p);
  for (std::size_t n = 1; n < m; ++n)
    out.set_coeff(n, c * F.element(sigma_mod(n, static_cast<unsigned>(k - 1), p.value())));
  return out;
}

QSeries delta_qexp(const Prime& p, std::size_t m) {
  if (p.value() < 5) raise(errc::unsupported, "characteristic must be >= 5");
  if (m < 2) raise(errc::invalid_argument, "precision must be >= 2");
  ExtensionField F(p, 1);
  std::size_t inner = m - 1;
  // prod (1 - q^n), truncated; factors with n >= inner cannot contribute
  std::vector<std::uint64_t> prod(inner, 0);
  prod[0] = 1;
  for (std::size_t n = 1; n < inner; ++n)
    for (std::size_t j = inner; j-- > n;)
      prod[j] = fp::sub(prod[j], prod[j - n], p.value());
  QSeries eta(F.tag(), 0, std::move(prod));
  QSeries eta24 = series_pow(eta, 24, inner);
  QSeries out = QSeries::zero(F.tag(), 12, m);
  for (std::size_t n = 0; n < inner; ++n) out.set_coeff(n + 1, eta24.coeff(n));
  return out;
}

HasseInvariant hasse_qexp(const Prime& p, std::size_t m) {
  if (p.value() < 5) raise(errc::unsupported, "characteristic must be >= 5");
  int k = static_cast<int>(p.value()) - 1;
  QSeries series = eisenstein_qexp(k, p, m);
  // the constant-1 claim rests on p dividing the exact Eisenstein constant
  Rational constant = Rational(-2 * k) / bernoulli(static_cast<unsigned>(k));
  constant.canonicalize();
  BigInt pz(static_cast<unsigned long>(p.value()));
  if (constant.get_den() % pz == 0 || constant.get_num() % pz != 0)
    raise(errc::hasse_not_constant,
          "Eisenstein constant -2k/B_k is not divisible by " + std::to_string(p.value()));
  ExtensionField F(p, 1);
  for (std::size_t n = 0; n < m; ++n) {
    FieldElement expect = n == 0 ? F.one() : F.zero();
    if (!(series.coeff(n) == expect))
      raise(errc::hasse_not_constant, "E_{p-1} deviates from 1 at q^" + std::to_string(n));
  }
  return HasseInvariant{p, std::move(series)};
}

}  // namespace mmfp
