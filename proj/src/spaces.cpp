#include "mmfp/spaces.hpp"

#include <algorithm>
#include <map>

namespace mmfp {

unsigned space_dimension(int k, bool cuspidal) {
  if (k < 0 || k % 2) return 0;
  unsigned dim_m = static_cast<unsigned>(k / 12) + (k % 12 == 2 ? 0 : 1);
  if (!cuspidal) return dim_m;
  return dim_m > 0 ? dim_m - 1 : 0;
}

std::size_t sturm_bound(int k) {
  if (k < 0) raise(errc::invalid_argument, "negative weight");
  return static_cast<std::size_t>(k / 12) + 1;
}

FormSpace::FormSpace(const Prime& p, int weight, bool cuspidal, Mat basis)
    : p_(p), weight_(weight), cuspidal_(cuspidal), basis_(std::move(basis)) {
  if (basis_.rows() != space_dimension(weight_, cuspidal_))
    throw std::logic_error("basis row count disagrees with the dimension formula");
  ExtensionField F(p_, 1);
  for (std::size_t i = 0; i < basis_.rows(); ++i)
    for (std::size_t j = 0; j < basis_.rows(); ++j) {
      FieldElement want = i == j ? F.one() : F.zero();
      if (!(basis_.at(i, pivot_of_row(j)) == want))
        throw std::logic_error("basis is not in echelon form");
    }
}

QSeries FormSpace::row_series(std::size_t i) const {
  if (i >= basis_.rows()) raise(errc::invalid_argument, "basis row out of range");
  std::vector<std::uint64_t> flat(basis_.flat().begin() + i * precision(),
                                  basis_.flat().begin() + (i + 1) * precision());
  return QSeries(basis_.tag(), weight_, std::move(flat));
}

SpaceProvider direct_provider(const Prime& p) {
  return [p](int k, bool cuspidal, std::size_t precision) {
    return miller_basis(k, p, precision, cuspidal);
  };
}

FormSpace miller_basis(int k, const Prime& p, std::size_t m, bool cuspidal) {
  if (p.value() < 5) raise(errc::unsupported, "characteristic must be >= 5");
  if (k < 0) raise(errc::invalid_argument, "negative weight");
  if (m < sturm_bound(k) + 1)
    raise(errc::insufficient_precision,
          "precision " + std::to_string(m) + " below sturm_bound(k)+1");
  ExtensionField F(p, 1);
  unsigned dim_m = space_dimension(k, false);
  if (dim_m == 0) return FormSpace(p, k, cuspidal, Mat(F.tag(), 0, m));

  QSeries e4 = eisenstein_qexp(4, p, m);
  QSeries e6 = k >= 6 ? eisenstein_qexp(6, p, m) : QSeries::zero(F.tag(), 6, m);
  QSeries delta = k >= 12 ? delta_qexp(p, m) : QSeries::zero(F.tag(), 12, m);

  // power ladders, filled lazily
  std::map<unsigned, QSeries> pow4, pow6, powd;
  auto power = [&](std::map<unsigned, QSeries>& cache, const QSeries& base, unsigned e) {
    auto it = cache.find(e);
    if (it == cache.end()) it = cache.emplace(e, series_pow(base, e, m)).first;
    return it->second;
  };

  std::vector<QSeries> monomials;
  for (int c = k / 12; c >= 0; --c)
    for (int b = (k - 12 * c) / 6; b >= 0; --b) {
      int rem = k - 12 * c - 6 * b;
      if (rem % 4) continue;
      QSeries mono = power(pow4, e4, static_cast<unsigned>(rem / 4));
      if (b) mono = series_mul(mono, power(pow6, e6, static_cast<unsigned>(b)));
      if (c) mono = series_mul(mono, power(powd, delta, static_cast<unsigned>(c)));
      monomials.push_back(std::move(mono));
    }

  Mat rows(F.tag(), monomials.size(), m);
  for (std::size_t i = 0; i < monomials.size(); ++i)
    std::copy(monomials[i].flat().begin(), monomials[i].flat().end(),
              rows.flat().begin() + i * m);
  std::vector<std::size_t> pivots = rows.rref();
  if (pivots.size() != dim_m)
    throw std::logic_error("monomial rank disagrees with the dimension formula");
  for (std::size_t i = 0; i < pivots.size(); ++i)
    if (pivots[i] != i) throw std::logic_error("echelon pivots are not a_0..a_{d-1}");

  Mat basis = rows.top_rows(dim_m);
  if (cuspidal) {
    Mat cusp(F.tag(), dim_m - 1, m);
    std::copy(basis.flat().begin() + m, basis.flat().end(), cusp.flat().begin());
    return FormSpace(p, k, true, std::move(cusp));
  }
  return FormSpace(p, k, false, std::move(basis));
}

std::optional<std::vector<FieldElement>> membership(const QSeries& f, int k, const Prime& p,
                                                    const SpaceProvider* provider) {
  if (f.tag().p != p.value()) raise(errc::field_mismatch, "series characteristic differs from p");
  int k_big = std::max(k, f.weight());
  std::size_t cert = sturm_bound(k_big) + 1;
  if (f.precision() < cert)
    raise(errc::insufficient_precision,
          "need " + std::to_string(cert) + " coefficients, have " + std::to_string(f.precision()));

  unsigned dim = space_dimension(k, false);
  ExtensionField Ff(p, f.tag().d);
  if (dim == 0) {
    for (std::size_t n = 0; n < cert; ++n)
      if (!f.coeff(n).is_zero()) return std::nullopt;
    return std::vector<FieldElement>{};
  }

  SpaceProvider direct = direct_provider(p);
  const SpaceProvider& get = provider ? *provider : direct;
  FormSpace space = get(k, false, cert);

  std::vector<FieldElement> coords;
  coords.reserve(dim);
  for (std::size_t i = 0; i < dim; ++i) coords.push_back(f.coeff(space.pivot_of_row(i)));
  for (std::size_t n = 0; n < cert; ++n) {
    FieldElement acc = Ff.zero();
    for (std::size_t i = 0; i < dim; ++i)
      acc = acc + coords[i] * Ff.embed(space.basis().at(i, n));
    if (!(acc == f.coeff(n))) return std::nullopt;
  }
  return coords;
}

FiltrationReport filtration(const QSeries& f, const Prime& p, const SpaceProvider* provider) {
  if (f.is_zero()) raise(errc::zero_form, "the zero form has no filtration");
  int k = f.weight();
  auto top = membership(f, k, p, provider);
  if (!top) raise(errc::not_a_modular_form, "series is not in M_" + std::to_string(k));
  FiltrationReport report{k, k, *top};
  // membership along w = k mod (p-1) is upward-closed, so walk down until it fails
  int step = static_cast<int>(p.value()) - 1;
  for (int w = k - step; w >= 0; w -= step) {
    auto coords = membership(f, w, p, provider);
    if (!coords) break;
    report.filtration = w;
    report.witness = std::move(*coords);
  }
  return report;
}

}  // namespace mmfp
