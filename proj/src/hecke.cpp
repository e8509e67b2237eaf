#include "mmfp/hecke.hpp"

#include <algorithm>

namespace mmfp {

QSeries apply_tl(const QSeries& f, std::uint64_t ell, const Prime& p) {
  if (!is_prime(ell)) raise(errc::invalid_argument, "ell must be prime");
  if (ell == p.value()) raise(errc::ell_equals_p, "T_p is out of scope");
  if (f.tag().p != p.value()) raise(errc::field_mismatch, "series characteristic differs from p");
  std::size_t m = f.precision();
  std::size_t out_prec = (m - 1) / ell + 1;
  int k = f.weight();
  // ell^{k-1} mod p; weight 0 uses ell^{-1} = ell^{p-2}
  std::uint64_t lk = k >= 1 ? fp::pow(ell, static_cast<std::uint64_t>(k - 1), p.value())
                            : fp::inv(ell, p.value());
  ExtensionField F(p, f.tag().d);
  FieldElement scale = F.element(lk);
  QSeries out = QSeries::zero(f.tag(), k, out_prec);
  for (std::size_t n = 0; n < out_prec; ++n) {
    FieldElement v = f.coeff(n * ell);
    if (n % ell == 0) v = v + scale * f.coeff(n / ell);
    out.set_coeff(n, v);
  }
  return out;
}

// Coordinates of g in the space's basis, certified through cert coefficients.
static std::vector<FieldElement> coords_in_space(const FormSpace& space, const QSeries& g,
                                                 std::size_t cert) {
  ExtensionField Fg(space.p(), g.tag().d);
  std::vector<FieldElement> coords;
  coords.reserve(space.dimension());
  for (std::size_t i = 0; i < space.dimension(); ++i)
    coords.push_back(g.coeff(space.pivot_of_row(i)));
  for (std::size_t n = 0; n < std::min(cert, g.precision()); ++n) {
    FieldElement acc = Fg.zero();
    for (std::size_t i = 0; i < space.dimension(); ++i)
      acc = acc + coords[i] * Fg.embed(space.basis().at(i, n));
    if (!(acc == g.coeff(n)))
      throw std::logic_error("Hecke image left the space");
  }
  return coords;
}

HeckeMatrix hecke_matrix(const FormSpace& space, std::uint64_t ell) {
  if (!is_prime(ell)) raise(errc::invalid_argument, "ell must be prime");
  if (ell == space.p().value()) raise(errc::ell_equals_p, "T_p is out of scope");
  std::size_t cert = sturm_bound(space.weight()) + 1;
  if (space.precision() < ell * cert)
    raise(errc::insufficient_precision,
          "space precision " + std::to_string(space.precision()) + " below ell*(sturm+1)");
  Mat entries(space.basis().tag(), space.dimension(), space.dimension());
  for (std::size_t i = 0; i < space.dimension(); ++i) {
    QSeries g = apply_tl(space.row_series(i), ell, space.p());
    std::vector<FieldElement> c = coords_in_space(space, g, cert);
    for (std::size_t r = 0; r < c.size(); ++r) entries.set(r, i, c[r]);
  }
  return HeckeMatrix{ell, space.weight(), space.cuspidal(), std::move(entries)};
}

const FieldElement* Eigensystem::value_at(std::uint64_t ell) const {
  for (const auto& [l, v] : values)
    if (l == ell) return &v;
  return nullptr;
}

Eigensystem eisenstein_eigensystem(int k, const Prime& p,
                                   const std::vector<std::uint64_t>& primes) {
  if (k < 4 || k % 2) raise(errc::invalid_argument, "weight must be even and >= 4");
  ExtensionField F(p, 1);
  Eigensystem phi{F.tag(), {}};
  for (std::uint64_t ell : primes) {
    if (ell == p.value()) raise(errc::ell_equals_p, "T_p is out of scope");
    phi.values.emplace_back(
        ell, F.element(fp::add(1, fp::pow(ell, static_cast<std::uint64_t>(k - 1), p.value()),
                               p.value())));
  }
  return phi;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t bound, std::uint64_t excluded) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 2; n <= bound; ++n)
    if (is_prime(n) && n != excluded) out.push_back(n);
  return out;
}

namespace {

// Work item during recursive splitting: an echelonized row basis of a
// T-invariant subspace, in coordinates of the ambient Miller basis.
struct Subspace {
  ExtensionField field;
  Mat rows;
  std::vector<std::pair<std::uint64_t, FieldElement>> eigenvalues;
  bool capped = false;  // splitting needed a field beyond the degree cap
};

Mat rref_copy(Mat m) {
  m.rref();
  std::size_t rank = m.rows();
  while (rank > 0 && m.row_is_zero(rank - 1)) --rank;
  return m.top_rows(rank);
}

// Restriction R of the row action v -> v*A to span(rows): R*rows = rows*A.
Mat restrict_action(const Mat& rows, const Mat& action) {
  Mat image = rows.times(action);
  Mat probe = rows;
  std::vector<std::size_t> pivots = probe.rref();
  if (!(probe == rows) || pivots.size() != rows.rows())
    throw std::logic_error("subspace basis is not echelonized");
  std::size_t s = rows.rows();
  Mat r(rows.tag(), s, s);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j) r.set(i, j, image.at(i, pivots[j]));
  if (!(r.times(rows) == image)) throw std::logic_error("subspace is not T-invariant");
  return r;
}

void split_by_prime(Subspace sub, std::uint64_t ell, const Mat& action_fp,
                    const ExtensionField& f2, std::vector<Subspace>& out) {
  Mat action = sub.field.degree() == 1 ? action_fp : action_fp.lifted(sub.field);
  Mat r = restrict_action(sub.rows, action);
  std::vector<FieldElement> cp = r.charpoly();
  std::vector<FieldElement> roots = find_roots(cp, sub.field);
  if (roots.empty() && sub.field.degree() == 1) {
    Subspace lifted{f2, sub.rows.lifted(f2), {}, false};
    for (const auto& [l, v] : sub.eigenvalues) lifted.eigenvalues.emplace_back(l, f2.embed(v));
    split_by_prime(std::move(lifted), ell, action_fp, f2, out);
    return;
  }
  if (roots.empty()) {
    sub.capped = true;  // eigenvalue lies beyond F_{p^2}
    out.push_back(std::move(sub));
    return;
  }
  std::size_t s = sub.rows.rows();
  std::size_t claimed = 0;
  for (const FieldElement& lambda : roots) {
    Mat shifted = r;
    for (std::size_t i = 0; i < s; ++i) shifted.set(i, i, shifted.at(i, i) - lambda);
    Mat nil = shifted.powed(static_cast<unsigned>(s));
    Mat kernel = nil.transposed().kernel_basis();  // left kernel: generalized eigenvectors
    Mat piece = rref_copy(kernel.times(sub.rows));
    claimed += piece.rows();
    Subspace next{sub.field, std::move(piece), sub.eigenvalues, false};
    next.eigenvalues.emplace_back(ell, lambda);
    out.push_back(std::move(next));
  }
  if (claimed < s) {
    // the rootless part: image of the product of the (R - lambda)^s
    Mat prod = Mat::identity(sub.field.tag(), s);
    for (const FieldElement& lambda : roots) {
      Mat shifted = r;
      for (std::size_t i = 0; i < s; ++i) shifted.set(i, i, shifted.at(i, i) - lambda);
      prod = prod.times(shifted.powed(static_cast<unsigned>(s)));
    }
    Mat rest = rref_copy(prod.times(sub.rows));
    split_by_prime(Subspace{sub.field, std::move(rest), sub.eigenvalues, false}, ell, action_fp,
                   f2, out);
  }
}

// Cuts the subspace down to genuine common eigenvectors for its recorded
// eigenvalues (nonempty by commutativity); rows stay echelonized.
Mat common_eigenvector_rows(const Subspace& sub, const std::vector<Mat>& actions_fp,
                            const std::vector<std::uint64_t>& primes) {
  Mat rows = sub.rows;
  for (const auto& [ell, lambda] : sub.eigenvalues) {
    std::size_t idx = std::find(primes.begin(), primes.end(), ell) - primes.begin();
    Mat action =
        sub.field.degree() == 1 ? actions_fp[idx] : actions_fp[idx].lifted(sub.field);
    Mat r = restrict_action(rows, action);
    for (std::size_t i = 0; i < r.rows(); ++i) r.set(i, i, r.at(i, i) - lambda);
    Mat kernel = r.transposed().kernel_basis();
    rows = rref_copy(kernel.times(rows));
    if (rows.rows() == 0) throw std::logic_error("recorded eigenvalue has no eigenvector");
  }
  return rows;
}

}  // namespace

std::vector<EigenformRecord> decompose_eigensystems(const FormSpace& space,
                                                    const std::vector<std::uint64_t>& primes) {
  std::vector<std::uint64_t> ells = primes;
  std::sort(ells.begin(), ells.end());
  ells.erase(std::unique(ells.begin(), ells.end()), ells.end());
  for (std::uint64_t ell : ells)
    if (ell == space.p().value()) raise(errc::ell_equals_p, "prime list contains p");
  if (space.dimension() == 0) return {};

  std::uint64_t ell_max = ells.empty() ? 2 : ells.back();
  if (space.precision() < ell_max * (sturm_bound(space.weight()) + 1))
    raise(errc::insufficient_precision, "space precision too small for largest ell");

  ExtensionField f1(space.p(), 1), f2(space.p(), 2);

  // row-action matrices A = M^T, one per prime
  std::vector<Mat> actions;
  actions.reserve(ells.size());
  for (std::uint64_t ell : ells) actions.push_back(hecke_matrix(space, ell).entries.transposed());

  std::vector<Subspace> current;
  current.push_back(Subspace{f1, Mat::identity(f1.tag(), space.dimension()), {}, false});
  for (std::size_t idx = 0; idx < ells.size(); ++idx) {
    std::vector<Subspace> next;
    for (Subspace& sub : current) {
      if (sub.capped) {
        next.push_back(std::move(sub));
        continue;
      }
      split_by_prime(std::move(sub), ells[idx], actions[idx], f2, next);
    }
    current = std::move(next);
  }

  std::vector<EigenformRecord> records;
  records.reserve(current.size());
  for (const Subspace& sub : current) {
    Mat eigen_rows =
        sub.eigenvalues.empty() ? sub.rows : common_eigenvector_rows(sub, actions, ells);
    // eigenform = first echelon vector, as a series in the ambient basis
    QSeries form = QSeries::zero(sub.field.tag(), space.weight(), space.precision());
    for (std::size_t n = 0; n < space.precision(); ++n) {
      FieldElement acc = sub.field.zero();
      for (std::size_t i = 0; i < space.dimension(); ++i)
        acc = acc + eigen_rows.at(0, i) * sub.field.embed(space.basis().at(i, n));
      form.set_coeff(n, acc);
    }
    auto lead = form.leading_index();
    if (!lead) throw std::logic_error("eigenform vanished");
    form = form.scaled(form.coeff(*lead).inverse());

    EigenformRecord rec{Eigensystem{sub.field.tag(), sub.eigenvalues},
                        std::move(form),
                        space.weight(),
                        false,
                        false,
                        sub.rows.rows()};
    rec.cuspidal = rec.eigenform.coeff(0).is_zero();
    rec.resolved = !sub.capped && sub.rows.rows() == 1 && sub.eigenvalues.size() == ells.size();

    // every recorded eigenvalue must reproduce on the reported eigenform
    for (const auto& [ell, lambda] : rec.system.values) {
      QSeries image = apply_tl(rec.eigenform, ell, space.p());
      QSeries expect = rec.eigenform.truncated(image.precision()).scaled(lambda);
      if (!image.agrees_with(expect, image.precision()))
        throw std::logic_error("recorded eigenvalue fails on the eigenform");
    }
    records.push_back(std::move(rec));
  }
  return records;
}

}  // namespace mmfp
