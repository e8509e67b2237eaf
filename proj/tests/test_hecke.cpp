#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "mmfp/hecke.hpp"

using namespace mmfp;

namespace {

bool has_values(const EigenformRecord& rec, const std::vector<std::uint64_t>& ells,
                const std::vector<std::uint64_t>& want) {
  for (std::size_t i = 0; i < ells.size(); ++i) {
    const FieldElement* v = rec.system.value_at(ells[i]);
    if (!v || v->c1() != 0 || v->c0() != want[i]) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("apply_tl basics") {
  Prime p7(7), p5(5);
  ExtensionField F7(p7, 1);

  QSeries zero = QSeries::zero(F7.tag(), 12, 20);
  CHECK(apply_tl(zero, 3, p7).is_zero());

  // T_2 E_4 = 2 E_4 mod 7
  QSeries e4 = eisenstein_qexp(4, p7, 21);
  QSeries te4 = apply_tl(e4, 2, p7);
  CHECK(te4.precision() == 11);
  CHECK(te4.agrees_with(e4.truncated(11).scaled(F7.element(2)), 11));

  // T_2 Delta = Delta mod 5 (tau(2) = -24)
  QSeries d5 = delta_qexp(p5, 21);
  QSeries td5 = apply_tl(d5, 2, p5);
  CHECK(td5.agrees_with(d5.truncated(td5.precision()), td5.precision()));

  CHECK_THROWS_AS(apply_tl(e4, 7, p7), Error);
  CHECK_THROWS_AS(apply_tl(e4, 6, p7), Error);
}

TEST_CASE("apply_tl on weight zero") {
  // constants are eigenforms with eigenvalue 1 + ell^{-1}
  Prime p5(5);
  ExtensionField F(p5, 1);
  QSeries one = QSeries::zero(F.tag(), 0, 10);
  one.set_coeff(0, F.one());
  QSeries t3 = apply_tl(one, 3, p5);
  std::uint64_t expect = fp::add(1, fp::inv(3, 5), 5);  // 1 + 3^{-1} = 1 + 2 = 3
  CHECK(t3.coeff(0).c0() == expect);
  for (std::size_t n = 1; n < t3.precision(); ++n) CHECK(t3.coeff(n).is_zero());
}

TEST_CASE("eisenstein T_ell eigenvalue identity") {
  for (std::uint64_t pv : {5ull, 7ull}) {
    Prime p(pv);
    for (int k : {4, 6, 8, 10}) {
      QSeries e = eisenstein_qexp(k, p, 40);
      for (std::uint64_t ell : {2ull, 3ull, 11ull}) {
        if (ell == pv) continue;
        QSeries im = apply_tl(e, ell, p);
        std::uint64_t lam = fp::add(1, fp::pow(ell, k - 1, pv), pv);
        CHECK(im.agrees_with(e.truncated(im.precision()).scaled(FieldElement(e.tag(), lam)),
                             im.precision()));
      }
    }
  }
}

TEST_CASE("hecke matrices") {
  Prime p5(5);
  FormSpace s12 = miller_basis(12, p5, 10, true);
  HeckeMatrix t2 = hecke_matrix(s12, 2);
  REQUIRE(t2.entries.rows() == 1);
  CHECK(t2.entries.at(0, 0).c0() == 1);  // tau(2) = -24 = 1 mod 5

  FormSpace s0 = miller_basis(0, p5, 10, true);
  CHECK(hecke_matrix(s0, 2).entries.rows() == 0);

  FormSpace s24 = miller_basis(24, p5, 10, true);
  HeckeMatrix t = hecke_matrix(s24, 2);
  REQUIRE(t.entries.rows() == 2);
  // roots of the 2x2 characteristic polynomial, computed via the explicit
  // trace/determinant formula as an oracle
  ExtensionField F(p5, 1);
  FieldElement tr = t.entries.at(0, 0) + t.entries.at(1, 1);
  FieldElement det = t.entries.at(0, 0) * t.entries.at(1, 1) -
                     t.entries.at(0, 1) * t.entries.at(1, 0);
  std::vector<std::uint64_t> roots;
  for (std::uint64_t x = 0; x < 5; ++x) {
    FieldElement fx = F.element(x * x % 5) - tr * F.element(x) + det;
    if (fx.is_zero()) roots.push_back(x);
  }
  CHECK(std::find(roots.begin(), roots.end(), 4) != roots.end());
  auto cp = t.entries.charpoly();
  for (std::uint64_t r : roots) {
    FieldElement acc = F.zero();
    for (std::size_t i = cp.size(); i-- > 0;) acc = acc * F.element(r) + cp[i];
    CHECK(acc.is_zero());
  }

  CHECK_THROWS_AS(hecke_matrix(s24, 5), Error);
  CHECK_THROWS_AS(hecke_matrix(miller_basis(24, p5, 5, true), 3), Error);
}

TEST_CASE("hecke matrices commute") {
  for (std::uint64_t pv : {5ull, 7ull}) {
    Prime p(pv);
    for (int k : {12, 24, 36}) {
      std::size_t prec = 13 * (sturm_bound(k) + 1) + 1;
      FormSpace mk = miller_basis(k, p, prec, false);
      std::vector<std::uint64_t> ells;
      for (std::uint64_t ell : {2ull, 3ull, 11ull, 13ull})
        if (ell != pv) ells.push_back(ell);
      for (std::uint64_t a : ells)
        for (std::uint64_t b : ells) {
          Mat ma = hecke_matrix(mk, a).entries;
          Mat mb = hecke_matrix(mk, b).entries;
          CHECK(ma.times(mb) == mb.times(ma));
        }
    }
  }
}

TEST_CASE("eisenstein eigensystems match the printed tables") {
  std::vector<std::uint64_t> p5primes = primes_up_to(37, 5);
  REQUIRE(p5primes.size() == 11);
  Eigensystem e45 = eisenstein_eigensystem(4, Prime(5), p5primes);
  std::uint64_t want45[] = {4, 3, 4, 2, 3, 4, 0, 3, 0, 2, 4};
  for (std::size_t i = 0; i < 11; ++i) CHECK(e45.values[i].second.c0() == want45[i]);

  Eigensystem e65 = eisenstein_eigensystem(6, Prime(5), p5primes);
  std::uint64_t want65[] = {3, 4, 3, 2, 4, 3, 0, 4, 0, 2, 3};
  for (std::size_t i = 0; i < 11; ++i) CHECK(e65.values[i].second.c0() == want65[i]);

  std::vector<std::uint64_t> p7primes = primes_up_to(37, 7);
  REQUIRE(p7primes.size() == 11);
  Eigensystem e87 = eisenstein_eigensystem(8, Prime(7), p7primes);
  std::uint64_t want87[] = {3, 4, 6, 5, 0, 4, 6, 3, 2, 4, 3};
  for (std::size_t i = 0; i < 11; ++i) CHECK(e87.values[i].second.c0() == want87[i]);

  CHECK_THROWS_AS(eisenstein_eigensystem(4, Prime(5), {2, 5}), Error);
}

TEST_CASE("decompose cuspidal spaces") {
  Prime p5(5);
  CHECK(decompose_eigensystems(miller_basis(0, p5, 30, true), {2}).empty());

  // S_24 mod 5 with T_2, T_3, T_7, T_11
  std::vector<std::uint64_t> ells{2, 3, 7, 11};
  std::size_t prec = 11 * (sturm_bound(24) + 1) + 1;
  FormSpace s24 = miller_basis(24, p5, prec, true);
  auto records = decompose_eigensystems(s24, ells);
  REQUIRE(records.size() == 2);
  bool found = false;
  for (const auto& rec : records) {
    CHECK(rec.resolved);
    CHECK(rec.cuspidal);
    CHECK(rec.eigenform.coeff(1).c0() == 1);  // normalized
    found = found || has_values(rec, ells, {4, 3, 4, 2});
  }
  CHECK(found);

  // S_48 mod 7 with T_2, T_3, T_5
  Prime p7(7);
  std::vector<std::uint64_t> ells7{2, 3, 5};
  std::size_t prec7 = 5 * (sturm_bound(48) + 1) + 1;
  FormSpace s48 = miller_basis(48, p7, prec7, true);
  auto recs7 = decompose_eigensystems(s48, ells7);
  bool found7 = false;
  for (const auto& rec : recs7) found7 = found7 || has_values(rec, ells7, {5, 6, 4});
  CHECK(found7);

  CHECK_THROWS_AS(decompose_eigensystems(s24, {2, 5}), Error);
}

TEST_CASE("resolved record count is bounded by the dimension") {
  Prime p7(7);
  for (int k : {12, 24, 36, 48}) {
    std::size_t prec = 13 * (sturm_bound(k) + 1) + 1;
    FormSpace sk = miller_basis(k, p7, prec, true);
    auto records = decompose_eigensystems(sk, primes_up_to(13, 7));
    std::size_t resolved = 0, total_dim = 0;
    for (const auto& rec : records) {
      if (rec.resolved) ++resolved;
      total_dim += rec.subspace_dim;
    }
    CHECK(resolved <= sk.dimension());
    CHECK(total_dim == sk.dimension());
  }
}

TEST_CASE("eigenvalues in the quadratic extension") {
  // weight-24 cusp eigenforms mod 23 have conjugate eigensystems in F_{23^2}
  Prime p23(23);
  std::vector<std::uint64_t> ells{2, 3, 5};
  std::size_t prec = 5 * (sturm_bound(24) + 1) + 1;
  FormSpace s24 = miller_basis(24, p23, prec, true);
  auto records = decompose_eigensystems(s24, ells);
  REQUIRE(records.size() == 2);
  for (const auto& rec : records) {
    CHECK(rec.resolved);
    CHECK(rec.system.field.d == 2);
    CHECK(rec.system.field.m0 == 1);  // modulus x^2 + 1
    CHECK(rec.system.field.m1 == 0);
  }
  const FieldElement* a2 = records[0].system.value_at(2);
  REQUIRE(a2 != nullptr);
  CHECK(a2->c0() == 11);
  CHECK(a2->c1() == 4);
  const FieldElement* b2 = records[1].system.value_at(2);
  REQUIRE(b2 != nullptr);
  CHECK(*b2 == a2->frobenius());
  // eigenform coefficients live in the extension and restate the eigenvalues
  CHECK(records[0].eigenform.coeff(2) == *a2);
  CHECK(records[0].eigenform.coeff(5) == *records[0].system.value_at(5));
}

TEST_CASE("delta eigenform is multiplicative") {
  Prime p7(7);
  QSeries d = delta_qexp(p7, 60);
  for (std::size_t m = 2; m < 8; ++m)
    for (std::size_t n = 2; n < 8; ++n) {
      if (std::gcd(m, n) != 1 || m * n >= 60) continue;
      CHECK(d.coeff(m * n) == d.coeff(m) * d.coeff(n));
    }
}
