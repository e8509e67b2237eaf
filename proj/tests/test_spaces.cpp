#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mmfp/spaces.hpp"

using namespace mmfp;

TEST_CASE("space dimensions") {
  CHECK(space_dimension(0, false) == 1);
  CHECK(space_dimension(0, true) == 0);
  CHECK(space_dimension(2, false) == 0);
  CHECK(space_dimension(4, false) == 1);
  CHECK(space_dimension(12, true) == 1);
  CHECK(space_dimension(14, false) == 1);
  CHECK(space_dimension(24, false) == 3);
  CHECK(space_dimension(24, true) == 2);
  CHECK(space_dimension(26, false) == 2);
  CHECK(space_dimension(7, false) == 0);
  CHECK(space_dimension(-4, false) == 0);
}

TEST_CASE("sturm bound") {
  CHECK(sturm_bound(0) == 1);
  CHECK(sturm_bound(12) == 2);
  CHECK(sturm_bound(24) == 3);
  CHECK(sturm_bound(56) == 5);
}

TEST_CASE("miller basis small cases") {
  Prime p5(5);
  FormSpace m0 = miller_basis(0, p5, 5, false);
  REQUIRE(m0.dimension() == 1);
  CHECK(m0.row_series(0).coeff(0).c0() == 1);
  for (std::size_t n = 1; n < 5; ++n) CHECK(m0.row_series(0).coeff(n).is_zero());

  FormSpace s12 = miller_basis(12, p5, 10, true);
  REQUIRE(s12.dimension() == 1);
  CHECK(s12.row_series(0).agrees_with(delta_qexp(p5, 10), 10));

  FormSpace m24 = miller_basis(24, p5, 10, false);
  REQUIRE(m24.dimension() == 3);
  std::uint64_t expected[3][10] = {
      {1, 0, 0, 0, 0, 0, 0, 0, 0, 0},
      {0, 1, 0, 0, 3, 0, 2, 0, 0, 2},
      {0, 0, 1, 2, 0, 0, 0, 1, 0, 0},
  };
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 10; ++j) CHECK(m24.basis().at(i, j).c0() == expected[i][j]);

  CHECK_THROWS_AS(miller_basis(24, p5, 3, false), Error);  // below sturm+1
  CHECK_THROWS_AS(miller_basis(12, Prime(3), 10, false), Error);
}

TEST_CASE("echelon and dimension across weights") {
  for (std::uint64_t pv : {5ull, 7ull, 11ull, 13ull}) {
    Prime p(pv);
    for (int k = 0; k <= 36; k += 2) {
      std::size_t prec = sturm_bound(k) + 2;
      for (bool cusp : {false, true}) {
        FormSpace sp = miller_basis(k, p, prec, cusp);
        CHECK(sp.dimension() == space_dimension(k, cusp));
        for (std::size_t i = 0; i < sp.dimension(); ++i)
          for (std::size_t j = 0; j < sp.dimension(); ++j)
            CHECK(sp.basis().at(i, sp.pivot_of_row(j)).c0() == (i == j ? 1u : 0u));
      }
    }
  }
}

TEST_CASE("membership") {
  Prime p5(5);
  ExtensionField F(p5, 1);

  // zero series: member with all-zero coordinates
  QSeries zero = QSeries::zero(F.tag(), 12, 10);
  auto z = membership(zero, 12, p5);
  REQUIRE(z.has_value());
  REQUIRE(z->size() == 2);
  CHECK((*z)[0].is_zero());
  CHECK((*z)[1].is_zero());

  // E_4^3 lies in M_12
  QSeries e4cubed = series_pow(eisenstein_qexp(4, p5, 10), 3, 10);
  QSeries tagged(F.tag(), 12, e4cubed.flat());
  auto c = membership(tagged, 12, p5);
  REQUIRE(c.has_value());
  // round trip: coordinates rebuild the series
  FormSpace m12 = miller_basis(12, p5, 10, false);
  for (std::size_t n = 0; n < sturm_bound(12) + 1; ++n) {
    FieldElement acc = F.zero();
    for (std::size_t i = 0; i < c->size(); ++i)
      acc = acc + (*c)[i] * m12.basis().at(i, n);
    CHECK(acc == tagged.coeff(n));
  }

  // Delta does not live in weight 8
  CHECK_FALSE(membership(delta_qexp(p5, 10), 8, p5).has_value());

  // insufficient precision is loud
  CHECK_THROWS_AS(membership(delta_qexp(p5, 2), 12, p5), Error);
}

TEST_CASE("filtration of the classical generators") {
  Prime p5(5), p7(7);
  CHECK(filtration(eisenstein_qexp(4, p5, 10), p5).filtration == 0);
  CHECK(filtration(eisenstein_qexp(6, p5, 10), p5).filtration == 6);
  CHECK(filtration(eisenstein_qexp(4, p7, 10), p7).filtration == 4);
  CHECK(filtration(eisenstein_qexp(6, p7, 10), p7).filtration == 0);
  CHECK(filtration(eisenstein_qexp(8, p7, 10), p7).filtration == 8);
  CHECK(filtration(delta_qexp(p5, 10), p5).filtration == 12);

  CHECK_THROWS_AS(filtration(QSeries::zero(FieldTag{5, 1}, 12, 10), p5), Error);

  // delta's expansion also lives in weight 16 (times the hasse invariant)
  QSeries shifted(FieldTag{5, 1}, 16, delta_qexp(p5, 10).flat());
  CHECK(filtration(shifted, p5).filtration == 12);

  // q is not the expansion of any weight-4 form mod 5
  QSeries fake = QSeries::zero(FieldTag{5, 1}, 4, 10);
  fake.set_coeff(1, FieldElement(FieldTag{5, 1}, 1));
  try {
    filtration(fake, p5);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == errc::not_a_modular_form);
  }
}

TEST_CASE("filtration properties on random forms") {
  std::mt19937_64 rng(17);
  for (std::uint64_t pv : {5ull, 7ull}) {
    Prime p(pv);
    ExtensionField F(p, 1);
    int checked = 0;
    while (checked < 20) {
      int k = 4 + 2 * static_cast<int>(rng() % 15);  // 4..32
      std::size_t prec = sturm_bound(k) + 2;
      FormSpace mk = miller_basis(k, p, prec, false);
      QSeries f = QSeries::zero(F.tag(), k, prec);
      for (std::size_t i = 0; i < mk.dimension(); ++i) {
        FieldElement c = F.element(rng() % pv);
        if (c.is_zero()) continue;
        f = f + mk.row_series(i).scaled(c);
      }
      if (f.is_zero()) continue;
      ++checked;
      FiltrationReport fr = filtration(f, p);
      CHECK(fr.filtration >= 0);
      CHECK(fr.filtration <= k);
      CHECK((k - fr.filtration) % (pv - 1) == 0);
      // witness reproduces f
      FormSpace mw = miller_basis(fr.filtration, p, prec, false);
      std::size_t cert = sturm_bound(k) + 1;
      for (std::size_t n = 0; n < cert; ++n) {
        FieldElement acc = F.zero();
        for (std::size_t i = 0; i < fr.witness.size(); ++i)
          acc = acc + fr.witness[i] * mw.basis().at(i, n);
        CHECK(acc == f.coeff(n));
      }
    }
  }
}

TEST_CASE("multiplying by the hasse invariant preserves the filtration") {
  for (std::uint64_t pv : {5ull, 7ull}) {
    Prime p(pv);
    std::size_t m = 12;
    QSeries delta = delta_qexp(p, m);
    HasseInvariant a = hasse_qexp(p, m);
    QSeries shifted = series_mul(delta, a.series);
    CHECK(shifted.weight() == 12 + static_cast<int>(pv) - 1);
    CHECK(filtration(shifted, p).filtration == filtration(delta, p).filtration);
  }
}
