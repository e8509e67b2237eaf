#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mmfp/verifier.hpp"

using namespace mmfp;

TEST_CASE("delta matches itself at its own filtration") {
  Prime p5(5);
  Verdict v = verify_theorem(p5, SourceSpec::delta(), 13);
  CHECK(v.filtration == 12);
  CHECK(v.source_is_cuspidal);
  CHECK(v.matched_weight == 12);
  CHECK(v.matched.resolved);
  QSeries d = delta_qexp(p5, v.matched.eigenform.precision());
  CHECK(v.matched.eigenform.agrees_with(d, v.matched.eigenform.precision()));
  CHECK(v.match_multiplicity == 1);
}

TEST_CASE("hasse invariant source lands in weight p^2 - 1") {
  Prime p5(5);
  Verdict v = verify_theorem(p5, SourceSpec::eisenstein(4), 37);
  CHECK(v.filtration == 0);
  CHECK_FALSE(v.source_is_cuspidal);
  CHECK(v.matched_weight == 24);
  CHECK(v.matched.resolved);
  std::uint64_t prefix[] = {0, 1, 4, 3, 3, 0, 2, 4};  // a_0..a_7
  for (std::size_t n = 0; n < 8; ++n)
    CHECK(v.matched.eigenform.coeff(n).c0() == prefix[n]);
  // transported eigensystem shows up in the matched coefficients
  for (const auto& [ell, lam] : v.phi.values)
    CHECK(v.matched.eigenform.coeff(ell).c0() == lam.c0());
}

TEST_CASE("weight-shift law on small sources") {
  struct Case {
    std::uint64_t p;
    int k;
    int expect_w;
    int expect_mw;
  } cases[] = {
      {5, 6, 6, 30},
      {7, 6, 0, 48},
      {7, 8, 8, 56},
  };
  for (const Case& c : cases) {
    Verdict v = verify_theorem(Prime(c.p), SourceSpec::eisenstein(c.k), 13);
    CHECK(v.filtration == c.expect_w);
    CHECK(v.matched_weight == c.expect_mw);
    int shift = v.matched_weight - v.filtration;
    CHECK((shift == 0 || shift == static_cast<int>(c.p * c.p) - 1));
    CHECK((v.matched_weight == v.filtration) == v.source_is_cuspidal);
  }
}

TEST_CASE("verify errors") {
  Prime p5(5);
  CHECK_THROWS_AS(verify_theorem(Prime(2), SourceSpec::eisenstein(4), 13), Error);
  try {
    verify_theorem(Prime(2), SourceSpec::eisenstein(4), 13);
  } catch (const Error& e) {
    CHECK(e.code() == errc::unsupported);
  }
  CHECK_THROWS_AS(verify_theorem(Prime(3), SourceSpec::delta(), 13), Error);

  // zero source
  ExtensionField F(p5, 1);
  QSeries zero = QSeries::zero(F.tag(), 12, 40);
  CHECK_THROWS_AS(verify_theorem(p5, SourceSpec::from_series(zero), 13), Error);

  // 1 + delta mod 7 is modular of weight 12 but no eigenform: the constant
  // term forces the eisenstein eigenvalue while a_2 is tau(2)
  Prime p7(7);
  std::size_t prec = 13 * (sturm_bound(12) + 1) + 1;
  ExtensionField F7(p7, 1);
  QSeries mixed = delta_qexp(p7, prec);
  mixed.set_coeff(0, F7.one());
  try {
    verify_theorem(p7, SourceSpec::from_series(mixed), 13);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == errc::not_an_eigenform);
  }

  // too few coefficients for the requested prime bound
  QSeries shorty(F.tag(), 12, std::vector<std::uint64_t>(5, 1));
  try {
    verify_theorem(p5, SourceSpec::from_series(shorty), 13);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == errc::insufficient_precision);
  }
}

TEST_CASE("file-style series source round trip") {
  // feeding delta's own expansion reproduces the delta verdict
  Prime p7(7);
  std::size_t prec = 13 * (sturm_bound(12) + 1) + 2;
  QSeries d = delta_qexp(p7, prec);
  Verdict v1 = verify_theorem(p7, SourceSpec::delta(), 13);
  Verdict v2 = verify_theorem(p7, SourceSpec::from_series(d), 13);
  CHECK(v1.filtration == v2.filtration);
  CHECK(v1.matched_weight == v2.matched_weight);
  CHECK(v1.matched.eigenform.agrees_with(v2.matched.eigenform,
                                         v1.matched.eigenform.precision()));
}

TEST_CASE("corollary sweep small cases") {
  CorollaryReport r5 = corollary_sweep(Prime(5), 12, 13);
  CHECK(r5.violations.empty());
  bool has_delta = false;
  for (const auto& row : r5.rows)
    if (row.k == 12 && row.filtration == 12 && row.cuspidal) has_delta = true;
  CHECK(has_delta);
  bool has_constant = false;
  for (const auto& row : r5.rows)
    if (row.k == 0 && row.filtration == 0 && !row.cuspidal) has_constant = true;
  CHECK(has_constant);

  CorollaryReport r7 = corollary_sweep(Prime(7), 8, 13);
  CHECK(r7.violations.empty());
  bool has_e8 = false;
  for (const auto& row : r7.rows)
    if (row.k == 8 && row.filtration == 8 && !row.cuspidal) has_e8 = true;
  CHECK(has_e8);  // filtration 8 = p+1, not a violation
}

TEST_CASE("regression fixtures") {
  auto cases = regression_examples();
  REQUIRE(cases.size() == 5);
  for (const auto& rc : cases) {
    INFO(rc.name, ": ", rc.detail);
    CHECK(rc.pass);
  }
}
