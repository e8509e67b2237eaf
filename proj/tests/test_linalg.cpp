#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mmfp/linalg.hpp"

using namespace mmfp;

namespace {

Mat random_mat(const ExtensionField& F, std::size_t r, std::size_t c, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Mat m(F.tag(), r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, F.at(rng() % F.order()));
  return m;
}

// determinant by elimination with explicit column search; test-local oracle
FieldElement det_oracle(Mat m, const ExtensionField& F) {
  std::size_t n = m.rows();
  FieldElement result = F.one();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = n;
    for (std::size_t r = c; r < n; ++r)
      if (!m.at(r, c).is_zero()) { piv = r; break; }
    if (piv == n) return F.zero();
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) {
        FieldElement t = m.at(c, j);
        m.set(c, j, m.at(piv, j));
        m.set(piv, j, t);
      }
      result = -result;
    }
    result = result * m.at(c, c);
    FieldElement inv = m.at(c, c).inverse();
    for (std::size_t r = c + 1; r < n; ++r) {
      FieldElement f = m.at(r, c) * inv;
      if (f.is_zero()) continue;
      for (std::size_t j = c; j < n; ++j) m.set(r, j, m.at(r, j) - f * m.at(c, j));
    }
  }
  return result;
}

FieldElement eval_poly(const std::vector<FieldElement>& poly, const FieldElement& x,
                       const ExtensionField& F) {
  FieldElement acc = F.zero();
  for (std::size_t i = poly.size(); i-- > 0;) acc = acc * x + poly[i];
  return acc;
}

}  // namespace

TEST_CASE("rref echelon structure") {
  for (unsigned d : {1u, 2u}) {
    ExtensionField F(Prime(5), d);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      Mat m = random_mat(F, 6, 9, seed);
      Mat r = m;
      std::vector<std::size_t> pivots = r.rref();
      // pivot entries are 1 and alone in their column
      for (std::size_t i = 0; i < pivots.size(); ++i) {
        CHECK(r.at(i, pivots[i]) == F.one());
        for (std::size_t other = 0; other < r.rows(); ++other)
          if (other != i) CHECK(r.at(other, pivots[i]).is_zero());
      }
      // idempotent
      Mat r2 = r;
      r2.rref();
      CHECK(r2 == r);
    }
  }
}

TEST_CASE("kernel basis annihilates") {
  for (unsigned d : {1u, 2u}) {
    ExtensionField F(Prime(7), d);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      Mat m = random_mat(F, 4, 7, seed + 100);
      Mat k = m.kernel_basis();
      CHECK(k.rows() >= 3);  // rank <= 4
      Mat prod = m.times(k.transposed());
      for (std::size_t i = 0; i < prod.rows(); ++i)
        for (std::size_t j = 0; j < prod.cols(); ++j) CHECK(prod.at(i, j).is_zero());
      // rank-nullity
      Mat r = m;
      CHECK(r.rref().size() + k.rows() == m.cols());
    }
  }
}

TEST_CASE("charpoly against determinant evaluation") {
  for (unsigned d : {1u, 2u}) {
    ExtensionField F(Prime(5), d);
    for (std::size_t n : {1, 2, 3, 5}) {
      for (std::uint64_t seed = 0; seed < 12; ++seed) {
        Mat a = random_mat(F, n, n, 31 * n + seed);
        std::vector<FieldElement> cp = a.charpoly();
        REQUIRE(cp.size() == n + 1);
        CHECK(cp.back() == F.one());
        // char(x0) = det(x0*I - A) for every x0 in the field
        for (std::uint64_t i = 0; i < F.order(); ++i) {
          FieldElement x0 = F.at(i);
          Mat shifted(F.tag(), n, n);
          for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c)
              shifted.set(r, c, (r == c ? x0 : F.zero()) - a.at(r, c));
          CHECK(eval_poly(cp, x0, F) == det_oracle(shifted, F));
        }
      }
    }
  }
}

TEST_CASE("charpoly of a companion matrix") {
  // companion of x^3 + 2x + 4 over F_7
  ExtensionField F(Prime(7), 1);
  Mat c(F.tag(), 3, 3);
  c.set(1, 0, F.one());
  c.set(2, 1, F.one());
  c.set(0, 2, -F.element(4));
  c.set(1, 2, -F.element(2));
  c.set(2, 2, -F.element(0));
  auto cp = c.charpoly();
  REQUIRE(cp.size() == 4);
  CHECK(cp[0] == F.element(4));
  CHECK(cp[1] == F.element(2));
  CHECK(cp[2] == F.zero());
  CHECK(cp[3] == F.one());
}

TEST_CASE("matrix power and lift") {
  ExtensionField F(Prime(5), 1), F2(Prime(5), 2);
  Mat a = random_mat(F, 4, 4, 9);
  CHECK(a.powed(0) == Mat::identity(F.tag(), 4));
  CHECK(a.powed(3) == a.times(a).times(a));
  Mat lifted = a.lifted(F2);
  CHECK(lifted.tag() == F2.tag());
  CHECK(lifted.powed(2) == a.powed(2).lifted(F2));
}
