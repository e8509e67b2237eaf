#include "mmfp/kernels.hpp"

namespace mmfp::kernels {

namespace {

constexpr std::size_t kCauchyParallelCutoff = 2048;
constexpr std::size_t kEliminateParallelCutoff = std::size_t{1} << 16;
constexpr std::size_t kMatmulParallelCutoff = std::size_t{1} << 18;

// Terms are < p^2 < 2^62, so an accumulator below 2^63 can absorb one more
// term before a reduction is forced.
constexpr std::uint64_t kAccLimit = std::uint64_t{1} << 63;

inline std::uint64_t dot_diagonal(const std::uint64_t* a, std::size_t na,
                                  const std::uint64_t* b, std::size_t nb,
                                  std::size_t n, std::uint64_t p) {
  std::size_t lo = n >= nb ? n - nb + 1 : 0;
  std::size_t hi = n < na ? n : na - 1;
  std::uint64_t acc = 0;
  for (std::size_t i = lo; i <= hi; ++i) {
    acc += a[i] * b[n - i];
    if (acc >= kAccLimit) acc %= p;
  }
  return acc % p;
}

}  // namespace

void cauchy_product_serial(const std::uint64_t* a, std::size_t na,
                           const std::uint64_t* b, std::size_t nb,
                           std::uint64_t* out, std::size_t nc, std::uint64_t p) {
  for (std::size_t n = 0; n < nc; ++n) out[n] = 0;
  for (std::size_t i = 0; i < na && i < nc; ++i) {
    if (a[i] == 0) continue;
    std::size_t jmax = nc - i < nb ? nc - i : nb;
    for (std::size_t j = 0; j < jmax; ++j)
      out[i + j] = (out[i + j] + a[i] * b[j]) % p;
  }
}

void cauchy_product_parallel(const std::uint64_t* a, std::size_t na,
                             const std::uint64_t* b, std::size_t nb,
                             std::uint64_t* out, std::size_t nc, std::uint64_t p) {
#pragma omp parallel for schedule(static)
  for (std::size_t n = 0; n < nc; ++n)
    out[n] = dot_diagonal(a, na, b, nb, n, p);
}

void cauchy_product(const std::uint64_t* a, std::size_t na,
                    const std::uint64_t* b, std::size_t nb,
                    std::uint64_t* out, std::size_t nc, std::uint64_t p) {
#ifdef _OPENMP
  if (nc >= kCauchyParallelCutoff) {
    cauchy_product_parallel(a, na, b, nb, out, nc, p);
    return;
  }
#endif
  cauchy_product_serial(a, na, b, nb, out, nc, p);
}

void eliminate_column_serial(std::uint64_t* rows, std::size_t nrows, std::size_t ncols,
                             std::size_t pivot_row, std::size_t col, std::uint64_t p) {
  const std::uint64_t* piv = rows + pivot_row * ncols;
  for (std::size_t r = 0; r < nrows; ++r) {
    if (r == pivot_row) continue;
    std::uint64_t* row = rows + r * ncols;
    std::uint64_t f = row[col];
    if (f == 0) continue;
    for (std::size_t j = col; j < ncols; ++j)
      row[j] = (row[j] + (p - f) * piv[j]) % p;
  }
}

void eliminate_column_parallel(std::uint64_t* rows, std::size_t nrows, std::size_t ncols,
                               std::size_t pivot_row, std::size_t col, std::uint64_t p) {
  const std::uint64_t* piv = rows + pivot_row * ncols;
#pragma omp parallel for schedule(static)
  for (std::size_t r = 0; r < nrows; ++r) {
    if (r == pivot_row) continue;
    std::uint64_t* row = rows + r * ncols;
    std::uint64_t f = row[col];
    if (f == 0) continue;
    for (std::size_t j = col; j < ncols; ++j)
      row[j] = (row[j] + (p - f) * piv[j]) % p;
  }
}

void eliminate_column(std::uint64_t* rows, std::size_t nrows, std::size_t ncols,
                      std::size_t pivot_row, std::size_t col, std::uint64_t p) {
#ifdef _OPENMP
  if (nrows * (ncols - col) >= kEliminateParallelCutoff) {
    eliminate_column_parallel(rows, nrows, ncols, pivot_row, col, p);
    return;
  }
#endif
  eliminate_column_serial(rows, nrows, ncols, pivot_row, col, p);
}

void matmul_serial(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* c,
                   std::size_t n, std::size_t k, std::size_t m, std::uint64_t p) {
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t* ci = c + i * m;
    for (std::size_t j = 0; j < m; ++j) ci[j] = 0;
    for (std::size_t t = 0; t < k; ++t) {
      std::uint64_t av = a[i * k + t];
      if (av == 0) continue;
      const std::uint64_t* bt = b + t * m;
      for (std::size_t j = 0; j < m; ++j)
        ci[j] = (ci[j] + av * bt[j]) % p;
    }
  }
}

void matmul_parallel(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* c,
                     std::size_t n, std::size_t k, std::size_t m, std::uint64_t p) {
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t* ci = c + i * m;
    for (std::size_t j = 0; j < m; ++j) ci[j] = 0;
    for (std::size_t t = 0; t < k; ++t) {
      std::uint64_t av = a[i * k + t];
      if (av == 0) continue;
      const std::uint64_t* bt = b + t * m;
      for (std::size_t j = 0; j < m; ++j)
        ci[j] = (ci[j] + av * bt[j]) % p;
    }
  }
}

void matmul(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* c,
            std::size_t n, std::size_t k, std::size_t m, std::uint64_t p) {
#ifdef _OPENMP
  if (n * k * m >= kMatmulParallelCutoff) {
    matmul_parallel(a, b, c, n, k, m, p);
    return;
  }
#endif
  matmul_serial(a, b, c, n, k, m, p);
}

}  // namespace mmfp::kernels
