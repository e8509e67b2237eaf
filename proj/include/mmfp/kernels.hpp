#pragma once

#include <cstddef>
#include <cstdint>

// Data-parallel inner loops over F_p residue arrays (p < 2^31).  Every kernel
// has a serial reference used by the tests and an OpenMP variant; the unsuffixed
// entry point dispatches on problem size.

namespace mmfp::kernels {

// out[0..nc) = truncated Cauchy product of a and b mod p.
void cauchy_product_serial(const std::uint64_t* a, std::size_t na,
                           const std::uint64_t* b, std::size_t nb,
                           std::uint64_t* out, std::size_t nc, std::uint64_t p);
void cauchy_product_parallel(const std::uint64_t* a, std::size_t na,
                             const std::uint64_t* b, std::size_t nb,
                             std::uint64_t* out, std::size_t nc, std::uint64_t p);
void cauchy_product(const std::uint64_t* a, std::size_t na,
                    const std::uint64_t* b, std::size_t nb,
                    std::uint64_t* out, std::size_t nc, std::uint64_t p);

// Clears column `col` of a row-major nrows x ncols matrix against the pivot
// row, whose entry at `col` must be 1; touches columns col..ncols.
void eliminate_column_serial(std::uint64_t* rows, std::size_t nrows, std::size_t ncols,
                             std::size_t pivot_row, std::size_t col, std::uint64_t p);
void eliminate_column_parallel(std::uint64_t* rows, std::size_t nrows, std::size_t ncols,
                               std::size_t pivot_row, std::size_t col, std::uint64_t p);
void eliminate_column(std::uint64_t* rows, std::size_t nrows, std::size_t ncols,
                      std::size_t pivot_row, std::size_t col, std::uint64_t p);

// c (n x m) = a (n x k) * b (k x m) mod p, row-major.
void matmul_serial(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* c,
                   std::size_t n, std::size_t k, std::size_t m, std::uint64_t p);
void matmul_parallel(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* c,
                     std::size_t n, std::size_t k, std::size_t m, std::uint64_t p);
void matmul(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* c,
            std::size_t n, std::size_t k, std::size_t m, std::uint64_t p);

}  // namespace mmfp::kernels
