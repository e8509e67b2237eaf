#pragma once

#include <cstdint>
#include <vector>

#include "mmfp/field.hpp"

namespace mmfp {

// Dense row-major matrix over F_{p^d}, d <= 2.  Prime-field instances route
// row elimination and products through the parallel kernels.
class Mat {
public:
  Mat(const FieldTag& tag, std::size_t rows, std::size_t cols);
  static Mat identity(const FieldTag& tag, std::size_t n);

  const FieldTag& tag() const noexcept { return tag_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  FieldElement at(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, const FieldElement& v);

  Mat times(const Mat& o) const;
  Mat transposed() const;
  Mat powed(unsigned e) const;
  Mat lifted(const ExtensionField& field) const;

  // In-place reduced row echelon form; returns the pivot column of each
  // surviving row.  Zero rows sink to the bottom and are kept.
  std::vector<std::size_t> rref();

  // Rows spanning {x : (*this) x = 0}, echelonized, in free-column order.
  Mat kernel_basis() const;

  // Characteristic polynomial, ascending coefficients, monic of degree n.
  std::vector<FieldElement> charpoly() const;

  Mat top_rows(std::size_t n) const;
  bool row_is_zero(std::size_t i) const;

  std::vector<std::uint64_t>& flat() noexcept { return flat_; }
  const std::vector<std::uint64_t>& flat() const noexcept { return flat_; }

  friend bool operator==(const Mat&, const Mat&) = default;

private:
  FieldTag tag_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<std::uint64_t> flat_;  // stride tag_.d per entry
};

}  // namespace mmfp
