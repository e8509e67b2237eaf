#include "mmfp/linalg.hpp"

#include <algorithm>

#include "mmfp/kernels.hpp"

namespace mmfp {

Mat::Mat(const FieldTag& tag, std::size_t rows, std::size_t cols)
    : tag_(tag), rows_(rows), cols_(cols), flat_(rows * cols * tag.d, 0) {}

Mat Mat::identity(const FieldTag& tag, std::size_t n) {
  Mat m(tag, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, FieldElement(tag, 1));
  return m;
}

FieldElement Mat::at(std::size_t i, std::size_t j) const {
  std::size_t base = (i * cols_ + j) * tag_.d;
  return FieldElement(tag_, flat_[base], tag_.d == 2 ? flat_[base + 1] : 0);
}

void Mat::set(std::size_t i, std::size_t j, const FieldElement& v) {
  if (!(v.tag() == tag_)) raise(errc::field_mismatch, "matrix entry from another field");
  std::size_t base = (i * cols_ + j) * tag_.d;
  flat_[base] = v.c0();
  if (tag_.d == 2) flat_[base + 1] = v.c1();
}

Mat Mat::times(const Mat& o) const {
  if (!(tag_ == o.tag_)) raise(errc::field_mismatch, "matrix product across fields");
  if (cols_ != o.rows_) raise(errc::invalid_argument, "matrix product shape mismatch");
  Mat out(tag_, rows_, o.cols_);
  if (tag_.d == 1) {
    kernels::matmul(flat_.data(), o.flat_.data(), out.flat_.data(), rows_, cols_, o.cols_, tag_.p);
    return out;
  }
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t t = 0; t < cols_; ++t) {
      FieldElement a = at(i, t);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j)
        out.set(i, j, out.at(i, j) + a * o.at(t, j));
    }
  return out;
}

Mat Mat::transposed() const {
  Mat out(tag_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out.set(j, i, at(i, j));
  return out;
}

Mat Mat::powed(unsigned e) const {
  if (rows_ != cols_) raise(errc::invalid_argument, "power of a non-square matrix");
  Mat acc = identity(tag_, rows_);
  Mat base = *this;
  while (e) {
    if (e & 1) acc = acc.times(base);
    e >>= 1;
    if (e) base = base.times(base);
  }
  return acc;
}

Mat Mat::lifted(const ExtensionField& field) const {
  if (field.tag() == tag_) return *this;
  Mat out(field.tag(), rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out.set(i, j, field.embed(at(i, j)));
  return out;
}

std::vector<std::size_t> Mat::rref() {
  std::vector<std::size_t> pivots;
  std::size_t r0 = 0;
  for (std::size_t col = 0; col < cols_ && r0 < rows_; ++col) {
    std::size_t sel = rows_;
    for (std::size_t i = r0; i < rows_; ++i)
      if (!at(i, col).is_zero()) { sel = i; break; }
    if (sel == rows_) continue;
    if (sel != r0)
      for (std::size_t j = 0; j < cols_; ++j) {
        FieldElement t = at(r0, j);
        set(r0, j, at(sel, j));
        set(sel, j, t);
      }
    FieldElement inv = at(r0, col).inverse();
    for (std::size_t j = col; j < cols_; ++j) set(r0, j, at(r0, j) * inv);
    if (tag_.d == 1) {
      kernels::eliminate_column(flat_.data(), rows_, cols_, r0, col, tag_.p);
    } else {
      for (std::size_t i = 0; i < rows_; ++i) {
        if (i == r0) continue;
        FieldElement f = at(i, col);
        if (f.is_zero()) continue;
        for (std::size_t j = col; j < cols_; ++j) set(i, j, at(i, j) - f * at(r0, j));
      }
    }
    pivots.push_back(col);
    ++r0;
  }
  return pivots;
}

Mat Mat::kernel_basis() const {
  Mat red = *this;
  std::vector<std::size_t> pivots = red.rref();
  std::vector<bool> is_pivot(cols_, false);
  for (std::size_t c : pivots) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < cols_; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  Mat out(tag_, free_cols.size(), cols_);
  for (std::size_t r = 0; r < free_cols.size(); ++r) {
    std::size_t fc = free_cols[r];
    out.set(r, fc, FieldElement(tag_, 1));
    for (std::size_t i = 0; i < pivots.size(); ++i)
      out.set(r, pivots[i], -red.at(i, fc));
  }
  return out;
}

// Reduce to upper Hessenberg form by similarity, then expand the
// characteristic polynomial with the leading-minor recurrence.
std::vector<FieldElement> Mat::charpoly() const {
  if (rows_ != cols_) raise(errc::invalid_argument, "charpoly of a non-square matrix");
  const std::size_t n = rows_;
  FieldElement zero(tag_, 0), one(tag_, 1);
  if (n == 0) return {one};
  Mat h = *this;
  for (std::size_t j = 0; j + 2 < n; ++j) {
    std::size_t sel = n;
    for (std::size_t i = j + 1; i < n; ++i)
      if (!h.at(i, j).is_zero()) { sel = i; break; }
    if (sel == n) continue;
    if (sel != j + 1) {
      for (std::size_t c = 0; c < n; ++c) {
        FieldElement t = h.at(sel, c);
        h.set(sel, c, h.at(j + 1, c));
        h.set(j + 1, c, t);
      }
      for (std::size_t r = 0; r < n; ++r) {
        FieldElement t = h.at(r, sel);
        h.set(r, sel, h.at(r, j + 1));
        h.set(r, j + 1, t);
      }
    }
    FieldElement pivinv = h.at(j + 1, j).inverse();
    for (std::size_t i = j + 2; i < n; ++i) {
      FieldElement u = h.at(i, j) * pivinv;
      if (u.is_zero()) continue;
      for (std::size_t c = 0; c < n; ++c) h.set(i, c, h.at(i, c) - u * h.at(j + 1, c));
      for (std::size_t r = 0; r < n; ++r) h.set(r, j + 1, h.at(r, j + 1) + u * h.at(r, i));
    }
  }
  // p_m = (x - h[m-1][m-1]) p_{m-1} - sum_i h[m-1-i][m-1] (prod of subdiagonals) p_{m-1-i}
  std::vector<std::vector<FieldElement>> polys;
  polys.push_back({one});
  for (std::size_t m = 1; m <= n; ++m) {
    const auto& prev = polys[m - 1];
    std::vector<FieldElement> cur(prev.size() + 1, zero);
    FieldElement a = h.at(m - 1, m - 1);
    for (std::size_t t = 0; t < prev.size(); ++t) {
      cur[t + 1] = cur[t + 1] + prev[t];
      cur[t] = cur[t] - a * prev[t];
    }
    FieldElement run = one;
    for (std::size_t i = 1; i < m; ++i) {
      run = run * h.at(m - i, m - i - 1);
      FieldElement coef = h.at(m - 1 - i, m - 1) * run;
      if (coef.is_zero()) continue;
      const auto& old = polys[m - 1 - i];
      for (std::size_t t = 0; t < old.size(); ++t) cur[t] = cur[t] - coef * old[t];
    }
    polys.push_back(std::move(cur));
  }
  return polys[n];
}

Mat Mat::top_rows(std::size_t n) const {
  if (n > rows_) raise(errc::invalid_argument, "not enough rows");
  Mat out(tag_, n, cols_);
  std::copy(flat_.begin(), flat_.begin() + n * cols_ * tag_.d, out.flat_.begin());
  return out;
}

bool Mat::row_is_zero(std::size_t i) const {
  for (std::size_t j = 0; j < cols_ * tag_.d; ++j)
    if (flat_[i * cols_ * tag_.d + j]) return false;
  return true;
}

}  // namespace mmfp
