#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "mmfp/linalg.hpp"
#include "mmfp/qseries.hpp"

namespace mmfp {

// Level-1 dimension of M_k (or S_k) over a field of characteristic >= 5;
// equals the characteristic-0 dimension.
unsigned space_dimension(int k, bool cuspidal);

// floor(k/12) + 1: level-1 forms of weight k agreeing on a_0..a_bound are equal.
std::size_t sturm_bound(int k);

// Echelonized basis of M_k or S_k mod p to a stated precision.  Row i has
// pivot coefficient i (i + 1 when cuspidal), and a_pivot(f_j) = delta_ij.
class FormSpace {
public:
  FormSpace(const Prime& p, int weight, bool cuspidal, Mat basis);

  const Prime& p() const noexcept { return p_; }
  int weight() const noexcept { return weight_; }
  bool cuspidal() const noexcept { return cuspidal_; }
  std::size_t precision() const noexcept { return basis_.cols(); }
  std::size_t dimension() const noexcept { return basis_.rows(); }
  std::size_t pivot_of_row(std::size_t i) const noexcept { return i + (cuspidal_ ? 1 : 0); }

  const Mat& basis() const noexcept { return basis_; }
  QSeries row_series(std::size_t i) const;

private:
  Prime p_;
  int weight_;
  bool cuspidal_;
  Mat basis_;  // dimension x precision over F_p
};

// Builds bases on demand; the CLI wraps this with an on-disk cache.
using SpaceProvider = std::function<FormSpace(int k, bool cuspidal, std::size_t precision)>;

SpaceProvider direct_provider(const Prime& p);

// Monomials E_4^a E_6^b Delta^c of weight k (decreasing c, then decreasing b),
// row-reduced mod p.
FormSpace miller_basis(int k, const Prime& p, std::size_t m, bool cuspidal);

// Coordinates of f in miller_basis(k) if f lies in its span to the certifying
// precision sturm_bound(max(k, weight(f))) + 1, otherwise nullopt.
std::optional<std::vector<FieldElement>> membership(const QSeries& f, int k, const Prime& p,
                                                    const SpaceProvider* provider = nullptr);

struct FiltrationReport {
  int input_weight = 0;
  int filtration = 0;
  // coordinates of the weight-w representative in miller_basis(w)
  std::vector<FieldElement> witness;
};

// Least w >= 0, w = k mod (p-1), whose space contains f's q-expansion.
FiltrationReport filtration(const QSeries& f, const Prime& p,
                            const SpaceProvider* provider = nullptr);

}  // namespace mmfp
