#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "mmfp/spaces.hpp"

namespace mmfp {

// T_ell on a weight-k q-expansion: a_n -> a_{n*ell} + ell^{k-1} a_{n/ell},
// with the second term only when ell | n.  Output precision is
// floor((m-1)/ell) + 1.
QSeries apply_tl(const QSeries& f, std::uint64_t ell, const Prime& p);

// Matrix of T_ell in the space's echelon basis; column i holds the
// coordinates of T_ell applied to basis row i.
struct HeckeMatrix {
  std::uint64_t ell = 0;
  int weight = 0;
  bool cuspidal = false;
  Mat entries;
};

HeckeMatrix hecke_matrix(const FormSpace& space, std::uint64_t ell);

// Finite map ell -> eigenvalue, primes strictly increasing, ell != p absent.
struct Eigensystem {
  FieldTag field;
  std::vector<std::pair<std::uint64_t, FieldElement>> values;

  const FieldElement* value_at(std::uint64_t ell) const;
};

struct EigenformRecord {
  Eigensystem system;
  QSeries eigenform;  // leading nonzero coefficient normalized to 1
  int weight = 0;
  bool cuspidal = false;
  // true when the given primes cut the common generalized eigenspace down to
  // one dimension inside the degree cap
  bool resolved = false;
  std::size_t subspace_dim = 0;

  // eigenvalues recorded for every requested prime (can hold with
  // subspace_dim > 1 when distinct forms share all listed eigenvalues)
  bool complete(std::size_t n_primes) const { return system.values.size() == n_primes; }
};

// Recursively splits the space along generalized eigenspaces of each T_ell,
// extending scalars to F_{p^2} when a characteristic polynomial has no root
// in the current field.  Emits one record per final subspace; the eigenform
// reported is a genuine common eigenvector for all recorded eigenvalues.
std::vector<EigenformRecord> decompose_eigensystems(const FormSpace& space,
                                                    const std::vector<std::uint64_t>& primes);

// Phi(T_ell) = 1 + ell^{k-1} mod p.
Eigensystem eisenstein_eigensystem(int k, const Prime& p,
                                   const std::vector<std::uint64_t>& primes);

// Primes <= bound with p excluded, ascending.
std::vector<std::uint64_t> primes_up_to(std::uint64_t bound, std::uint64_t excluded);

}  // namespace mmfp
