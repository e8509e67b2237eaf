#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mmfp/hecke.hpp"

namespace mmfp {

// A form fed into the pipeline: a named Eisenstein series, Delta, or an
// explicit q-expansion.
struct SourceSpec {
  enum class Kind { eisenstein, delta, series };
  Kind kind = Kind::eisenstein;
  int k = 4;                      // weight for eisenstein sources
  std::optional<QSeries> series;  // for Kind::series

  static SourceSpec eisenstein(int k) { return {Kind::eisenstein, k, std::nullopt}; }
  static SourceSpec delta() { return {Kind::delta, 12, std::nullopt}; }
  static SourceSpec from_series(QSeries q);

  std::string describe() const;
  int weight() const { return kind == Kind::series ? series->weight() : k; }
};

// Outcome of the cuspidality check for one eigenform: its filtration w, its
// eigensystem, and a cuspidal eigenform of weight w or w + p^2 - 1 carrying
// the same eigensystem.
struct Verdict {
  std::uint64_t p = 0;
  std::string source;
  int filtration = 0;
  Eigensystem phi;
  bool source_is_cuspidal = false;
  int matched_weight = 0;
  EigenformRecord matched;
  std::size_t match_multiplicity = 0;
  std::vector<std::uint64_t> primes;
  std::size_t precision = 0;
};

Verdict verify_theorem(const Prime& p, const SourceSpec& source, std::uint64_t prime_bound,
                       const SpaceProvider* provider = nullptr);

struct CorollaryRow {
  int k = 0;
  std::string id;
  int filtration = 0;
  bool cuspidal = false;
};

struct CorollaryReport {
  std::uint64_t p = 0;
  int k_max = 0;
  std::vector<CorollaryRow> rows;
  std::vector<CorollaryRow> violations;  // filtration > p+1 with nonzero a_0
  std::vector<std::string> unresolved;
};

// For every even k <= k_max decomposes M_k and checks that each resolved
// eigenform of filtration > p+1 is a cusp form.
CorollaryReport corollary_sweep(const Prime& p, int k_max, std::uint64_t prime_bound,
                                const SpaceProvider* provider = nullptr);

struct RegressionCase {
  std::string name;
  std::uint64_t p = 0;
  int source_weight = 0;
  int expected_filtration = 0;
  int expected_matched_weight = 0;
  bool pass = false;
  std::string detail;  // per-coefficient diffs on failure
};

// Fixed fixtures: five Eisenstein sources whose matched cusp eigenforms are
// known through q^37.
std::vector<RegressionCase> regression_examples(const SpaceProvider* provider = nullptr);

}  // namespace mmfp
