#pragma once

#include <stdexcept>
#include <string>

namespace mmfp {

enum class errc {
  field_mismatch,
  denominator_divisible_by_p,
  zero_polynomial,
  insufficient_precision,
  ell_equals_p,
  zero_form,
  not_a_modular_form,
  not_an_eigenform,
  theorem_violation,
  unresolved_eigensystem,
  hasse_not_constant,
  unsupported,
  invalid_argument,
};

const char* errc_name(errc code) noexcept;

// Mathematical error surfaced to callers; internal invariant breaks use
// std::logic_error instead.
class Error : public std::runtime_error {
public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace mmfp
