#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace modcsp {

enum class Errc {
  group_mismatch,
  length_mismatch,
  multi_component_group,
  invalid_rounds,
  auto_rounds_unavailable,
  invalid_modulus,
  invalid_trials,
  size_limit,
  basis_mismatch,
  not_prime,
  even_modulus,
  prime_power_modulus,
  invalid_system,
  negative_coefficients,
  not_unique_point,
  invalid_rep,
  invalid_argument,
  parse_error,
  semantic_error,
};

std::string_view to_string(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what, std::size_t line = 0)
      : std::runtime_error(what), code_(code), line_(line) {}

  Errc code() const noexcept { return code_; }
  // 1-based source line for parse/semantic errors, 0 otherwise.
  std::size_t line() const noexcept { return line_; }

 private:
  Errc code_;
  std::size_t line_;
};

}  // namespace modcsp
