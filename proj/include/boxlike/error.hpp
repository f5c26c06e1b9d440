#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace boxlike {

enum class Errc {
  parse_error,
  not_generalized_permutation,
  dimension_mismatch,
  negative_exponent,
  invalid_k,
  basis_mismatch,
  unsupported_dimension,
  invalid_exponents,
  invalid_t,
  empty_system,
  not_contractive,
  degenerate_dimension_zero,
  no_root_in_range,
  depth_too_large,
  invalid_config,
  numeric_failure,
  io_error,
};

constexpr std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::parse_error: return "ParseError";
    case Errc::not_generalized_permutation: return "NotGeneralizedPermutation";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::negative_exponent: return "NegativeExponent";
    case Errc::invalid_k: return "InvalidK";
    case Errc::basis_mismatch: return "BasisMismatch";
    case Errc::unsupported_dimension: return "UnsupportedDimension";
    case Errc::invalid_exponents: return "InvalidExponents";
    case Errc::invalid_t: return "InvalidT";
    case Errc::empty_system: return "EmptySystem";
    case Errc::not_contractive: return "NotContractive";
    case Errc::degenerate_dimension_zero: return "DegenerateDimensionZero";
    case Errc::no_root_in_range: return "NoRootInRange";
    case Errc::depth_too_large: return "DepthTooLarge";
    case Errc::invalid_config: return "InvalidConfig";
    case Errc::numeric_failure: return "NumericFailure";
    case Errc::io_error: return "IoError";
  }
  return "Unknown";
}

/// Exception carrying one of the library's error variants.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace boxlike
