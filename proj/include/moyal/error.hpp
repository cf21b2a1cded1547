#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace moyal {

enum class ErrorCode {
  invalid_argument,
  grid_too_coarse,
  support_overflow,
  grid_mismatch,
  zero_vector,
  all_below_floor,
  imaginary_residue,
  band_limit,
  degree,
  support,
  mask_too_fragmented,
  unwrap_discontinuity,
  boundary_contact,
  field_undersampled,
  chart_incompatibility,
  signature_mismatch,
  size_limit,
  non_invertible,
  incomplete_set,
  too_few_paths,
  parse,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries a code so callers (and the CLI
// exit-code mapping) can branch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::grid_too_coarse: return "grid-too-coarse";
    case ErrorCode::support_overflow: return "support-overflow";
    case ErrorCode::grid_mismatch: return "grid-mismatch";
    case ErrorCode::zero_vector: return "zero-vector";
    case ErrorCode::all_below_floor: return "all-below-floor";
    case ErrorCode::imaginary_residue: return "imaginary-residue";
    case ErrorCode::band_limit: return "band-limit";
    case ErrorCode::degree: return "degree";
    case ErrorCode::support: return "support";
    case ErrorCode::mask_too_fragmented: return "mask-too-fragmented";
    case ErrorCode::unwrap_discontinuity: return "unwrap-discontinuity";
    case ErrorCode::boundary_contact: return "boundary-contact";
    case ErrorCode::field_undersampled: return "field-undersampled";
    case ErrorCode::chart_incompatibility: return "chart-incompatibility";
    case ErrorCode::signature_mismatch: return "signature-mismatch";
    case ErrorCode::size_limit: return "size-limit";
    case ErrorCode::non_invertible: return "non-invertible";
    case ErrorCode::incomplete_set: return "incomplete-set";
    case ErrorCode::too_few_paths: return "too-few-paths";
    case ErrorCode::parse: return "parse";
  }
  return "unknown";
}

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool condition, ErrorCode code, const std::string& what) {
  if (!condition) fail(code, what);
}

}  // namespace moyal
