// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace rescurve {

/// Failure taxonomy shared by every module. The CLI maps these onto
/// process exit codes, so the split between input validation and
/// numerical breakdown is part of the public contract.
enum class errc {
  non_admissible,         // curve/schedule/spectrum/variant rejected
  size_mismatch,          // partition or dimension bookkeeping violated
  zero_root,              // polynomial root at the origin
  dimension_mismatch,     // incompatible vector/matrix shapes
  gamma_forbidden,        // gamma == -1 in the non-convergent variant
  curve_not_decreasing,   // plain scaffold fed a non-decreasing curve
  degenerate_candidate,   // candidate numerically inside span(basis)
  complement_exhausted,   // no orthogonal complement direction left
  numerically_singular,   // LU pivot collapse or failed residual identity
  zero_residual,          // Krylov process started from the zero vector
  malformed_input,        // unreadable or syntactically invalid file
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::non_admissible: return "non_admissible";
    case errc::size_mismatch: return "size_mismatch";
    case errc::zero_root: return "zero_root";
    case errc::dimension_mismatch: return "dimension_mismatch";
    case errc::gamma_forbidden: return "gamma_forbidden";
    case errc::curve_not_decreasing: return "curve_not_decreasing";
    case errc::degenerate_candidate: return "degenerate_candidate";
    case errc::complement_exhausted: return "complement_exhausted";
    case errc::numerically_singular: return "numerically_singular";
    case errc::zero_residual: return "zero_residual";
    case errc::malformed_input: return "malformed_input";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

  /// True for errors caused by user input rather than numerical failure.
  bool is_validation() const noexcept {
    switch (code_) {
      case errc::non_admissible:
      case errc::size_mismatch:
      case errc::zero_root:
      case errc::dimension_mismatch:
      case errc::gamma_forbidden:
      case errc::curve_not_decreasing:
        return true;
      default:
        return false;
    }
  }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

}  // namespace rescurve
