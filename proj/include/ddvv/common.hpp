#pragma once

#include <stdexcept>
#include <string>

namespace ddvv {

inline constexpr const char* kVersion = "0.1.0";

/// Default relative equality tolerance for gap/certificate decisions.
inline constexpr double kEqTol = 1e-9;

/// Largest tolerated asymmetry max|a_ij - a_ji| when a matrix is declared symmetric.
inline constexpr double kMaxAsymmetryDefect = 1e-9;

/// Orthogonality validation threshold, max|Q^tQ - I|.
inline constexpr double kOrthoTol = 1e-10;

/// Invalid caller input (dimensions, asymmetry, bad indices, malformed documents).
class input_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A self-check failed that valid inputs cannot trigger: the inequality reported
/// a forbidden violation, algebraically equal routes disagreed, or a certified
/// equality configuration failed to reconstruct.
class internal_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace ddvv
