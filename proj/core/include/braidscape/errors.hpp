#pragma once

#include <stdexcept>
#include <string>

namespace braidscape {

/// Malformed input file or configuration literal.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An enumeration exceeded the configured cell cap.  Distinct from a
/// NotApplicable outcome: the computation was aborted, not decided.
struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A witness search ran out of its configured budget without reaching a
/// definitive answer.  Also distinct from NotApplicable.
struct SearchBoundExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace braidscape
