#pragma once

#include <stdexcept>
#include <string>

namespace chebknot {

// Invalid user-facing parameters (gcd(a,b) != 1, both even, bad ranges).
// The CLI maps this to exit code 2.
struct input_error : std::runtime_error {
  explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

// A configured resource cutoff was exceeded (bracket crossing cutoff,
// state-count guard). The CLI maps this to exit code 3 outside `scan`.
struct cutoff_exceeded : std::runtime_error {
  explicit cutoff_exceeded(const std::string& what) : std::runtime_error(what) {}
};

// An internal cross-check failed (dual-path invariant mismatch, broken
// certificate). Never swallowed: the CLI maps this to exit code 4.
struct certification_error : std::logic_error {
  explicit certification_error(const std::string& what) : std::logic_error(what) {}
};

}  // namespace chebknot
