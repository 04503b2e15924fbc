#pragma once

#include <stdexcept>
#include <string>

namespace pg3 {

/// An enumeration or candidate count exceeds the configured resource cap.
struct budget_error : std::runtime_error {
  explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

/// A verification was refused because its hypothesis does not hold
/// (e.g. the surface has an F_q-plane component).
struct hypothesis_error : std::runtime_error {
  explicit hypothesis_error(const std::string& what)
      : std::runtime_error(what) {}
};

/// A bound asserted by the theory failed computationally; this indicates a
/// defect and is never expected on valid inputs.
struct bound_violation : std::logic_error {
  explicit bound_violation(const std::string& what) : std::logic_error(what) {}
};

}  // namespace pg3
