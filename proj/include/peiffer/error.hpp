#pragma once

#include <atomic>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace peiffer {

enum class ErrorKind {
  AxiomViolation,
  CapExceeded,
  BadSpec,
  NotNormal,
  AmbientMismatch,
  ActionInvalid,
  NotEquivariant,
  StabilityViolation,
  NotCommuting,
  NotDouble,
  NotCentral,
  NotShortExact,
  NonzeroBoundary,
  NotSurjective,
  UnknownProperty,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept
{
  switch (kind) {
  case ErrorKind::AxiomViolation: return "AxiomViolation";
  case ErrorKind::CapExceeded: return "CapExceeded";
  case ErrorKind::BadSpec: return "BadSpec";
  case ErrorKind::NotNormal: return "NotNormal";
  case ErrorKind::AmbientMismatch: return "AmbientMismatch";
  case ErrorKind::ActionInvalid: return "ActionInvalid";
  case ErrorKind::NotEquivariant: return "NotEquivariant";
  case ErrorKind::StabilityViolation: return "StabilityViolation";
  case ErrorKind::NotCommuting: return "NotCommuting";
  case ErrorKind::NotDouble: return "NotDouble";
  case ErrorKind::NotCentral: return "NotCentral";
  case ErrorKind::NotShortExact: return "NotShortExact";
  case ErrorKind::NonzeroBoundary: return "NonzeroBoundary";
  case ErrorKind::NotSurjective: return "NotSurjective";
  case ErrorKind::UnknownProperty: return "UnknownProperty";
  }
  return "Unknown";
}

/// Every failure raised by the library. `witness()` holds a rendered
/// counterexample (element pair, unhit element, ...) when one exists.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what, std::string witness = {})
  : std::runtime_error(std::string(to_string(kind)) + ": " + what),
    kind_(kind), witness_(std::move(witness))
  {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& witness() const noexcept { return witness_; }

private:
  ErrorKind kind_;
  std::string witness_;
};

namespace limits {

inline std::atomic<std::size_t>& group_order_cap_ref()
{
  static std::atomic<std::size_t> cap{2048};
  return cap;
}

inline std::atomic<std::size_t>& lie_dim_cap_ref()
{
  static std::atomic<std::size_t> cap{6};
  return cap;
}

/// Largest group order any construction may produce.
inline std::size_t group_order_cap() { return group_order_cap_ref().load(); }
inline void set_group_order_cap(std::size_t n) { group_order_cap_ref().store(n); }

/// Largest Lie algebra dimension accepted from input or produced by products.
inline std::size_t lie_dim_cap() { return lie_dim_cap_ref().load(); }
inline void set_lie_dim_cap(std::size_t n) { lie_dim_cap_ref().store(n); }

} // namespace limits

} // namespace peiffer
