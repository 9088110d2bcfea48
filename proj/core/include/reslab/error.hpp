#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace reslab {

enum class Errc {
  // configuration
  TooFewPoles,
  DuplicatePosition,
  ZeroCoupling,
  NonpositiveBeta,
  BadH,
  NonFinite,
  Parse,
  // evaluation
  ZeroSpectralParameter,
  SingularCoefficient,
  OverflowGuard,
  TooManyPoles,
  // closed forms
  NotTwoDeltas,
  NotThreeDeltas,
  NotEqualSpacing,
  NoConvergence,
  // root finding
  InvalidWindow,
  BoundaryZero,
  NotNearSingular,
  MaxDepthExceeded,
};

std::string_view to_string(Errc code) noexcept;

/// Exception carrying a machine-readable code and, where meaningful, the
/// index of the offending pole (input order) or per-k label.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message,
        std::optional<std::size_t> index = std::nullopt);

  Errc code() const noexcept { return code_; }
  std::optional<std::size_t> index() const noexcept { return index_; }

 private:
  Errc code_;
  std::optional<std::size_t> index_;
};

}  // namespace reslab
