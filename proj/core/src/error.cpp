#include "reslab/error.hpp"

namespace reslab {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::TooFewPoles: return "TooFewPoles";
    case Errc::DuplicatePosition: return "DuplicatePosition";
    case Errc::ZeroCoupling: return "ZeroCoupling";
    case Errc::NonpositiveBeta: return "NonpositiveBeta";
    case Errc::BadH: return "BadH";
    case Errc::NonFinite: return "NonFinite";
    case Errc::Parse: return "Parse";
    case Errc::ZeroSpectralParameter: return "ZeroSpectralParameter";
    case Errc::SingularCoefficient: return "SingularCoefficient";
    case Errc::OverflowGuard: return "OverflowGuard";
    case Errc::TooManyPoles: return "TooManyPoles";
    case Errc::NotTwoDeltas: return "NotTwoDeltas";
    case Errc::NotThreeDeltas: return "NotThreeDeltas";
    case Errc::NotEqualSpacing: return "NotEqualSpacing";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::InvalidWindow: return "InvalidWindow";
    case Errc::BoundaryZero: return "BoundaryZero";
    case Errc::NotNearSingular: return "NotNearSingular";
    case Errc::MaxDepthExceeded: return "MaxDepthExceeded";
  }
  return "Unknown";
}

namespace {

std::string decorate(Errc code, const std::string& message,
                     std::optional<std::size_t> index) {
  std::string out(to_string(code));
  if (index) out += "[" + std::to_string(*index) + "]";
  out += ": ";
  out += message;
  return out;
}

}  // namespace

Error::Error(Errc code, const std::string& message,
             std::optional<std::size_t> index)
    : std::runtime_error(decorate(code, message, index)),
      code_(code),
      index_(index) {}

}  // namespace reslab
