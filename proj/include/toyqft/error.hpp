#ifndef TOYQFT_ERROR_HPP
#define TOYQFT_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace toyqft {

enum class Errc {
  InvalidRoster,
  UnknownMode,
  NotInBasis,
  SpaceMismatch,
  DuplicateTerm,
  NotAForm,
  NotHermitian,
  DivisionByZeroEnergy,
  EmptyRoster,
  InvalidArgument,
};

constexpr std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidRoster: return "InvalidRoster";
    case Errc::UnknownMode: return "UnknownMode";
    case Errc::NotInBasis: return "NotInBasis";
    case Errc::SpaceMismatch: return "SpaceMismatch";
    case Errc::DuplicateTerm: return "DuplicateTerm";
    case Errc::NotAForm: return "NotAForm";
    case Errc::NotHermitian: return "NotHermitian";
    case Errc::DivisionByZeroEnergy: return "DivisionByZeroEnergy";
    case Errc::EmptyRoster: return "EmptyRoster";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the Errc codes.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace toyqft

#endif  // TOYQFT_ERROR_HPP
