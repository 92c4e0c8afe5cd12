#pragma once

#include <stdexcept>
#include <string>

namespace partage {

enum class Errc {
  // input validation
  ZeroLegitimate,
  NegativeCount,
  CountTooLarge,
  FractionOutOfRange,
  MalformedRatio,
  MalformedDocument,
  // operation preconditions
  NoIllegitimateChild,
  ZeroFraction,
  LastLegitimateChild,
  NoSuchMistress,
  TooLargeForOracle,
  MethodNotApplicable,
  // internal consistency
  DivisionByZero,
  ConservationViolation,
};

constexpr const char* to_string(Errc code) {
  switch (code) {
    case Errc::ZeroLegitimate: return "ZeroLegitimate";
    case Errc::NegativeCount: return "NegativeCount";
    case Errc::CountTooLarge: return "CountTooLarge";
    case Errc::FractionOutOfRange: return "FractionOutOfRange";
    case Errc::MalformedRatio: return "MalformedRatio";
    case Errc::MalformedDocument: return "MalformedDocument";
    case Errc::NoIllegitimateChild: return "NoIllegitimateChild";
    case Errc::ZeroFraction: return "ZeroFraction";
    case Errc::LastLegitimateChild: return "LastLegitimateChild";
    case Errc::NoSuchMistress: return "NoSuchMistress";
    case Errc::TooLargeForOracle: return "TooLargeForOracle";
    case Errc::MethodNotApplicable: return "MethodNotApplicable";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::ConservationViolation: return "ConservationViolation";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// The caller supplied input outside the domain (bad counts, fraction out of
// [0,1], unparseable ratio text, malformed estate document). CLI exit code 2.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Valid input hit an operation precondition: no illegitimate child to
// promote, last legitimate child, oracle guard, method not applicable to the
// composition shape. CLI exit code 3.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A library invariant failed. Reaching this is a bug, not bad input.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace partage
