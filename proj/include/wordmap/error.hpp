#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wordmap {

/// Failure categories surfaced by the library. Codes up to `VerificationFailed`
/// are usage or internal errors; `NotFound` and `Unsupported` describe a
/// mathematically meaningful negative answer.
enum class ErrorCode {
  InvalidArgument,
  ParseError,
  DivisionByZero,
  DescriptorMismatch,
  InfiniteField,
  ReduciblePolynomial,
  UnsupportedBase,
  UnsupportedField,
  ZeroPolynomial,
  NonSquare,
  NotSimilar,
  NotNilpotent,
  InseparableCharPoly,
  FactorizationUnavailable,
  UnhandledShape,
  NonzeroTrace,
  WitnessNotFound,
  PartitionTooSmall,
  SizeTooSmall,
  ZeroLeadingCoordinate,
  CharPolyMismatch,
  TooLarge,
  VerificationFailed,
  NotFound,
  Unsupported,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  /// True for outcomes that say "no witness exists here / this case is open",
  /// as opposed to malformed input or a broken invariant.
  bool is_negative_answer() const noexcept {
    return code_ == ErrorCode::NotFound || code_ == ErrorCode::Unsupported ||
           code_ == ErrorCode::NonzeroTrace || code_ == ErrorCode::WitnessNotFound ||
           code_ == ErrorCode::PartitionTooSmall || code_ == ErrorCode::SizeTooSmall;
  }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace wordmap
