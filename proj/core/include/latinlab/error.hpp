#pragma once

#include <stdexcept>
#include <string>

namespace latinlab {

/// Failure codes for operations that reject their input. Every rejection
/// names the first violated constraint in a deterministic scan order, so
/// callers (and tests) can match on the code plus its payload.
enum class Errc {
  DuplicateInRow,
  DuplicateInColumn,
  SymbolOutOfRange,
  IncompleteCover,
  ConflictingTriples,
  ParseError,
  NotAPermutation,
  SizeGuard,
  KOutOfRange,
  KTooSmall,
  MTooLarge,
  TooLargeForExact,
  NotAMatching,
  InvalidSwitching,
  RNonPositive,
  InvalidParams,
  InvalidAlpha,
  HTooLarge,
  CompletionFailed,
  NTooSmall,
};

const char* errc_name(Errc code);

/// Exception carrying a structured rejection. `arg0`/`arg1` hold the
/// offending coordinates where the code calls for them (0-based indices;
/// symbols as they appear in external 1-based input).
class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string message, long arg0 = -1, long arg1 = -1)
      : std::runtime_error(std::move(message)), code_(code), arg0_(arg0), arg1_(arg1) {}

  Errc code() const { return code_; }
  long arg0() const { return arg0_; }
  long arg1() const { return arg1_; }

 private:
  Errc code_;
  long arg0_;
  long arg1_;
};

}  // namespace latinlab
