#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace geosub {

enum class ErrorCode {
  NoDecomposition,
  Disconnected,
  NotAnEdge,
  AmbiguousAmbient,
  NotKleinBottleOneHole,
  InvalidModel,
  UnknownPiece,
  SelectionIsAll,
  NotEssential,
  NotGeneric,
  NotVirtuallyAbelian,
  NotInjective,
  AmbientExcluded,
  ForbiddenComponents,
  DifferentAmbient,
  CommonComponentOverlap,
  KleinCoreUnrepresentable,
  InvalidSimplex,
  NotASubgroup,
  DimensionMismatch,
  SyntaxError,
  DuplicateId,
  DanglingReference,
  DoubleGlue,
};

std::string_view to_string(ErrorCode code);

/// Raised when an operation's guard or precondition rejects its input.
/// Decision results (including negative ones) are never reported this way.
class ModelError : public std::runtime_error {
 public:
  ModelError(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Parse failures; `line` is 1-based, 0 when the error is not tied to a line.
class ParseError : public ModelError {
 public:
  ParseError(ErrorCode code, std::size_t line, const std::string& detail)
      : ModelError(code, "line " + std::to_string(line) + ": " + detail),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace geosub
