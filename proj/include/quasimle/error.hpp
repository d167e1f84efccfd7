#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace quasimle {

// Stable error names; the CLI prints these verbatim.
enum class ErrorKind {
  EmptyInput,
  RaggedGrid,
  EmptyRowOrColumn,
  ParseError,
  InvalidArgument,
  CellNotInSupport,
  EmptyBlock,
  NotDSFree,
  NotDoublyChordalBipartite,
  ZeroDenominatorFactor,
  VanishingLinearForm,
  WrongPattern,
  DegenerateElimination,
  NoConvergence,
  IoError,
};

std::string_view error_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(error_name(kind)) + ": " + detail), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace quasimle
