#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace abeltoric {

enum class ErrorKind {
  MalformedFan,
  NotABasis,
  NotACone,
  NoContainingCone,
  UnderdeterminedRays,
  InconsistentRelations,
  ValidationFailed,
  CollectionMismatch,
  RankDeficiency,
  InvalidFan,
  CycleDetected,
  ParseError,
  UnknownFamily,
  Internal,
};

std::string_view error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace abeltoric
