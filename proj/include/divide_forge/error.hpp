#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace divide_forge {

enum class ErrorCode {
  BadPair,
  ExponentOrder,
  NotCoprime,
  GenericityFailure,
  TripleParty,
  Tangency,
  EndpointOnInterior,
  NotGeneric,
  InconsistentAnchors,
  EtaTooLarge,
  WrongBranchKind,
  NoCore,
  ParseError,
  UnsignedDivide,
  NoProvenance,
  MissingWalkSpec,
  LengthMismatch,
  UnknownName,
  InvalidArgument,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised by `validate` with every violated condition, not only the first.
class ValidationError : public Error {
 public:
  struct Issue {
    ErrorCode code;
    std::string message;
  };

  explicit ValidationError(std::vector<Issue> issues);

  const std::vector<Issue>& issues() const noexcept { return issues_; }

 private:
  std::vector<Issue> issues_;
};

}  // namespace divide_forge
