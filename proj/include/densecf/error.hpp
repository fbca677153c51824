#pragma once

#include <stdexcept>
#include <string>

namespace densecf {

enum class ErrorKind {
  InvalidPair,
  UndefinedRatio,
  EditConflict,
  InvalidParameter,
  UntrainedModel,
  DegenerateLabels,
  Configuration,
  Coverage,
  Partition,
  Format,
  Parse,
  Spec,
  InvalidCandidate,
  EmptyDistribution,
  Io,
  Internal,
};

const char* to_string(ErrorKind kind);

// Exit-code family for the command line: 1 usage/config, 2 data, 3 internal.
int exit_code_for(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace densecf
