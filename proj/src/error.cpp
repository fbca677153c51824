#include "densecf/error.hpp"

namespace densecf {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidPair: return "invalid-pair";
    case ErrorKind::UndefinedRatio: return "undefined-ratio";
    case ErrorKind::EditConflict: return "edit-conflict";
    case ErrorKind::InvalidParameter: return "invalid-parameter";
    case ErrorKind::UntrainedModel: return "untrained-model";
    case ErrorKind::DegenerateLabels: return "degenerate-labels";
    case ErrorKind::Configuration: return "configuration";
    case ErrorKind::Coverage: return "coverage";
    case ErrorKind::Partition: return "partition";
    case ErrorKind::Format: return "format";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Spec: return "spec";
    case ErrorKind::InvalidCandidate: return "invalid-candidate";
    case ErrorKind::EmptyDistribution: return "empty-distribution";
    case ErrorKind::Io: return "io";
    case ErrorKind::Internal: return "internal";
  }
  return "unknown";
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidParameter:
    case ErrorKind::Configuration:
    case ErrorKind::Spec:
      return 1;
    case ErrorKind::Internal:
      return 3;
    default:
      return 2;
  }
}

}  // namespace densecf
