#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nesa {

// Every failure raised by the library carries one of these codes. The CLI maps
// any Error to exit status 1.
enum class ErrorCode {
  Io,
  MissingField,
  DuplicateId,
  BadLabel,
  BadSplit,
  MalformedRecord,
  UnknownDocId,
  EmptyGazetteer,
  EmptyScope,
  BadPolarity,
  ZeroWeight,
  WeightSignMismatch,
  TermTooLong,
  MalformedLine,
  EmptyList,
  AlreadyTagged,
  NoDpWeights,
  InvalidConfig,
  EmptyTrainingSet,
  MissingClass,
  DimensionMismatch,
  NonPositiveReg,
  InvalidModel,
  LengthMismatch,
  NonBinaryLabel,
  EmptyTestSet,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace nesa
