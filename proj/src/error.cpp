#include "nesa/error.hpp"

namespace nesa {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::Io: return "Io";
    case ErrorCode::MissingField: return "MissingField";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::BadLabel: return "BadLabel";
    case ErrorCode::BadSplit: return "BadSplit";
    case ErrorCode::MalformedRecord: return "MalformedRecord";
    case ErrorCode::UnknownDocId: return "UnknownDocId";
    case ErrorCode::EmptyGazetteer: return "EmptyGazetteer";
    case ErrorCode::EmptyScope: return "EmptyScope";
    case ErrorCode::BadPolarity: return "BadPolarity";
    case ErrorCode::ZeroWeight: return "ZeroWeight";
    case ErrorCode::WeightSignMismatch: return "WeightSignMismatch";
    case ErrorCode::TermTooLong: return "TermTooLong";
    case ErrorCode::MalformedLine: return "MalformedLine";
    case ErrorCode::EmptyList: return "EmptyList";
    case ErrorCode::AlreadyTagged: return "AlreadyTagged";
    case ErrorCode::NoDpWeights: return "NoDpWeights";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::EmptyTrainingSet: return "EmptyTrainingSet";
    case ErrorCode::MissingClass: return "MissingClass";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonPositiveReg: return "NonPositiveReg";
    case ErrorCode::InvalidModel: return "InvalidModel";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NonBinaryLabel: return "NonBinaryLabel";
    case ErrorCode::EmptyTestSet: return "EmptyTestSet";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + detail), code_(code) {}

}  // namespace nesa
