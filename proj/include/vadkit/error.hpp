#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace vadkit {

enum class ErrorCode {
  MalformedLine,
  DuplicateTerm,
  ScoreOutOfRange,
  SubsetTermMissing,
  BasicEmotionUnresolvable,
  InvalidCount,
  InvalidArgument,
  EmptyProbeSet,
  TargetUnreachable,
  DegenerateSeeds,
  EmptySpace,
  AssignmentMismatch,
  LengthMismatch,
  EmptyInput,
  TooFewSamples,
  NotAProbability,
  NotOneHot,
  DimensionMismatch,
  ZeroVector,
  NoOverlapWithVocabulary,
  MalformedRecord,
  DuplicateSampleId,
  UnknownLabel,
  MissingLabels,
  UnmatchedSampleId,
  NoJoinedRecords,
  MalformedConfig,
  MalformedModel,
  Io,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::MalformedLine: return "MalformedLine";
    case ErrorCode::DuplicateTerm: return "DuplicateTerm";
    case ErrorCode::ScoreOutOfRange: return "ScoreOutOfRange";
    case ErrorCode::SubsetTermMissing: return "SubsetTermMissing";
    case ErrorCode::BasicEmotionUnresolvable: return "BasicEmotionUnresolvable";
    case ErrorCode::InvalidCount: return "InvalidCount";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::EmptyProbeSet: return "EmptyProbeSet";
    case ErrorCode::TargetUnreachable: return "TargetUnreachable";
    case ErrorCode::DegenerateSeeds: return "DegenerateSeeds";
    case ErrorCode::EmptySpace: return "EmptySpace";
    case ErrorCode::AssignmentMismatch: return "AssignmentMismatch";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::TooFewSamples: return "TooFewSamples";
    case ErrorCode::NotAProbability: return "NotAProbability";
    case ErrorCode::NotOneHot: return "NotOneHot";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::NoOverlapWithVocabulary: return "NoOverlapWithVocabulary";
    case ErrorCode::MalformedRecord: return "MalformedRecord";
    case ErrorCode::DuplicateSampleId: return "DuplicateSampleId";
    case ErrorCode::UnknownLabel: return "UnknownLabel";
    case ErrorCode::MissingLabels: return "MissingLabels";
    case ErrorCode::UnmatchedSampleId: return "UnmatchedSampleId";
    case ErrorCode::NoJoinedRecords: return "NoJoinedRecords";
    case ErrorCode::MalformedConfig: return "MalformedConfig";
    case ErrorCode::MalformedModel: return "MalformedModel";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

// Every data-level failure in the library is reported through this type.
// `line()` is set for errors tied to a position in an input file (1-based).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::optional<std::size_t> line = std::nullopt)
      : std::runtime_error(format(code, message, line)), code_(code), line_(line) {}

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> line() const noexcept { return line_; }

 private:
  static std::string format(ErrorCode code, const std::string& message,
                            std::optional<std::size_t> line) {
    std::string out(to_string(code));
    if (line) out += " (line " + std::to_string(*line) + ")";
    out += ": ";
    out += message;
    return out;
  }

  ErrorCode code_;
  std::optional<std::size_t> line_;
};

}  // namespace vadkit
