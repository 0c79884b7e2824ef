#pragma once

#include <stdexcept>
#include <string>

namespace tsl {

enum class ErrorCode {
  CycleDetected,
  MultipleRoots,
  MultipleParents,
  Disconnected,
  ZeroOutdegreeRule,
  FrontierHit,
  TruncationExceeded,
  NotADescendant,
  HasLeaf,
  HorizonExhausted,
  NotConstantWeight,
  NotSymmetric,
  WeightUndefined,
  ZeroWeight,
  InexactArithmetic,
  SizeLimit,
  InvalidSpec,
};

inline const char* error_name(ErrorCode c)
{
  switch (c) {
    case ErrorCode::CycleDetected: return "CycleDetected";
    case ErrorCode::MultipleRoots: return "MultipleRoots";
    case ErrorCode::MultipleParents: return "MultipleParents";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::ZeroOutdegreeRule: return "ZeroOutdegreeRule";
    case ErrorCode::FrontierHit: return "FrontierHit";
    case ErrorCode::TruncationExceeded: return "TruncationExceeded";
    case ErrorCode::NotADescendant: return "NotADescendant";
    case ErrorCode::HasLeaf: return "HasLeaf";
    case ErrorCode::HorizonExhausted: return "HorizonExhausted";
    case ErrorCode::NotConstantWeight: return "NotConstantWeight";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::WeightUndefined: return "WeightUndefined";
    case ErrorCode::ZeroWeight: return "ZeroWeight";
    case ErrorCode::InexactArithmetic: return "InexactArithmetic";
    case ErrorCode::SizeLimit: return "SizeLimit";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code)
  {
  }
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tsl
