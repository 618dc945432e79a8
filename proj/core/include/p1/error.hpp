#pragma once

#include <stdexcept>
#include <string>

namespace p1 {

enum class ErrorCode {
  StiffnessFailure,
  BlowupUnclassified,
  NotAPole,
  OffsetTooLarge,
  SeedOutOfRange,
  CoalescingTurningPoints,
  SignStructureViolated,
  ContourObstruction,
  DegenerateInversion,
  ApparentSingularity,
  AmbiguousDominance,
  MonodromyNotConverged,
  DegenerateScaling,
  CoalescenceRegime,
  ArccosDomain,
  BranchBoundary,
  SignatureUndefined,
  FitRejected,
  BracketFailure,
  InvalidArgument,
};

// Short message attached to each code; the CLI prints it on stderr.
const char* error_text(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode c, const std::string& detail = {})
      : std::runtime_error(detail.empty() ? std::string(error_text(c))
                                          : std::string(error_text(c)) + ": " + detail),
        code_(c) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace p1
