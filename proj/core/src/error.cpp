#include "p1/error.hpp"

namespace p1 {

const char* error_text(ErrorCode c) {
  switch (c) {
    case ErrorCode::StiffnessFailure: return "stiffness failure";
    case ErrorCode::BlowupUnclassified: return "blowup unclassified";
    case ErrorCode::NotAPole: return "not a PI pole";
    case ErrorCode::OffsetTooLarge: return "offset too large";
    case ErrorCode::SeedOutOfRange: return "seed out of range";
    case ErrorCode::CoalescingTurningPoints: return "coalescing turning points";
    case ErrorCode::SignStructureViolated: return "sign structure violated";
    case ErrorCode::ContourObstruction: return "contour obstruction";
    case ErrorCode::DegenerateInversion: return "degenerate inversion";
    case ErrorCode::ApparentSingularity: return "apparent singularity";
    case ErrorCode::AmbiguousDominance: return "ambiguous dominance";
    case ErrorCode::MonodromyNotConverged: return "monodromy not converged";
    case ErrorCode::DegenerateScaling: return "degenerate scaling";
    case ErrorCode::CoalescenceRegime: return "turning-point coalescence regime";
    case ErrorCode::ArccosDomain: return "arccos domain violation";
    case ErrorCode::BranchBoundary: return "branch boundary";
    case ErrorCode::SignatureUndefined: return "signature undefined for class";
    case ErrorCode::FitRejected: return "fit rejected";
    case ErrorCode::BracketFailure: return "bracket failure";
    case ErrorCode::InvalidArgument: return "invalid argument";
  }
  return "unknown error";
}

}  // namespace p1
