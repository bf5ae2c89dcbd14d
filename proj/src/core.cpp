#include "sll/core.hpp"

namespace sll {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SelfLoop: return "SelfLoop";
    case ErrorKind::ZeroWeight: return "ZeroWeight";
    case ErrorKind::DuplicateEdge: return "DuplicateEdge";
    case ErrorKind::BadIndex: return "BadIndex";
    case ErrorKind::MalformedLine: return "MalformedLine";
    case ErrorKind::NonSquare: return "NonSquare";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::SingularShift: return "SingularShift";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::SingularInterior: return "SingularInterior";
    case ErrorKind::CrossCheckFailed: return "CrossCheckFailed";
    case ErrorKind::IllConditionedLyapunov: return "IllConditionedLyapunov";
    case ErrorKind::ZeroSpectralRadius: return "ZeroSpectralRadius";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::NonPositiveRealPart: return "NonPositiveRealPart";
    case ErrorKind::NotUndirected: return "NotUndirected";
    case ErrorKind::DegeneratePartition: return "DegeneratePartition";
    case ErrorKind::GateFailed: return "GateFailed";
    case ErrorKind::NotHurwitz: return "NotHurwitz";
    case ErrorKind::TooSmall: return "TooSmall";
  }
  return "Unknown";
}

ErrorCategory category(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SelfLoop:
    case ErrorKind::ZeroWeight:
    case ErrorKind::DuplicateEdge:
    case ErrorKind::BadIndex:
    case ErrorKind::MalformedLine:
      return ErrorCategory::Input;
    case ErrorKind::NonSquare:
    case ErrorKind::NoConvergence:
    case ErrorKind::SingularShift:
    case ErrorKind::Overflow:
    case ErrorKind::SingularInterior:
    case ErrorKind::CrossCheckFailed:
    case ErrorKind::IllConditionedLyapunov:
    case ErrorKind::ZeroSpectralRadius:
      return ErrorCategory::Numerical;
    default:
      return ErrorCategory::Precondition;
  }
}

namespace {
std::string with_line(ErrorKind kind, const std::string& message, std::size_t line) {
  std::string out(to_string(kind));
  if (line > 0) out += " (line " + std::to_string(line) + ")";
  return out + ": " + message;
}
}  // namespace

Error::Error(ErrorKind kind, const std::string& message, std::size_t line)
    : std::runtime_error(with_line(kind, message, line)), kind_(kind), line_(line) {}

}  // namespace sll
