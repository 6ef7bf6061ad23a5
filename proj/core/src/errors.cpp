#include "condmon/errors.hpp"

#include <algorithm>
#include <cmath>

#include "condmon/budget.hpp"

namespace condmon {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kGroupMismatch: return "GroupMismatch";
    case ErrorKind::kInsufficientRank: return "InsufficientRank";
    case ErrorKind::kDimensionMismatch: return "DimensionMismatch";
    case ErrorKind::kNotAMember: return "NotAMember";
    case ErrorKind::kWindowTooLarge: return "WindowTooLarge";
    case ErrorKind::kBudgetExceeded: return "BudgetExceeded";
    case ErrorKind::kBoundAttained: return "BoundAttained";
    case ErrorKind::kBadParameters: return "BadParameters";
    case ErrorKind::kGroupTooSmall: return "GroupTooSmall";
    case ErrorKind::kUnknownPrime: return "UnknownPrime";
    case ErrorKind::kParse: return "ParseError";
    case ErrorKind::kVerificationFailed: return "VerificationFailed";
  }
  return "Unknown";
}

namespace {
template <typename T>
T scale_cap(T cap, double factor) {
  const double v = std::floor(static_cast<double>(cap) * factor);
  return std::max<T>(1, static_cast<T>(v));
}
}  // namespace

Budget Budget::scaled(double factor) const {
  Budget out = *this;
  out.factorization_cap = scale_cap(factorization_cap, factor);
  out.enumeration_cap = scale_cap(enumeration_cap, factor);
  out.length_cap = scale_cap(length_cap, factor);
  out.sequence_length_cap = scale_cap(sequence_length_cap, factor);
  return out;
}

}  // namespace condmon
