#ifndef CONDMON_ERRORS_HPP
#define CONDMON_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace condmon {

enum class ErrorKind {
  kGroupMismatch,
  kInsufficientRank,
  kDimensionMismatch,
  kNotAMember,
  kWindowTooLarge,
  kBudgetExceeded,
  kBoundAttained,
  kBadParameters,
  kGroupTooSmall,
  kUnknownPrime,
  kParse,
  kVerificationFailed,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library. Budget errors carry the amount of
/// work done before the cap was hit so callers can report partial progress.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::uint64_t progress = 0)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        progress_(progress) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::uint64_t progress() const noexcept { return progress_; }

 private:
  ErrorKind kind_;
  std::uint64_t progress_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message,
                              std::uint64_t progress = 0) {
  throw Error(kind, message, progress);
}

}  // namespace condmon

#endif  // CONDMON_ERRORS_HPP
