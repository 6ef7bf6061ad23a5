#ifndef CONDMON_BUDGET_HPP
#define CONDMON_BUDGET_HPP

#include <cstdint>

namespace condmon {

/// Caps on every enumeration. Exceeding one is an error, never a truncation.
struct Budget {
  std::uint64_t factorization_cap = 100'000;
  std::uint64_t enumeration_cap = 1'000'000;  // group elements, box points
  std::int64_t length_cap = 40;               // |v| for exhaustive atom tests
  std::int64_t sequence_length_cap = 64;      // zero-sum-freeness searches

  /// Multiplies every cap by `factor` (at least 1 unit each).
  Budget scaled(double factor) const;
};

}  // namespace condmon

#endif  // CONDMON_BUDGET_HPP
