#ifndef CONDMON_VERIFY_HPP
#define CONDMON_VERIFY_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "condmon/budget.hpp"
#include "condmon/factor.hpp"
#include "condmon/ideal_extension.hpp"

namespace condmon {

struct SuiteOptions {
  Budget budget;
  std::uint64_t seed = 20240601;
  /// Random monoids for the catenary, adjacent and gap-absorption sweeps.
  std::size_t monoid_count = 50;
  /// Random monoids for the heredity and class-semigroup checks.
  std::size_t small_monoid_count = 20;
  /// Window side per coordinate; the last entry repeats for higher s.
  std::vector<std::int64_t> window = {8};
  std::int64_t gap_window = 6;
  std::int64_t heredity_window = 6;
  std::int64_t cycle_min = 3;
  std::int64_t cycle_max = 5;
  /// Include the diagonal monoid as a non-conductor control.
  bool negative = true;
  std::int64_t transfer_window = 6;
  int max_length = 7;
  /// Re-derive every enumerated factorization set with the reference engine.
  bool self_check = false;
  /// Elements of the window sweeps are enumerated exactly when |Z| stays
  /// below this many factorizations.
  std::uint64_t exact_limit = 200;
};

/// Outcome of the engine cross-checks run alongside a suite.
struct EngineTally {
  std::uint64_t sets = 0;
  std::uint64_t factorizations = 0;
  std::uint64_t pairs = 0;
  std::uint64_t triples = 0;
  std::uint64_t bottlenecks = 0;
  std::uint64_t checks = 0;
  std::string failure;

  bool ok() const { return failure.empty(); }
  void merge(const EngineTally& other);
};

struct SuiteResult {
  std::string name;
  std::string alias;
  bool passed = false;
  std::uint64_t assertions = 0;
  std::string counterexample;
  std::map<std::string, std::uint64_t> counters;
  std::vector<std::string> notes;
  EngineTally engine;
  double seconds = 0;
};

struct SuiteInfo {
  std::string name;
  std::string alias;
  std::string summary;
};

/// Every runnable suite in acceptance order.
const std::vector<SuiteInfo>& suite_catalog();
/// Names of the suites selected by a suite name, an alias, a group alias
/// ("cor5.3", "thm5.5") or "all". Empty when nothing matches.
std::vector<std::string> resolve_suite(std::string_view name);
/// Runs one suite by descriptive name or alias. BadParameters when unknown.
SuiteResult run_suite(std::string_view name, const SuiteOptions& options = {});

/// `count` ideal-extension monoids with s cycling through 1, 2, 3 and
/// generator coordinates in [0, 4], drawn from a fixed-seed generator.
std::vector<IdealExtensionMonoid> random_monoids(std::size_t count, std::uint64_t seed);

/// Cross-checks one factorization set: reference enumeration, products,
/// metric axioms, the distance lower bounds and agreement of the three
/// bottleneck algorithms. Failures are recorded in the tally.
void engine_self_check(const FactorizationSet& set, EngineTally& tally, std::uint64_t seed,
                       const Budget& budget = {});

}  // namespace condmon

#endif  // CONDMON_VERIFY_HPP
