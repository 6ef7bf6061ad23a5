#ifndef CONDMON_CLI_SPEC_HPP
#define CONDMON_CLI_SPEC_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "condmon/budget.hpp"
#include "condmon/factor.hpp"
#include "condmon/ideal_extension.hpp"
#include "condmon/zerosum.hpp"

namespace condmon::cli {

/// A spec that parses but breaks a schema rule or a monoid invariant.
class SpecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An unreadable file or malformed JSON.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SpecKind { kIdealExtension, kZeroSum, kLabeledPrimes };

std::string_view to_string(SpecKind kind);

/// A validated spec file: the monoid as an oracle plus element parsing.
struct LoadedSpec {
  SpecKind kind = SpecKind::kIdealExtension;
  std::shared_ptr<const AtomicOracle> oracle;
  std::shared_ptr<const IdealExtensionMonoid> ideal;
  std::optional<ZeroSumContext> context;
  std::optional<LabeledPrimes> primes;
  /// Elements named in the spec, used when a command gets none.
  std::vector<std::string> elements;
  Budget budget;
  std::optional<ExponentVector> window;
  /// The spec in resolved form; constructions are expanded.
  nlohmann::json canonical;

  MonoidElement parse_element(std::string_view text) const;
  std::string format(const MonoidElement& x) const { return oracle->format(x); }
};

nlohmann::json read_json_file(const std::string& path);
/// Validates and resolves a spec. SpecError on any schema or invariant
/// violation; unknown keys are rejected. Budget keys in the spec override
/// `base`, and every cap is then multiplied by `scale`.
LoadedSpec load_spec(const nlohmann::json& spec, const Budget& base = {}, double scale = 1.0);

/// Resolved spec JSON for a construction family given as a JSON object of
/// parameters, e.g. {"construction": "cycle", "m": 3}.
nlohmann::json resolve_construction(const nlohmann::json& params, const Budget& budget = {});

/// 64-bit FNV-1a, rendered as 16 hex digits.
std::string fnv1a_hex(std::string_view bytes);

}  // namespace condmon::cli

#endif  // CONDMON_CLI_SPEC_HPP
