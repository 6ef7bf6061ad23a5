#include "condmon/cli/spec.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "condmon/constructions.hpp"
#include "condmon/errors.hpp"

namespace condmon::cli {

using nlohmann::json;

std::string_view to_string(SpecKind kind) {
  switch (kind) {
    case SpecKind::kIdealExtension: return "ideal_extension";
    case SpecKind::kZeroSum: return "zero_sum";
    case SpecKind::kLabeledPrimes: return "labeled_primes";
  }
  return "unknown";
}

namespace {

void reject_unknown(const json& j, std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw SpecError("unknown key '" + key + "'");
    }
  }
}

template <typename T>
T get(const json& j, const std::string& key) {
  if (!j.contains(key)) throw SpecError("missing key '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw SpecError("key '" + key + "' has the wrong type");
  }
}

std::int64_t get_int(const json& j, const std::string& key) {
  if (!j.contains(key) || !j.at(key).is_number_integer()) {
    throw SpecError("key '" + key + "' must be an integer");
  }
  return j.at(key).get<std::int64_t>();
}

Budget parse_budget(const json& j, Budget budget, std::optional<std::vector<std::int64_t>>& window) {
  if (!j.is_object()) throw SpecError("'budget' must be an object");
  reject_unknown(j, {"factorization_cap", "enumeration_cap", "length_cap", "sequence_length_cap", "window"});
  const auto positive = [&](const char* key) {
    const auto v = get_int(j, key);
    if (v < 1) throw SpecError(std::string("budget '") + key + "' must be positive");
    return v;
  };
  if (j.contains("factorization_cap")) budget.factorization_cap = static_cast<std::uint64_t>(positive("factorization_cap"));
  if (j.contains("enumeration_cap")) budget.enumeration_cap = static_cast<std::uint64_t>(positive("enumeration_cap"));
  if (j.contains("length_cap")) budget.length_cap = positive("length_cap");
  if (j.contains("sequence_length_cap")) budget.sequence_length_cap = positive("sequence_length_cap");
  if (j.contains("window")) {
    auto w = get<std::vector<std::int64_t>>(j, "window");
    for (auto x : w) {
      if (x < 0) throw SpecError("window entries must be non-negative");
    }
    window = std::move(w);
  }
  return budget;
}

std::string infer_kind(const json& j) {
  if (j.contains("kind")) return get<std::string>(j, "kind");
  if (j.contains("construction")) return "construction";
  if (j.contains("generators")) return "ideal_extension";
  if (j.contains("primes")) return "labeled_primes";
  if (j.contains("group")) return "zero_sum";
  throw SpecError("cannot tell the spec kind; set 'kind'");
}

std::vector<GroupElement> parse_support(const FiniteAbelianGroup& g, const json& j) {
  std::vector<GroupElement> out;
  for (const auto& text : get<std::vector<std::string>>(j, "support")) {
    out.push_back(parse_group_element(g, text));
  }
  return out;
}

json sequence_spec(const ZeroSumContext& ctx, const std::vector<std::string>& elements) {
  json out;
  out["kind"] = "zero_sum";
  out["group"] = ctx.group().to_string();
  json support = json::array();
  for (const auto& g : ctx.support()) support.push_back(to_string(g));
  out["support"] = support;
  if (!elements.empty()) out["elements"] = elements;
  return out;
}

json monoid_spec(const IdealExtensionMonoid& h, const std::vector<std::string>& elements) {
  json out;
  out["kind"] = "ideal_extension";
  out["s"] = h.dimension();
  json gens = json::array();
  for (const auto& g : h.generators()) gens.push_back(std::vector<std::int64_t>(g.coords().begin(), g.coords().end()));
  out["generators"] = gens;
  if (h.has_unit_group()) out["unit_group"] = h.unit_group().to_string();
  if (!elements.empty()) out["elements"] = elements;
  return out;
}

LoadedSpec load_ideal(const json& j) {
  reject_unknown(j, {"kind", "s", "generators", "unit_group", "elements", "budget"});
  const auto s = get_int(j, "s");
  if (s < 1) throw SpecError("'s' must be at least 1");
  std::vector<ExponentVector> gens;
  for (const auto& g : get<std::vector<std::vector<std::int64_t>>>(j, "generators")) {
    if (g.size() != static_cast<std::size_t>(s)) {
      throw SpecError("generator " + to_string(ExponentVector(g)) + " does not have " + std::to_string(s) + " coordinates");
    }
    for (auto c : g) {
      if (c < 0) throw SpecError("generator " + to_string(ExponentVector(g)) + " has a negative coordinate");
    }
    gens.emplace_back(g);
  }
  std::optional<FiniteAbelianGroup> units;
  if (j.contains("unit_group")) units = parse_group(get<std::string>(j, "unit_group"));
  LoadedSpec out;
  out.kind = SpecKind::kIdealExtension;
  auto h = std::make_shared<const IdealExtensionMonoid>(static_cast<std::size_t>(s), gens, units);
  out.ideal = h;
  out.oracle = h;
  return out;
}

LoadedSpec load_zero_sum(const json& j) {
  reject_unknown(j, {"kind", "group", "support", "elements", "budget"});
  const auto g = parse_group(get<std::string>(j, "group"));
  LoadedSpec out;
  out.kind = SpecKind::kZeroSum;
  out.context = j.contains("support") ? ZeroSumContext(g, parse_support(g, j)) : ZeroSumContext::full(g);
  return out;
}

LoadedSpec load_primes(const json& j) {
  reject_unknown(j, {"kind", "group", "primes", "support", "elements", "budget"});
  const auto g = parse_group(get<std::string>(j, "group"));
  std::map<std::string, GroupElement> labels;
  for (const auto& [name, text] : get<std::map<std::string, std::string>>(j, "primes")) {
    if (name.empty() || name == "1" || name.find_first_of("*^ ") != std::string::npos) {
      throw SpecError("invalid prime name '" + name + "'");
    }
    labels.emplace(name, parse_group_element(g, text));
  }
  if (labels.empty()) throw SpecError("'primes' must not be empty");
  std::optional<std::vector<GroupElement>> support;
  if (j.contains("support")) support = parse_support(g, j);
  LoadedSpec out;
  out.kind = SpecKind::kLabeledPrimes;
  out.primes.emplace(g, std::move(labels), std::move(support));
  return out;
}

}  // namespace

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    throw InputError("malformed JSON in " + path + ": " + e.what());
  }
}

json resolve_construction(const json& j, const Budget& budget) {
  if (!j.is_object()) throw SpecError("a construction must be an object");
  const auto family = get<std::string>(j, "construction");
  std::vector<std::string> elements;
  if (j.contains("elements")) elements = get<std::vector<std::string>>(j, "elements");
  try {
    if (family == "deep_hole") {
      reject_unknown(j, {"kind", "construction", "s", "alpha", "elements", "budget"});
      return monoid_spec(deep_hole_monoid(static_cast<std::size_t>(get_int(j, "s")), get_int(j, "alpha")), elements);
    }
    if (family == "power_primary") {
      reject_unknown(j, {"kind", "construction", "alphas", "unit_group", "elements", "budget"});
      std::optional<FiniteAbelianGroup> units;
      if (j.contains("unit_group")) units = parse_group(get<std::string>(j, "unit_group"));
      return monoid_spec(power_primary_monoid(ExponentVector(get<std::vector<std::int64_t>>(j, "alphas")), units), elements);
    }
    if (family == "cycle") {
      reject_unknown(j, {"kind", "construction", "m", "elements", "budget"});
      const auto m = get_int(j, "m");
      const auto h = cycle_monoid(m);
      if (elements.empty()) elements.push_back(to_string(cycle_all_ones(m)));
      return monoid_spec(h, elements);
    }
    if (family == "interval_sequence") {
      reject_unknown(j, {"kind", "construction", "group", "k", "l", "budget"});
      const auto g = parse_group(get<std::string>(j, "group"));
      const auto seq = interval_sequence(g, static_cast<int>(get_int(j, "k")), static_cast<int>(get_int(j, "l")), true, budget);
      std::vector<GroupElement> support;
      for (const auto& [e, k] : seq.sequence.multiplicities()) support.push_back(e);
      return sequence_spec(ZeroSumContext(g, support), {to_string(seq.sequence)});
    }
    if (family == "equal_catenary") {
      reject_unknown(j, {"kind", "construction", "n", "mode", "p", "order", "budget"});
      const auto mode_name = j.contains("mode") ? get<std::string>(j, "mode") : std::string("bounded_exponent");
      EqualCatenaryMode mode;
      if (mode_name == "bounded_exponent") {
        mode = EqualCatenaryMode::kBoundedExponent;
      } else if (mode_name == "large_order") {
        mode = EqualCatenaryMode::kLargeOrder;
      } else {
        throw SpecError("unknown mode '" + mode_name + "'");
      }
      EqualCatenaryParams params;
      if (j.contains("p")) params.p = get_int(j, "p");
      if (j.contains("order")) params.order = get_int(j, "order");
      const auto inst = equal_catenary_instance(static_cast<int>(get_int(j, "n")), mode, params, true, budget);
      return sequence_spec(inst.context, {to_string(inst.element)});
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kBudgetExceeded || e.kind() == ErrorKind::kWindowTooLarge ||
        e.kind() == ErrorKind::kVerificationFailed) {
      throw;
    }
    throw SpecError(e.what());
  }
  throw SpecError("unknown construction '" + family + "'");
}

LoadedSpec load_spec(const json& j, const Budget& base, double scale) {
  if (!j.is_object()) throw SpecError("a spec must be a JSON object");
  Budget budget = base;
  std::optional<std::vector<std::int64_t>> window;
  if (j.contains("budget")) budget = parse_budget(j.at("budget"), base, window);
  if (scale != 1.0) budget = budget.scaled(scale);
  const auto kind = infer_kind(j);
  if (kind == "construction") {
    auto resolved = resolve_construction(j, budget);
    if (j.contains("budget")) resolved["budget"] = j.at("budget");
    return load_spec(resolved, base, scale);
  }
  LoadedSpec out;
  try {
    if (kind == "ideal_extension") {
      out = load_ideal(j);
    } else if (kind == "zero_sum") {
      out = load_zero_sum(j);
      out.oracle = std::make_shared<const PredicateMonoid>(iota_monoid(*out.context, budget));
    } else if (kind == "labeled_primes") {
      out = load_primes(j);
      out.oracle = std::make_shared<const PredicateMonoid>(phi_monoid(*out.primes, budget));
    } else {
      throw SpecError("unknown kind '" + kind + "'");
    }
  } catch (const Error& e) {
    throw SpecError(e.what());
  }
  out.budget = budget;
  if (j.contains("elements")) out.elements = get<std::vector<std::string>>(j, "elements");
  const auto d = out.oracle->dimension();
  if (window) {
    if (window->size() != 1 && window->size() != d) {
      throw SpecError("window has " + std::to_string(window->size()) + " entries, the monoid has dimension " + std::to_string(d));
    }
    std::vector<std::int64_t> upper(d);
    for (std::size_t i = 0; i < d; ++i) upper[i] = (*window)[std::min(i, window->size() - 1)];
    out.window = ExponentVector(std::move(upper));
  }
  for (const auto& e : out.elements) {
    try {
      (void)out.parse_element(e);
    } catch (const Error& err) {
      throw SpecError("element '" + e + "': " + err.what());
    }
  }

  switch (out.kind) {
    case SpecKind::kIdealExtension: out.canonical = monoid_spec(*out.ideal, out.elements); break;
    case SpecKind::kZeroSum: out.canonical = sequence_spec(*out.context, out.elements); break;
    case SpecKind::kLabeledPrimes: {
      json c;
      c["kind"] = "labeled_primes";
      c["group"] = out.primes->group().to_string();
      json primes = json::object();
      for (std::size_t i = 0; i < out.primes->prime_count(); ++i) {
        primes[out.primes->names()[i]] = to_string(out.primes->labels()[i]);
      }
      c["primes"] = primes;
      json support = json::array();
      for (const auto& g : out.primes->context().support()) support.push_back(to_string(g));
      c["support"] = support;
      if (!out.elements.empty()) c["elements"] = out.elements;
      out.canonical = c;
      break;
    }
  }
  if (j.contains("budget")) out.canonical["budget"] = j.at("budget");
  return out;
}

MonoidElement LoadedSpec::parse_element(std::string_view text) const {
  const auto trimmed = [](std::string_view t) {
    while (!t.empty() && t.front() == ' ') t.remove_prefix(1);
    while (!t.empty() && t.back() == ' ') t.remove_suffix(1);
    return t;
  };
  text = trimmed(text);
  switch (kind) {
    case SpecKind::kIdealExtension: {
      if (text == "1") return oracle->identity();
      const auto bar = text.find('|');
      if (bar == std::string_view::npos) return oracle->make(parse_vector(text));
      const auto units = oracle->unit_group();
      return MonoidElement{parse_group_element(units, trimmed(text.substr(0, bar))),
                           parse_vector(trimmed(text.substr(bar + 1)))};
    }
    case SpecKind::kZeroSum:
      return oracle->make(context->to_vector(parse_sequence(context->group(), text)));
    case SpecKind::kLabeledPrimes:
      return oracle->make(parse_prime_product(*primes, text));
  }
  fail(ErrorKind::kParse, "unknown spec kind");
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace condmon::cli
