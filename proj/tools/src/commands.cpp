#include "condmon/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "condmon/cli/spec.hpp"
#include "condmon/errors.hpp"
#include "condmon/factor.hpp"
#include "condmon/verify.hpp"
#include "condmon/version.hpp"
#include "condmon/zerosum.hpp"

namespace condmon::cli {

using nlohmann::json;

namespace {

constexpr const char* kTool = "condmon";

struct GlobalOptions {
  std::optional<std::uint64_t> factorization_cap;
  std::optional<std::uint64_t> enumeration_cap;
  std::optional<std::int64_t> length_cap;
  std::optional<std::int64_t> sequence_length_cap;
};

int exit_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kBudgetExceeded:
    case ErrorKind::kWindowTooLarge:
      return kExitBudget;
    case ErrorKind::kVerificationFailed:
    case ErrorKind::kBoundAttained:
      return kExitAssertion;
    default:
      return kExitSpec;
  }
}

bool is_budget(const Error& e) { return exit_for(e.kind()) == kExitBudget; }

json error_json(const Error& e) {
  return {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}, {"progress", e.progress()}};
}

double budget_scale() {
  const char* raw = std::getenv("CONDMON_BUDGET_SCALE");
  if (raw == nullptr || *raw == '\0') return 1.0;
  char* end = nullptr;
  const double v = std::strtod(raw, &end);
  if (end == raw || *end != '\0' || !std::isfinite(v) || v <= 0) {
    throw SpecError(std::string("CONDMON_BUDGET_SCALE must be a positive number, got '") + raw + "'");
  }
  return v;
}

Budget base_budget(const GlobalOptions& g) {
  Budget b;
  if (g.factorization_cap) b.factorization_cap = *g.factorization_cap;
  if (g.enumeration_cap) b.enumeration_cap = *g.enumeration_cap;
  if (g.length_cap) b.length_cap = *g.length_cap;
  if (g.sequence_length_cap) b.sequence_length_cap = *g.sequence_length_cap;
  return b;
}

LoadedSpec load(const std::string& path, const GlobalOptions& g) {
  return load_spec(read_json_file(path), base_budget(g), budget_scale());
}

json header(const LoadedSpec& spec) {
  return {{"tool", kTool}, {"version", kVersion}, {"input_digest", fnv1a_hex(spec.canonical.dump())}};
}

void emit(std::ostream& out, const json& doc) { out << doc.dump(2) << '\n'; }

json report_json(const InvariantReport& r, const std::string& element) {
  return {{"element", element}, {"Z_count", r.z_count}, {"L", r.lengths}, {"c", r.c},
          {"c_eq", r.c_eq},     {"c_adj", r.c_adj},     {"c_mon", r.c_mon}, {"flags", r.flags}};
}

MonoidElement parse_in(const LoadedSpec& spec, const std::string& text) {
  try {
    return spec.parse_element(text);
  } catch (const Error& e) {
    throw SpecError("element '" + text + "': " + e.what());
  }
}

/// "5,5", "(5,5)" or a single side; empty text is the empty window.
std::optional<std::vector<std::int64_t>> parse_sides(std::string text) {
  text.erase(std::remove_if(text.begin(), text.end(), [](char c) { return c == '(' || c == ')' || c == ' '; }),
             text.end());
  if (text.empty()) return std::nullopt;
  std::vector<std::int64_t> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = std::min(text.find(',', pos), text.size());
    const auto item = text.substr(pos, comma - pos);
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (item.empty() || used != item.size() || v < 0) throw SpecError("bad window entry '" + item + "'");
    out.push_back(v);
    pos = comma + 1;
  }
  return out;
}

ExponentVector fit_window(const std::vector<std::int64_t>& sides, std::size_t d) {
  if (sides.size() != 1 && sides.size() != d) {
    throw SpecError("window has " + std::to_string(sides.size()) + " entries, the monoid has dimension " +
                    std::to_string(d));
  }
  std::vector<std::int64_t> upper(d);
  for (std::size_t i = 0; i < d; ++i) upper[i] = sides[std::min(i, sides.size() - 1)];
  return ExponentVector(std::move(upper));
}

// ----------------------------------------------------------------- commands

int cmd_validate(const std::string& path, const GlobalOptions& g, std::ostream& out) {
  const auto spec = load(path, g);
  auto doc = header(spec);
  doc["valid"] = true;
  doc["kind"] = std::string(to_string(spec.kind));
  emit(out, doc);
  return kExitOk;
}

int cmd_invariants(const std::string& path, std::vector<std::string> elements, const GlobalOptions& g,
                   std::ostream& out, std::ostream& err) {
  const auto spec = load(path, g);
  if (elements.empty()) elements = spec.elements;
  if (elements.empty()) throw SpecError("no element given and the spec lists none");
  auto doc = header(spec);
  doc["reports"] = json::array();
  for (const auto& text : elements) {
    const auto x = parse_in(spec, text);
    try {
      const auto set = factorizations(*spec.oracle, x, spec.budget);
      doc["reports"].push_back(report_json(invariants(set, spec.budget), spec.format(x)));
    } catch (const Error& e) {
      if (!is_budget(e)) throw;
      doc["error"] = error_json(e);
      doc["error"]["element"] = spec.format(x);
      emit(out, doc);
      err << kTool << ": " << e.what() << '\n';
      return kExitBudget;
    }
  }
  emit(out, doc);
  return kExitOk;
}

std::string csv_row(const json& row) {
  const auto join = [](const json& values, char sep) {
    std::string s;
    for (const auto& v : values) {
      if (!s.empty()) s += sep;
      s += v.is_string() ? v.get<std::string>() : v.dump();
    }
    return s;
  };
  const auto quoted = [](const std::string& s) {
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + "\"";
  };
  std::string line = quoted(row.at("element").get<std::string>());
  if (row.contains("error")) {
    line += ",,,,,,,," + quoted(row.at("error").at("kind").get<std::string>());
    return line;
  }
  line += "," + row.at("Z_count").dump() + "," + quoted(join(row.at("L"), ' '));
  for (const char* key : {"c", "c_eq", "c_adj", "c_mon"}) line += "," + row.at(key).dump();
  line += "," + quoted(join(row.at("flags"), ';')) + ",";
  return line;
}

int cmd_survey(const std::string& path, const std::optional<std::string>& window_text, const std::string& format,
               const GlobalOptions& g, std::ostream& out) {
  if (format != "json" && format != "csv") throw SpecError("unknown format '" + format + "'");
  const auto spec = load(path, g);
  const auto d = spec.oracle->dimension();

  std::optional<ExponentVector> upper;
  if (window_text) {
    if (const auto sides = parse_sides(*window_text)) upper = fit_window(*sides, d);
  } else {
    upper = spec.window ? *spec.window : fit_window({8}, d);
  }

  json rows = json::array();
  json summary = {{"rows", 0},  {"errors", 0},   {"max_c", 0},    {"max_c_eq", 0},
                  {"max_c_adj", 0}, {"max_c_mon", 0}, {"interval", 0}, {"non_interval", 0}};
  if (upper) {
    const auto lattice = std::make_shared<const ElementLattice>(*spec.oracle, spec.oracle->make(*upper), spec.budget);
    std::vector<std::pair<MonoidElement, std::size_t>> members;
    for (std::size_t id = 0; id < lattice->size(); ++id) {
      if (lattice->member(id)) members.emplace_back(lattice->element(id), id);
    }
    std::sort(members.begin(), members.end());
    for (const auto& [x, id] : members) {
      const auto text = spec.format(x);
      try {
        const auto set = factorizations(lattice, id, spec.budget);
        const auto r = invariants(set, spec.budget);
        rows.push_back(report_json(r, text));
        for (const auto& [key, value] : {std::pair{"max_c", r.c}, std::pair{"max_c_eq", r.c_eq},
                                         std::pair{"max_c_adj", r.c_adj}, std::pair{"max_c_mon", r.c_mon}}) {
          summary[key] = std::max(summary[key].get<int>(), value);
        }
        const bool interval = LengthSet::from(r.lengths).is_interval();
        auto& tally = summary[interval ? "interval" : "non_interval"];
        tally = tally.get<int>() + 1;
      } catch (const Error& e) {
        if (!is_budget(e)) throw;
        rows.push_back({{"element", text}, {"error", error_json(e)}});
        summary["errors"] = summary["errors"].get<int>() + 1;
      }
    }
  }
  summary["rows"] = rows.size();

  if (format == "csv") {
    out << "element,Z_count,L,c,c_eq,c_adj,c_mon,flags,error\n";
    for (const auto& row : rows) out << csv_row(row) << '\n';
    if (!rows.empty()) {
      out << "summary," << summary["rows"] << ",," << summary["max_c"] << ',' << summary["max_c_eq"] << ','
          << summary["max_c_adj"] << ',' << summary["max_c_mon"] << ",\"interval=" << summary["interval"]
          << ";non_interval=" << summary["non_interval"] << "\"," << summary["errors"] << '\n';
    }
    return kExitOk;
  }
  auto doc = header(spec);
  doc["window"] = upper ? json(std::vector<std::int64_t>(upper->coords().begin(), upper->coords().end()))
                        : json::array();
  doc["rows"] = rows;
  doc["summary"] = summary;
  emit(out, doc);
  return kExitOk;
}

struct VerifyArgs {
  std::string suite;
  std::optional<std::string> window;
  std::string families = "default";
  std::optional<std::string> m_range;
  bool negative = false;
  bool no_negative = false;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> count;
  std::optional<std::size_t> small_count;
  std::optional<std::uint64_t> exact_limit;
  bool self_check = false;
  bool timing = false;
};

json suite_json(const SuiteResult& r, bool timing) {
  json j = {{"name", r.name},
            {"alias", r.alias},
            {"passed", r.passed},
            {"assertions", r.assertions},
            {"counters", r.counters},
            {"notes", r.notes}};
  if (!r.counterexample.empty()) j["counterexample"] = r.counterexample;
  if (r.engine.checks > 0 || !r.engine.ok()) {
    j["engine"] = {{"sets", r.engine.sets},         {"factorizations", r.engine.factorizations},
                   {"pairs", r.engine.pairs},       {"triples", r.engine.triples},
                   {"bottlenecks", r.engine.bottlenecks}, {"checks", r.engine.checks},
                   {"ok", r.engine.ok()}};
    if (!r.engine.ok()) j["engine"]["failure"] = r.engine.failure;
  }
  if (timing) j["seconds"] = r.seconds;
  return j;
}

int cmd_verify(const VerifyArgs& a, const GlobalOptions& g, std::ostream& out, std::ostream& err) {
  const auto names = resolve_suite(a.suite);
  if (names.empty()) throw SpecError("unknown suite '" + a.suite + "'");
  if (a.families != "default") throw SpecError("unknown family set '" + a.families + "'");
  if (a.negative && a.no_negative) throw SpecError("--negative and --no-negative conflict");

  SuiteOptions o;
  o.budget = base_budget(g).scaled(budget_scale());
  if (a.window) {
    const auto sides = parse_sides(*a.window);
    if (!sides) throw SpecError("empty window");
    o.window = *sides;
    o.gap_window = (*sides)[0];
  }
  if (a.m_range) {
    const auto dots = a.m_range->find("..");
    try {
      if (dots == std::string::npos) {
        o.cycle_min = o.cycle_max = std::stoll(*a.m_range);
      } else {
        o.cycle_min = std::stoll(a.m_range->substr(0, dots));
        o.cycle_max = std::stoll(a.m_range->substr(dots + 2));
      }
    } catch (const std::exception&) {
      throw SpecError("bad range '" + *a.m_range + "'");
    }
    if (o.cycle_min < 2 || o.cycle_max < o.cycle_min) throw SpecError("bad range '" + *a.m_range + "'");
  }
  if (a.no_negative) o.negative = false;
  if (a.negative) o.negative = true;
  if (a.seed) o.seed = *a.seed;
  if (a.count) o.monoid_count = *a.count;
  if (a.small_count) o.small_monoid_count = *a.small_count;
  if (a.exact_limit) o.exact_limit = *a.exact_limit;
  o.self_check = a.self_check;

  json doc = {{"tool", kTool}, {"version", kVersion}, {"suite", a.suite}, {"results", json::array()}};
  bool all = true;
  for (const auto& name : names) {
    try {
      const auto r = run_suite(name, o);
      doc["results"].push_back(suite_json(r, a.timing));
      if (!r.passed) {
        all = false;
        err << kTool << ": " << r.name << " failed";
        if (!r.counterexample.empty()) err << ": " << r.counterexample;
        if (!r.engine.ok()) err << ": " << r.engine.failure;
        if (r.assertions == 0) err << ": no assertions ran";
        err << '\n';
      }
    } catch (const Error& e) {
      if (!is_budget(e)) throw;
      doc["passed"] = false;
      doc["error"] = error_json(e);
      doc["error"]["suite"] = name;
      emit(out, doc);
      err << kTool << ": " << e.what() << '\n';
      return kExitBudget;
    }
  }
  doc["passed"] = all;
  emit(out, doc);
  return all ? kExitOk : kExitAssertion;
}

int cmd_construct(std::string family, const std::string& params_text, const json& flags, const GlobalOptions& g,
                  std::ostream& out) {
  std::replace(family.begin(), family.end(), '-', '_');
  json params = json::object();
  if (!params_text.empty()) {
    try {
      params = json::parse(params_text);
    } catch (const json::parse_error& e) {
      throw SpecError(std::string("--params is not JSON: ") + e.what());
    }
    if (!params.is_object()) throw SpecError("--params must be a JSON object");
  }
  params.update(flags);
  params["construction"] = family;
  const auto budget = base_budget(g).scaled(budget_scale());
  const auto resolved = resolve_construction(params, budget);
  (void)load_spec(resolved, budget);
  emit(out, resolved);
  return kExitOk;
}

int cmd_davenport(const std::string& group_text, const std::vector<std::string>& support_text, bool cross_check,
                  const GlobalOptions& g, std::ostream& out, std::ostream& err) {
  const auto budget = base_budget(g).scaled(budget_scale());
  std::optional<ZeroSumContext> ctx;
  try {
    const auto group = parse_group(group_text);
    if (support_text.empty()) {
      ctx = ZeroSumContext::full(group);
    } else {
      std::vector<GroupElement> support;
      for (const auto& t : support_text) support.push_back(parse_group_element(group, t));
      ctx.emplace(group, std::move(support));
    }
  } catch (const Error& e) {
    throw SpecError(e.what());
  }
  json doc = {{"tool", kTool}, {"version", kVersion}, {"group", ctx->group().to_string()}};
  json support = json::array();
  for (const auto& s : ctx->support()) support.push_back(to_string(s));
  doc["support"] = support;
  const auto d = davenport(*ctx, budget);
  doc["davenport"] = d;
  doc["max_zero_sum_free_length"] = max_zero_sum_free_length(*ctx, budget);
  int code = kExitOk;
  if (cross_check) {
    const auto brute = davenport_by_enumeration(*ctx, budget);
    doc["davenport_by_enumeration"] = brute;
    if (brute != d) {
      err << kTool << ": search gives " << d << ", enumeration gives " << brute << '\n';
      code = kExitAssertion;
    }
  }
  emit(out, doc);
  return code;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Factorization invariants of conductor and zero-sum monoids", kTool};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  GlobalOptions g;
  app.add_option("--factorization-cap", g.factorization_cap, "Most factorizations enumerated per element")
      ->check(CLI::PositiveNumber);
  app.add_option("--enumeration-cap", g.enumeration_cap, "Most box points or group elements listed")
      ->check(CLI::PositiveNumber);
  app.add_option("--length-cap", g.length_cap, "Longest vector for exhaustive atom tests")->check(CLI::PositiveNumber);
  app.add_option("--sequence-length-cap", g.sequence_length_cap, "Longest sequence for zero-sum searches")
      ->check(CLI::PositiveNumber);

  std::string spec_path;
  auto* validate = app.add_subcommand("validate", "Check a spec file");
  validate->add_option("spec", spec_path, "Spec file")->required();

  std::vector<std::string> elements;
  auto* inv = app.add_subcommand("invariants", "Factorization invariants of elements");
  inv->add_option("spec", spec_path, "Spec file")->required();
  inv->add_option("elements", elements, "Elements; defaults to those listed in the spec");

  std::optional<std::string> window;
  std::string format = "json";
  auto* survey = app.add_subcommand("survey", "Invariants of every member of a window");
  survey->add_option("spec", spec_path, "Spec file")->required();
  survey->add_option("--window", window, "Upper corner, e.g. 5,5");
  survey->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite", va.suite, "Suite name, alias or 'all'")->required();
  verify->add_option("--window", va.window, "Window side(s) for the sweeps");
  verify->add_option("--families", va.families, "Monoid families; only 'default'");
  verify->add_option("--m", va.m_range, "Cycle sizes, e.g. 3..5");
  verify->add_flag("--negative", va.negative, "Include the non-conductor control");
  verify->add_flag("--no-negative", va.no_negative, "Skip the non-conductor control");
  verify->add_option("--seed", va.seed, "Seed for the random monoids");
  verify->add_option("--count", va.count, "Random monoids in the sweeps");
  verify->add_option("--small-count", va.small_count, "Random monoids in the structural checks");
  verify->add_option("--exact-limit", va.exact_limit, "Enumerate sweep elements below this |Z|");
  verify->add_flag("--self-check", va.self_check, "Cross-check every factorization set");
  verify->add_flag("--timing", va.timing, "Report wall-clock seconds per suite");

  std::string family;
  std::string params_text;
  std::optional<std::int64_t> c_s, c_alpha, c_m, c_k, c_l, c_n, c_p, c_order;
  std::optional<std::string> c_alphas, c_units, c_group, c_mode;
  auto* construct = app.add_subcommand("construct", "Emit the spec of a construction");
  construct->add_option("family", family, "deep_hole, power_primary, cycle, interval_sequence or equal_catenary")
      ->required();
  construct->add_option("--params", params_text, "Parameters as a JSON object");
  construct->add_option("--s", c_s, "Dimension");
  construct->add_option("--alpha", c_alpha, "Exponent bound");
  construct->add_option("--alphas", c_alphas, "Exponent vector, e.g. 2,2");
  construct->add_option("--unit-group", c_units, "Unit group, e.g. C2");
  construct->add_option("--m", c_m, "Cycle size");
  construct->add_option("--group", c_group, "Group, e.g. C2xC2");
  construct->add_option("--k", c_k, "Least length");
  construct->add_option("--l", c_l, "Greatest length");
  construct->add_option("--n", c_n, "Layer parameter");
  construct->add_option("--mode", c_mode, "bounded_exponent or large_order");
  construct->add_option("--p", c_p, "Prime");
  construct->add_option("--order", c_order, "Cyclic order");

  std::string group_text;
  std::vector<std::string> support_text;
  bool cross_check = false;
  auto* dav = app.add_subcommand("davenport", "Davenport constant of a group or support");
  dav->add_option("group", group_text, "Group, e.g. C2xC2")->required();
  dav->add_option("--support", support_text, "Support elements; defaults to the whole group");
  dav->add_flag("--cross-check", cross_check, "Also compute by exhaustive enumeration");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitSpec;
  }

  try {
    if (*validate) return cmd_validate(spec_path, g, out);
    if (*inv) return cmd_invariants(spec_path, elements, g, out, err);
    if (*survey) return cmd_survey(spec_path, window, format, g, out);
    if (*verify) return cmd_verify(va, g, out, err);
    if (*construct) {
      json flags = json::object();
      const auto put_int = [&](const char* key, const std::optional<std::int64_t>& v) {
        if (v) flags[key] = *v;
      };
      put_int("s", c_s);
      put_int("alpha", c_alpha);
      put_int("m", c_m);
      put_int("k", c_k);
      put_int("l", c_l);
      put_int("n", c_n);
      put_int("p", c_p);
      put_int("order", c_order);
      if (c_alphas) {
        const auto sides = parse_sides(*c_alphas);
        if (!sides) throw SpecError("empty --alphas");
        flags["alphas"] = *sides;
      }
      if (c_units) flags["unit_group"] = *c_units;
      if (c_group) flags["group"] = *c_group;
      if (c_mode) flags["mode"] = *c_mode;
      return cmd_construct(family, params_text, flags, g, out);
    }
    if (*dav) return cmd_davenport(group_text, support_text, cross_check, g, out, err);
  } catch (const SpecError& e) {
    err << kTool << ": " << e.what() << '\n';
    return kExitSpec;
  } catch (const InputError& e) {
    err << kTool << ": " << e.what() << '\n';
    return kExitInput;
  } catch (const Error& e) {
    err << kTool << ": " << e.what() << '\n';
    return exit_for(e.kind());
  }
  return kExitSpec;
}

}  // namespace condmon::cli
