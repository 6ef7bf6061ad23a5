// Small parsing helpers shared by the literal parsers.
#ifndef CONDMON_SRC_TEXT_HPP
#define CONDMON_SRC_TEXT_HPP

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "condmon/errors.hpp"

namespace condmon::detail {

inline std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

inline std::int64_t parse_int(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    fail(ErrorKind::kParse, "expected an integer, got '" + std::string(s) + "'");
  }
  return value;
}

/// "(a,b,c)" -> {a,b,c}; "()" -> {}.
inline std::vector<std::int64_t> parse_tuple(std::string_view s) {
  s = trim(s);
  if (s.size() < 2 || s.front() != '(' || s.back() != ')') {
    fail(ErrorKind::kParse, "expected a parenthesised tuple, got '" + std::string(s) + "'");
  }
  s = trim(s.substr(1, s.size() - 2));
  std::vector<std::int64_t> out;
  if (s.empty()) return out;
  for (auto part : split(s, ',')) out.push_back(parse_int(part));
  return out;
}

inline std::string join_ints(const std::vector<std::int64_t>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  out += ')';
  return out;
}

inline std::size_t hash_combine(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace condmon::detail

#endif  // CONDMON_SRC_TEXT_HPP
