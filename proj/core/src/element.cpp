#include "condmon/element.hpp"

namespace condmon {

MonoidElement combine(const MonoidElement& a, const MonoidElement& b) {
  return {a.unit + b.unit, a.vec + b.vec};
}

std::optional<MonoidElement> checked_divide(const MonoidElement& a, const MonoidElement& b) {
  auto v = checked_subtract(a.vec, b.vec);
  if (!v) return std::nullopt;
  return MonoidElement{a.unit - b.unit, std::move(*v)};
}

std::string to_string(const MonoidElement& x) {
  if (x.unit.group().is_trivial()) return to_string(x.vec);
  return to_string(x.unit) + "|" + to_string(x.vec);
}

}  // namespace condmon
