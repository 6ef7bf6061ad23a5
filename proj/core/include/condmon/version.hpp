#ifndef CONDMON_VERSION_HPP
#define CONDMON_VERSION_HPP

namespace condmon {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace condmon

#endif  // CONDMON_VERSION_HPP
