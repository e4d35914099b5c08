#ifndef POLYCONF_VERSION_HPP
#define POLYCONF_VERSION_HPP

namespace polyconf {

inline constexpr const char* kVersion = "0.1.0";

} // namespace polyconf

#endif
