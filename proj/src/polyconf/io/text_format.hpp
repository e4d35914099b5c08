#ifndef POLYCONF_IO_TEXT_FORMAT_HPP
#define POLYCONF_IO_TEXT_FORMAT_HPP

#include <cstdio>
#include <string>

namespace polyconf::io {

// Decimal serialization used by every file format: 12 significant digits,
// enough to reproduce coordinates well below the 1e-9 A contracts while
// keeping fixtures diff-able.
inline std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

// Value-level rounding to the serialized precision.
inline double round_real(double v) {
    return std::strtod(format_real(v).c_str(), nullptr);
}

} // namespace polyconf::io

#endif
