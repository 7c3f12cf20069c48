#ifndef TDPSA_NUMFMT_HPP
#define TDPSA_NUMFMT_HPP

#include <cmath>
#include <cstdio>
#include <string>

namespace tdpsa {

// 17 significant digits, locale-independent; "inf"/"-inf" for infinities.
inline std::string fmt17(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace tdpsa

#endif
