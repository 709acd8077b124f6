#include "volcast/format.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <system_error>

#include "volcast/errors.hpp"

namespace volcast {

std::string format_double(double value) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& token, const std::string& context) {
    if (token.empty()) {
        throw ValidationError("empty numeric field at " + context);
    }
    const char* begin = token.c_str();
    char* end = nullptr;
    errno = 0;
    double value = std::strtod(begin, &end);
    if (end == begin || *end != '\0') {
        throw ValidationError("non-numeric value '" + token + "' at " + context);
    }
    if (!std::isfinite(value)) {
        throw ValidationError("non-finite value '" + token + "' at " + context);
    }
    return value;
}

}  // namespace volcast
