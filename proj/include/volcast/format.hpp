#pragma once

#include <string>

namespace volcast {

// Shortest decimal encoding that round-trips the double bit-exactly
// (std::to_chars). All serialized numerics go through this.
std::string format_double(double value);

// Strict double parse of a whole token. Throws ValidationError on
// trailing garbage, empty input, or non-finite values unless
// `allow_nonfinite` is set.
double parse_double(const std::string& token, const std::string& context);

}  // namespace volcast
