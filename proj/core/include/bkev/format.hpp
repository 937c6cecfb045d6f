#pragma once

#include <string>
#include <string_view>

namespace bkev {

/// Shortest decimal string that parses back to exactly `value`; plain notation
/// for magnitudes in [1e-6, 1e17).
std::string format_number(double value);

/// Strict full-string parse of a decimal number; throws bkev::Error on junk.
double parse_number(std::string_view text);

}  // namespace bkev
