#pragma once

#include <string>
#include <string_view>

namespace olens {

// Shortest decimal that round-trips the exact double (to_chars default).
std::string format_double(double value);

// Strict full-string parse; rejects trailing junk. Returns false on failure.
bool parse_double(std::string_view text, double& out);

bool parse_u64(std::string_view text, unsigned long long& out);

}  // namespace olens
