#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace floq {

// Signed 128-bit integer used by every Diophantine routine. The degree-4
// search reaches ~4e20, past the 64-bit range.
using Int = __int128;

std::string to_string(Int v);
Int parse_int(std::string_view text);

inline Int abs(Int v) { return v < 0 ? -v : v; }

Int gcd(Int a, Int b);

// Largest r >= 0 with r*r <= v. Requires v >= 0.
Int isqrt(Int v);

// Square root of v if v is a nonnegative perfect square.
std::optional<Int> exact_sqrt(Int v);

// a*b, throwing std::overflow_error if the product leaves the 127-bit range.
Int mul_checked(Int a, Int b);
Int add_checked(Int a, Int b);

}  // namespace floq
