#include "floq/int128.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "floq/errors.hpp"

namespace floq {

std::string to_string(Int v) {
  if (v == 0) return "0";
  const bool negative = v < 0;
  // Unsigned magnitude so the most negative value does not overflow.
  unsigned __int128 mag = negative ? static_cast<unsigned __int128>(-(v + 1)) + 1
                                   : static_cast<unsigned __int128>(v);
  std::string digits;
  while (mag != 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(mag % 10)));
    mag /= 10;
  }
  if (negative) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

Int parse_int(std::string_view text) {
  if (text.empty()) throw InvalidInput("empty integer literal");
  bool negative = false;
  std::size_t pos = 0;
  if (text[0] == '-' || text[0] == '+') {
    negative = text[0] == '-';
    pos = 1;
  }
  if (pos == text.size()) throw InvalidInput("integer literal has no digits");
  Int value = 0;
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (c < '0' || c > '9') {
      throw InvalidInput("invalid integer literal: " + std::string(text));
    }
    value = add_checked(mul_checked(value, 10), c - '0');
  }
  return negative ? -value : value;
}

Int gcd(Int a, Int b) {
  a = abs(a);
  b = abs(b);
  while (b != 0) {
    const Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Int isqrt(Int v) {
  if (v < 0) throw std::domain_error("isqrt of a negative integer");
  if (v < 2) return v;
  // Floating seed, then exact correction in both directions.
  Int r = static_cast<Int>(std::sqrt(static_cast<long double>(v)));
  while (r > 0 && r > v / r) --r;
  while ((r + 1) <= v / (r + 1)) ++r;
  return r;
}

std::optional<Int> exact_sqrt(Int v) {
  if (v < 0) return std::nullopt;
  const Int r = isqrt(v);
  if (r * r == v) return r;
  return std::nullopt;
}

Int mul_checked(Int a, Int b) {
  Int out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("128-bit multiplication overflow");
  return out;
}

Int add_checked(Int a, Int b) {
  Int out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("128-bit addition overflow");
  return out;
}

}  // namespace floq
