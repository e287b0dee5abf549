#pragma once

// Symbolic scalar parameters such as "sqrt(12)", "pi/2" or "4*pi".

#include <map>
#include <string>
#include <string_view>

namespace floq::cli {

// Grammar: expr := term {(+|-) term}; term := unary {(*|/) unary};
// unary := - unary | primary; primary := number | pi | inf | sqrt(expr) | (expr).
double parse_scalar(std::string_view text);

// "V=sqrt(12),tau=pi/2" -> {V: "sqrt(12)", tau: "pi/2"}. Commas inside
// parentheses do not split.
std::map<std::string, std::string> split_params(std::string_view text);

}  // namespace floq::cli
