#include "expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>

#include "floq/errors.hpp"

namespace floq::cli {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  double run() {
    const double v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw InvalidInput("cannot parse '" + std::string(s_) + "': " + what + " at offset " +
                       std::to_string(pos_));
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool word(std::string_view w) {
    skip();
    if (s_.substr(pos_, w.size()) != w) return false;
    const std::size_t end = pos_ + w.size();
    if (end < s_.size() && std::isalnum(static_cast<unsigned char>(s_[end]))) return false;
    pos_ = end;
    return true;
  }

  double expr() {
    double v = term();
    while (true) {
      if (eat('+')) {
        v += term();
      } else if (eat('-')) {
        v -= term();
      } else {
        return v;
      }
    }
  }

  double term() {
    double v = unary();
    while (true) {
      if (eat('*')) {
        v *= unary();
      } else if (eat('/')) {
        const double d = unary();
        if (d == 0.0) fail("division by zero");
        v /= d;
      } else {
        return v;
      }
    }
  }

  double unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return primary();
  }

  double primary() {
    if (eat('(')) {
      const double v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (word("pi")) return std::numbers::pi;
    if (word("inf")) return std::numeric_limits<double>::infinity();
    if (word("sqrt")) {
      if (!eat('(')) fail("expected '(' after sqrt");
      const double v = expr();
      if (!eat(')')) fail("expected ')'");
      if (v < 0) fail("sqrt of a negative value");
      return std::sqrt(v);
    }
    skip();
    const char* first = s_.data() + pos_;
    const char* last = s_.data() + s_.size();
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr == first) fail("expected a number, pi, inf or sqrt(...)");
    pos_ += static_cast<std::size_t>(ptr - first);
    return v;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

}  // namespace

double parse_scalar(std::string_view text) { return Parser(text).run(); }

std::map<std::string, std::string> split_params(std::string_view text) {
  std::map<std::string, std::string> out;
  int depth = 0;
  std::size_t start = 0;
  auto flush = [&](std::size_t end) {
    const std::string item = trim(text.substr(start, end - start));
    if (item.empty()) return;
    const std::size_t eq = item.find('=');
    if (eq == std::string::npos) throw InvalidInput("parameter '" + item + "' is not NAME=VALUE");
    const std::string key = trim(std::string_view(item).substr(0, eq));
    if (key.empty()) throw InvalidInput("parameter '" + item + "' has no name");
    if (!out.emplace(key, trim(std::string_view(item).substr(eq + 1))).second) {
      throw InvalidInput("parameter '" + key + "' given twice");
    }
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '(') ++depth;
    if (text[i] == ')') --depth;
    if (text[i] == ',' && depth == 0) {
      flush(i);
      start = i + 1;
    }
  }
  flush(text.size());
  return out;
}

}  // namespace floq::cli
