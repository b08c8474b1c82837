#include "ffcount/parse.hpp"

#include "ffcount/errors.hpp"

#include <cctype>

namespace ffcount {

namespace {

class Parser {
 public:
  Parser(std::string_view s, const std::vector<std::string>& vars) : s_(s), vars_(vars) {}

  RatPoly parse() {
    RatPoly r = expr();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::InvalidArgument,
                "parse error at " + std::to_string(pos_) + " in '" + std::string(s_) + "': " + msg);
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
  RatPoly expr() {
    RatPoly acc = eat('-') ? -term() : (eat('+'), term());
    while (true) {
      if (eat('+')) acc += term();
      else if (eat('-')) acc -= term();
      else return acc;
    }
  }
  RatPoly term() {
    RatPoly acc = factor();
    while (true) {
      if (eat('*')) {
        acc *= factor();
      } else if (eat('/')) {
        auto c = factor().constant_value();
        if (!c || is_zero(*c)) fail("division by a non-constant or zero");
        acc *= 1 / *c;
      } else {
        return acc;
      }
    }
  }
  RatPoly factor() {
    RatPoly b = base();
    if (eat('^')) {
      bool neg = eat('-');
      long e = integer();
      if (neg) {
        if (b.size() != 1) fail("negative power of a non-monomial");
        auto [m, c] = *b.terms().begin();
        Monomial nm = m;
        for (auto& x : nm) x *= -static_cast<int>(e);
        return RatPoly::term(vars_, nm, 1 / Rat(c));
      }
      return b.pow(static_cast<unsigned>(e));
    }
    return b;
  }
  long integer() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return std::stol(std::string(s_.substr(start, pos_ - start)));
  }
  RatPoly base() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      RatPoly r = expr();
      if (!eat(')')) fail("expected ')'");
      return r;
    }
    if (c == '-') {
      ++pos_;
      return -factor();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      Integer n(std::string(s_.substr(start, pos_ - start)), 10);
      return RatPoly::constant(vars_, Rat(n));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == name) return RatPoly::variable(vars_, i);
      fail("unknown variable '" + name + "'");
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view s_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

}  // namespace

RatPoly parse_poly(std::string_view text, const std::vector<std::string>& vars) {
  return Parser(text, vars).parse();
}

}  // namespace ffcount
