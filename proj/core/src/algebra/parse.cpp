#include "srweyl/algebra/parse.hpp"

#include <cctype>

#include "srweyl/error.hpp"

namespace srweyl::algebra {

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::span<const std::string> names) : text_(text), names_(names) {}

  Poly parse() {
    skip_space();
    if (pos_ == text_.size()) fail("empty expression");
    Poly p = expression();
    skip_space();
    if (pos_ != text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("column " + std::to_string(pos_ + 1) + ": " + what + " in '" + std::string(text_) + "'");
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  Poly expression() {
    Poly acc = term();
    while (true) {
      if (accept("+")) {
        acc += term();
      } else if (accept("-")) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Poly term() {
    Poly acc = unary();
    while (true) {
      skip_space();
      if (text_.substr(pos_, 2) == "**") return acc;  // handled by power()
      if (accept("*")) {
        acc *= unary();
      } else if (accept("/")) {
        const std::size_t at = pos_;
        Poly d = unary();
        if (!d.is_constant()) {
          pos_ = at;
          fail("division by a non-constant");
        }
        if (d.is_zero()) {
          pos_ = at;
          fail("division by zero");
        }
        acc *= 1 / d.constant_term();
      } else {
        return acc;
      }
    }
  }

  Poly power() {
    Poly base = primary();
    if (accept("^") || accept("**")) {
      skip_space();
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected a non-negative integer exponent");
      const std::string digits(text_.substr(start, pos_ - start));
      if (digits.size() > 4) fail("exponent too large");
      return base.pow(static_cast<unsigned>(std::stoul(digits)));
    }
    return base;
  }

  Poly unary() {
    if (accept("-")) return -unary();
    if (accept("+")) return unary();
    return power();
  }

  Poly primary() {
    skip_space();
    if (pos_ == text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Poly inner = expression();
      if (!accept(")")) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return Poly::constant(names_.size(), number());
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      const std::string_view name = text_.substr(start, pos_ - start);
      for (std::size_t i = 0; i < names_.size(); ++i) {
        if (names_[i] == name) return Poly::variable(names_.size(), i);
      }
      pos_ = start;
      fail("unknown variable '" + std::string(name) + "'");
    }
    fail(std::string("unexpected '") + c + "'");
  }

  Rational number() {
    const std::size_t start = pos_;
    std::string int_part, frac_part;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) int_part += text_[pos_++];
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) frac_part += text_[pos_++];
    }
    if (int_part.empty() && frac_part.empty()) {
      pos_ = start;
      fail("malformed number");
    }
    Integer numerator(int_part.empty() ? std::string("0") : int_part);
    Integer scale = 1;
    for (char d : frac_part) {
      numerator = numerator * 10 + (d - '0');
      scale *= 10;
    }
    Rational r(numerator, scale);
    r.canonicalize();
    return r;
  }

  std::string_view text_;
  std::span<const std::string> names_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(std::string_view text, std::span<const std::string> names) { return Parser(text, names).parse(); }

}  // namespace srweyl::algebra
