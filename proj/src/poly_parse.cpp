#include <cctype>
#include <string>

#include "leibniz/errors.hpp"
#include "leibniz/poly.hpp"

namespace leibniz {

namespace {

// Grammar:
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := power (('*'|'/') power)*
//   power  := unary ['^' ['+'|'-'] integer]
//   unary  := '-' unary | primary
//   primary:= number | identifier | '(' expr ')'
class Parser {
public:
  Parser(const Chart& chart, std::string_view text) : chart_(chart), text_(text) {}

  Poly parse() {
    Poly p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("polynomial parse error at column " + std::to_string(pos_ + 1) + ": " + msg + " in '" +
                     std::string(text_) + "'");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Poly expr() {
    Poly acc(chart_);
    bool first = true;
    for (;;) {
      skip_ws();
      bool neg = false;
      if (accept('+')) {
      } else if (accept('-')) {
        neg = true;
      } else if (!first) {
        break;
      }
      Poly t = term();
      acc += neg ? -t : t;
      first = false;
    }
    return acc;
  }

  Poly term() {
    Poly acc = power();
    for (;;) {
      if (accept('*')) {
        acc *= power();
      } else if (accept('/')) {
        Poly d = power();
        if (d.is_zero()) fail("division by zero");
        if (!d.is_monomial()) fail("divisor must be a single term");
        acc = acc.divide_exact(d);
      } else {
        return acc;
      }
    }
  }

  Poly power() {
    Poly base = unary();
    if (!accept('^')) return base;
    skip_ws();
    bool neg = false;
    if (accept('-'))
      neg = true;
    else
      accept('+');
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer exponent");
    if (pos_ - start > 3) fail("exponent too large");
    const unsigned k = static_cast<unsigned>(std::stoul(std::string(text_.substr(start, pos_ - start))));
    if (!neg) return base.pow(k);
    if (!base.is_monomial()) fail("negative powers are only allowed on single terms");
    return Poly::constant(chart_, 1).divide_exact(base.pow(k));
  }

  Poly unary() {
    if (accept('-')) return -unary();
    return primary();
  }

  Poly primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Poly p = expr();
      if (!accept(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
        ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
        std::size_t q = pos_ + 1;
        if (q < text_.size() && (text_[q] == '+' || text_[q] == '-')) ++q;
        if (q < text_.size() && std::isdigit(static_cast<unsigned char>(text_[q]))) {
          pos_ = q;
          while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        }
      }
      return Poly::constant(chart_, parse_rational(text_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      const std::string name(text_.substr(start, pos_ - start));
      if (!chart_.index_of(name))
        throw UnknownVariable("unknown variable '" + name + "' for chart " + chart_.describe());
      return Poly::variable(chart_, name);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const Chart& chart_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

} // namespace

Poly parse_poly(const Chart& chart, std::string_view text) { return Parser(chart, text).parse(); }

} // namespace leibniz
