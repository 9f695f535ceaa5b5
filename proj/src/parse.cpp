#include <cctype>
#include <string>

#include "dlv/errors.hpp"
#include "dlv/expr.hpp"

// Recursive-descent parser for the expression syntax used across the CLI and
// the catalog:
//
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-' factor | base ('^' digits)?
//   base   := digits | identifier | 'exp' '(' expr ')' | '(' expr ')'
//
// '-u^2' is -(u^2). Identifiers must name registered atoms.

namespace dlv {

namespace {

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  Expr run() {
    Expr e = expr();
    skip_ws();
    if (i_ < s_.size()) throw ParseError("unexpected trailing input", i_);
    return e;
  }

 private:
  void skip_ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_])))
      ++i_;
  }

  bool eat(char c) {
    skip_ws();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return i_ < s_.size() ? s_[i_] : '\0';
  }

  Expr expr() {
    Expr e = term();
    while (true) {
      if (eat('+'))
        e = e + term();
      else if (eat('-'))
        e = e - term();
      else
        return e;
    }
  }

  Expr term() {
    Expr e = factor();
    while (true) {
      if (eat('*'))
        e = e * factor();
      else if (eat('/'))
        e = e / factor();
      else
        return e;
    }
  }

  Expr factor() {
    if (eat('-')) return -factor();
    Expr e = base();
    if (eat('^')) {
      skip_ws();
      std::size_t at = i_;
      std::string d = digits();
      if (d.empty()) throw ParseError("expected integer exponent", at);
      if (d.size() > 4) throw ParseError("exponent too large", at);
      return e.pow(std::stoi(d));
    }
    return e;
  }

  Expr base() {
    skip_ws();
    std::size_t at = i_;
    if (i_ >= s_.size()) throw ParseError("unexpected end of input", at);
    char c = s_[i_];
    if (c == '(') {
      ++i_;
      Expr e = expr();
      if (!eat(')')) throw ParseError("expected ')'", i_);
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)))
      return Expr(Rat(mpz_class(digits())));
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string name = ident();
      if (name == "exp") {
        if (!eat('(')) throw ParseError("expected '(' after exp", i_);
        Expr g = expr();
        if (!eat(')')) throw ParseError("expected ')'", i_);
        try {
          return exp_of(g);
        } catch (const DomainError& e) {
          throw ParseError(e.what(), at);
        }
      }
      auto id = find_atom(name);
      if (!id) throw ParseError("unknown symbol '" + name + "'", at);
      return Expr::atom(*id);
    }
    throw ParseError(std::string("unexpected character '") + c + "'", at);
  }

  std::string digits() {
    std::string d;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_])))
      d += s_[i_++];
    return d;
  }

  std::string ident() {
    std::string n;
    while (i_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_'))
      n += s_[i_++];
    return n;
  }

  const std::string& s_;
  std::size_t i_ = 0;
};

}  // namespace

Expr parse_expr(const std::string& text) { return Parser(text).run(); }

}  // namespace dlv
