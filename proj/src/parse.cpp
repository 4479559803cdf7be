#include "endotorsion/parse.hpp"

#include <cctype>
#include <set>

#include "endotorsion/errors.hpp"

namespace endotorsion {

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

class ExprParser {
 public:
  ExprParser(std::string_view text, const Field& field, const std::string& var)
      : s_(text), field_(field), var_(var.empty() ? "t" : var), allow_var_(!var.empty()) {}

  RatFunc parse() {
    RatFunc v = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  RatFunc constant(const FieldElem& c) const { return RatFunc(Poly::constant(c, var_)); }

  RatFunc expr() {
    RatFunc v = term();
    for (;;) {
      if (peek('+')) {
        ++pos_;
        v = v + term();
      } else if (peek('-')) {
        ++pos_;
        v = v - term();
      } else {
        return v;
      }
    }
  }

  RatFunc term() {
    RatFunc v = unary();
    for (;;) {
      skip_ws();
      if (pos_ >= s_.size()) return v;
      const char c = s_[pos_];
      if (c == '*') {
        ++pos_;
        v = v * unary();
      } else if (c == '/') {
        const std::size_t at = pos_++;
        RatFunc d = unary();
        if (d.is_zero()) throw ParseError("division by zero", at);
        v = v / d;
      } else if (is_digit(c) || is_ident_start(c) || c == '(') {
        v = v * power();
      } else {
        return v;
      }
    }
  }

  RatFunc unary() {
    if (peek('-')) {
      ++pos_;
      return -unary();
    }
    if (peek('+')) {
      ++pos_;
      return unary();
    }
    return power();
  }

  RatFunc power() {
    RatFunc base = atom();
    if (!peek('^')) return base;
    ++pos_;
    skip_ws();
    const std::size_t at = pos_;
    bool negative = false;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) negative = s_[pos_++] == '-';
    if (pos_ >= s_.size() || !is_digit(s_[pos_])) fail("expected an integer exponent");
    long long e = 0;
    while (pos_ < s_.size() && is_digit(s_[pos_])) {
      e = e * 10 + (s_[pos_++] - '0');
      if (e > 1000000) throw ParseError("exponent too large", at);
    }
    if (negative && base.is_zero()) throw ParseError("negative power of zero", at);
    return base.pow(negative ? -e : e);
  }

  RatFunc atom() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (is_digit(c)) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && is_digit(s_[pos_])) ++pos_;
      const Integer v(std::string(s_.substr(start, pos_ - start)));
      return constant(field_.from_integer(v));
    }
    if (is_ident_start(c)) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && is_ident_char(s_[pos_])) ++pos_;
      const std::string name(s_.substr(start, pos_ - start));
      if (allow_var_ && name == var_) return RatFunc(Poly::x(field_, var_));
      if (field_.is_extension() && name == field_.symbol()) return constant(field_.generator());
      throw ParseError("unknown identifier '" + name + "'", start);
    }
    if (c == '(') {
      ++pos_;
      RatFunc v = expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return v;
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  Field field_;
  std::string var_;
  bool allow_var_;
};

}  // namespace

RatFunc parse_ratfunc(std::string_view text, const Field& field, const std::string& var) {
  if (var.empty()) throw Error("indeterminate name must be nonempty");
  if (field.is_extension() && var == field.symbol()) throw Error("indeterminate clashes with the extension symbol");
  return ExprParser(text, field, var).parse();
}

Poly parse_poly(std::string_view text, const Field& field, const std::string& var) {
  RatFunc f = parse_ratfunc(text, field, var);
  if (!f.is_polynomial()) throw ParseError("expected a polynomial, got " + f.to_string(), 0);
  return f.num();
}

FieldElem parse_scalar(std::string_view text, const Field& field) {
  RatFunc f = ExprParser(text, field, "").parse();
  return f.num().coeff(0) / f.den().coeff(0);
}

Integer parse_integer(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  const std::size_t start = i;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
  const std::size_t digits = i;
  while (i < text.size() && is_digit(text[i])) ++i;
  if (i == digits) throw ParseError("expected an integer", digits);
  std::size_t end = i;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  if (i != text.size()) throw ParseError("trailing characters after integer", i);
  std::string body(text.substr(start, end - start));
  if (body.front() == '+') body.erase(0, 1);
  return Integer(body);
}

FieldElem parse_ext_element(std::string_view text, const Field& base) {
  const std::size_t at = text.rfind("(mod");
  if (at == std::string_view::npos) throw ParseError("expected '(mod ...)' suffix", text.size());
  std::size_t close = text.find_last_of(')');
  if (close == std::string_view::npos || close < at) throw ParseError("unterminated '(mod'", at);
  for (std::size_t i = close + 1; i < text.size(); ++i) {
    if (!std::isspace(static_cast<unsigned char>(text[i]))) throw ParseError("trailing characters", i);
  }
  const std::string_view mod_text = text.substr(at + 4, close - at - 4);
  std::set<std::string> idents;
  for (std::size_t i = 0; i < mod_text.size();) {
    if (is_ident_start(mod_text[i])) {
      const std::size_t s = i;
      while (i < mod_text.size() && is_ident_char(mod_text[i])) ++i;
      idents.emplace(mod_text.substr(s, i - s));
    } else {
      ++i;
    }
  }
  if (idents.size() != 1) throw ParseError("modulus must involve exactly one symbol", at);
  const std::string symbol = *idents.begin();
  const Poly modulus = parse_poly(mod_text, base, symbol);
  const Field E = Field::extension(modulus, symbol);
  return parse_scalar(text.substr(0, at), E);
}

Field parse_field(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text == "Q") return Field::rationals();
  const std::size_t bracket = text.find('[');
  if (bracket != std::string_view::npos) {
    const std::size_t close = text.find(']', bracket);
    if (close == std::string_view::npos || close + 2 >= text.size() || text[close + 1] != '/' ||
        text[close + 2] != '(' || text.back() != ')') {
      throw ParseError("malformed extension field name", bracket);
    }
    const Field base = parse_field(text.substr(0, bracket));
    const std::string symbol(text.substr(bracket + 1, close - bracket - 1));
    const Poly modulus = parse_poly(text.substr(close + 3, text.size() - close - 4), base, symbol);
    return Field::extension(modulus, symbol);
  }
  if (text.size() >= 2 && text.front() == 'F') {
    const Integer p = parse_integer(text.substr(1));
    if (p < 2 || p >= (Integer(1) << 31)) throw ParseError("prime out of range", 1);
    return Field::prime(static_cast<std::uint32_t>(p.get_ui()));
  }
  throw ParseError("unknown field '" + std::string(text) + "'", 0);
}

}  // namespace endotorsion
