// Recursive-descent expression parser with exact rational coefficients.
#include "projatlas/parse.hpp"

#include <array>
#include <cctype>

namespace projatlas {

namespace {

class Parser {
 public:
  Parser(const std::string& text, std::pair<std::string, std::string> vars)
      : s_(text), vars_(std::move(vars)) {}

  Poly2 parse() {
    Poly2 p = expression();
    skip_ws();
    if (pos_ != s_.size()) throw ParseError("unexpected trailing input", pos_);
    return p;
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  Poly2 expression() {
    Poly2 acc;
    bool negate = false;
    if (accept('-'))
      negate = true;
    else
      accept('+');
    acc = negate ? -term() : term();
    while (true) {
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc -= term();
      else
        break;
    }
    return acc;
  }

  Poly2 term() {
    Poly2 acc = factor();
    while (true) {
      if (accept('*')) {
        acc = acc * factor();
        continue;
      }
      // Juxtaposition: a factor can start with a digit, a letter, or '('.
      skip_ws();
      if (pos_ < s_.size()) {
        const char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            std::isalpha(static_cast<unsigned char>(c)) || c == '(') {
          acc = acc * factor();
          continue;
        }
      }
      break;
    }
    return acc;
  }

  Poly2 factor() {
    skip_ws();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) return coefficient();
    if (std::isalpha(static_cast<unsigned char>(c))) {
      Poly2 v = variable();
      if (accept('^')) return v.pow(exponent());
      return v;
    }
    if (accept('(')) {
      Poly2 inner = expression();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      if (accept('^')) return inner.pow(exponent());
      return inner;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  Poly2 coefficient() {
    const Int num = integer();
    if (accept('/')) {
      const std::size_t at = pos_;
      const Int den = integer();
      if (den == 0) throw ParseError("zero denominator", at);
      return Poly2::constant(Rat(num, den));
    }
    return Poly2::constant(Rat(num));
  }

  Int integer() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == start) throw ParseError("expected integer", pos_);
    return Int(s_.substr(start, pos_ - start));
  }

  unsigned exponent() {
    skip_ws();
    const std::size_t at = pos_;
    const Int e = integer();
    if (e < 0 || e > 64) throw ParseError("exponent out of range", at);
    return static_cast<unsigned>(e);
  }

  Poly2 variable() {
    skip_ws();
    const std::size_t start = pos_;
    // Match the longest variable name at the cursor, leaving the rest of an
    // alphabetic run for juxtaposition ("xy" means x*y, "xitheta" xi*theta).
    auto starts_with = [&](const std::string& name) {
      return s_.compare(start, name.size(), name) == 0;
    };
    const bool first_longer = vars_.first.size() >= vars_.second.size();
    const std::string& longer = first_longer ? vars_.first : vars_.second;
    const std::string& shorter = first_longer ? vars_.second : vars_.first;
    for (const std::string& name : {longer, shorter}) {
      if (starts_with(name)) {
        pos_ = start + name.size();
        return name == vars_.first ? Poly2::var_first() : Poly2::var_second();
      }
    }
    std::size_t end = start;
    while (end < s_.size() && std::isalpha(static_cast<unsigned char>(s_[end]))) ++end;
    throw ParseError("unknown identifier '" + s_.substr(start, end - start) + "'", start);
  }

  const std::string& s_;
  std::pair<std::string, std::string> vars_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly2 parse_polynomial(const std::string& text,
                       const std::pair<std::string, std::string>& var_names) {
  return Parser(text, var_names).parse();
}

ParsedSystem parse_system_text(const std::string& text) {
  static const std::array<std::pair<std::string, std::string>, 3> kPairs = {
      {{"x", "y"}, {"xi", "theta"}, {"eta", "zeta"}}};

  const std::size_t semi = text.find(';');
  if (semi == std::string::npos)
    throw ParseError("expected two equations separated by ';'", text.size());
  auto split_eq = [&](const std::string& part, std::size_t base) {
    const std::size_t eq = part.find('=');
    if (eq == std::string::npos) throw ParseError("expected '='", base + part.size());
    std::string lhs = part.substr(0, eq);
    // Strip whitespace and the trailing prime from the left-hand side.
    std::string name;
    for (char c : lhs)
      if (!std::isspace(static_cast<unsigned char>(c))) name += c;
    if (name.size() < 2 || name.back() != '\'')
      throw ParseError("left-hand side must be a primed variable like x'", base);
    name.pop_back();
    return std::make_pair(name, part.substr(eq + 1));
  };

  auto [n1, e1] = split_eq(text.substr(0, semi), 0);
  auto [n2, e2] = split_eq(text.substr(semi + 1), semi + 1);

  for (const auto& vars : kPairs) {
    if (n1 == vars.first && n2 == vars.second) {
      ParsedSystem out;
      out.vars = vars;
      out.X = parse_polynomial(e1, vars);
      out.Y = parse_polynomial(e2, vars);
      return out;
    }
  }
  throw ParseError("unrecognized variable pair '" + n1 + "', '" + n2 +
                       "' (expected x/y, xi/theta, or eta/zeta)",
                   0);
}

}  // namespace projatlas
