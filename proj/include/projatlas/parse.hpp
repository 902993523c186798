// Recursive-descent parser for polynomial expressions and system inputs of
// the form  x' = <poly>; y' = <poly>  (chart-appropriate variable names).
#pragma once

#include "projatlas/poly.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace projatlas {

// Input error with a byte offset into the offending text.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t position)
      : std::runtime_error(msg + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Grammar:
//   expression := ('-'|'+')? term (('+'|'-') term)*
//   term       := factor ('*'? factor)*
//   factor     := coefficient | variable ('^' uint)? | '(' expression ')' ('^' uint)?
//   coefficient:= uint ('/' uint)?
// Whitespace is insignificant; juxtaposition implies multiplication.
Poly2 parse_polynomial(const std::string& text,
                       const std::pair<std::string, std::string>& var_names);

struct ParsedSystem {
  Poly2 X, Y;
  std::pair<std::string, std::string> vars;
};

// Parses "v1' = <poly>; v2' = <poly>" where (v1,v2) is one of the recognized
// chart variable pairs: (x,y), (xi,theta), (eta,zeta).
ParsedSystem parse_system_text(const std::string& text);

}  // namespace projatlas
