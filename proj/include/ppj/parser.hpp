#pragma once

// Concrete syntax.
//
//   formula := imp
//   imp     := or ("->" imp)?
//   or      := and ("|" and)*
//   and     := unary ("&" unary)*
//   unary   := "~" unary | pop unary | term ":" unary | atom
//   pop     := "P" ("<=" | ">=" | "<" | ">" | "=") rational
//   atom    := ident | "(" formula ")"
//   term    := tfactor ("." tfactor)*
//   tfactor := "!" tfactor | ident | "(" term ")"
//
// Term identifiers starting with x, y or z are variables, all others are
// constants. Rationals are integers, decimals or n/m fractions. The modal
// grammar replaces pop/term by "[]" and "<>" prefixes.

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ppj/reduction.hpp"
#include "ppj/syntax.hpp"

namespace ppj {

class ParseError : public std::runtime_error {
 public:
  enum class Kind { Lexical, Syntax, Range };

  ParseError(Kind kind, const std::string& message, SourcePos pos);

  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] const SourcePos& pos() const { return pos_; }
  [[nodiscard]] const std::string& message() const { return message_; }

 private:
  Kind kind_;
  SourcePos pos_;
  std::string message_;
};

SurfaceFormula parse_surface(std::string_view text);
Formula parse_formula(std::string_view text);
Term parse_term(std::string_view text);
ModalFormula parse_modal(std::string_view text);

std::string print_formula(const Formula& a);
std::string print_term(const Term& t);
std::string print_modal(const ModalFormula& a);

/// One entry per non-blank, non-comment line of an input file.
struct InputLine {
  std::size_t line_number = 0;
  std::string text;
};

/// Splits input text into formula lines; `#` starts a comment that runs to
/// the end of the line.
std::vector<InputLine> split_input(std::string_view text);

}  // namespace ppj
