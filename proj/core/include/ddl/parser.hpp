#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ddl/extension.hpp"
#include "ddl/theory.hpp"

namespace ddl {

/// 1-based position of an error in the input text.
struct SourceSpan {
  std::size_t line = 1;
  std::size_t column = 1;
  std::size_t length = 1;

  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(SourceSpan span, const std::string& message);

  const SourceSpan& span() const noexcept { return span_; }
  /// Message without the `line:column:` prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  SourceSpan span_;
  std::string detail_;
};

/// A concrete case: facts plus constitutive rules, with the conclusions the
/// coder expects the background to produce.
struct Scenario {
  std::string name;
  std::vector<Literal> facts;
  std::vector<Rule> rules;
  std::vector<TaggedConclusion> expectations;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Grammar (ASCII surface syntax):
///
///   theory  := { stmt }
///   stmt    := fact | rule | sup | comment
///   fact    := "fact" literal "."
///   literal := ["~"] IDENT [":=" NUMBER IDENT?]
///   mlit    := literal | "O(" literal ")" | "P(" literal ")" | "!O(" literal ")" | "!P(" literal ")"
///   rule    := IDENT ":" [ mlit {"," mlit} ] arrow head "."
///   arrow   := "->" | "=>" | "=>O" | "=>P" | "~>" | "~>O" | "~>P"
///   head    := chain | "O(" chain ")" | "P(" literal ")"
///   chain   := literal { "@" literal }
///   sup     := IDENT ">" IDENT "."
///   comment := "#" to end of line
///
/// `@` is the compensation operator and is legal only in obligation heads.
/// `=> O(a @ b)` is the same rule as `=>O a @ b`.
///
/// Throws ParseError on syntax errors and on validation errors.
Theory parse_theory(std::string_view text);

/// Theory statements restricted to facts and constitutive strict/defeasible
/// rules, plus
///
///   expect := "expect" ("+"|"-") ("definite"|"defeasible") ("C"|"O"|"P") literal "."
Scenario parse_scenario(std::string_view text, std::string name = {});

/// Canonical text: facts, then rules, then superiority, one statement per line.
/// parse_theory(print_theory(t)) == t.
std::string print_theory(const Theory& theory);

std::string print_rule(const Rule& rule);

std::string print_scenario(const Scenario& scenario);

}  // namespace ddl
