#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "fiskit/model.hpp"

namespace fiskit {

enum class ParseErrorKind {
  UnknownKeyword,  // unexpected or unrecognized token where a keyword belongs
  BadNumber,       // unparsable number, or a value violating its constraint
  UndefinedTerm,   // reference to an undeclared variable or term label
  DuplicateRule,   // duplicate rule antecedent or duplicate declaration
  ArityMismatch,   // wrong parameter, clause, or coefficient count
};

std::string_view parse_error_kind_name(ParseErrorKind kind);

/// First error found, with a 1-based source position pointing at the
/// offending token.
struct ParseError {
  ParseErrorKind kind = ParseErrorKind::UnknownKeyword;
  int line = 0;
  int column = 0;
  std::string message;
};

class ParseFailure : public std::runtime_error {
public:
  explicit ParseFailure(ParseError error)
      : std::runtime_error("line " + std::to_string(error.line) + ", col " +
                           std::to_string(error.column) + ": " + error.message),
        error_(std::move(error)) {}
  const ParseError& error() const { return error_; }

private:
  ParseError error_;
};

/// Parses the rule-file dialect:
///
///   fisfmt 1
///   fis mode (coa|tsk) tnorm (product|min)
///   var NAME range LO HI
///     term LABEL KIND(p1, p2, ...)
///   end
///   output range LO HI                      (tsk mode only)
///   rule: if V is T and ... then OUT is LABEL           (coa)
///   rule: if V is T and ... then coeffs(c1, ..., ck)    (tsk)
///
/// '#' starts a comment, blank lines are ignored, identifiers are
/// case-sensitive. In coa mode the consequent variable of the first rule is
/// the output variable; every other declared variable is an input, in
/// declaration order. Stops at the first error (throws ParseFailure).
FisModel parse_model(const std::string& text);

FisModel load_model(const std::string& path);

/// Canonical text: variables in declaration order (output last), terms in
/// index order, rules sorted lexicographically by antecedent indices, numbers
/// in shortest round-trip form. parse_model(serialize_model(m)) reproduces a
/// canonical m exactly, and serialize_model(parse_model(text)) reproduces
/// canonical text byte for byte.
std::string serialize_model(const FisModel& model);

}  // namespace fiskit
