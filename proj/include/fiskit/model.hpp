#pragma once

#include <string>
#include <vector>

#include "fiskit/mf.hpp"

namespace fiskit {

enum class TNorm { Product, Min };

/// Consequent style: Coa rules name an output term and the crisp value is the
/// firing-weighted mean of term gravities; Tsk rules carry first-order
/// coefficients and the crisp value is the weighted mean of the rule planes.
enum class InferMode { Coa, Tsk };

struct Term {
  std::string label;
  MembershipFunction mf;

  bool operator==(const Term&) const = default;
};

struct LinguisticVariable {
  std::string name;
  double lo = 0.0;
  double hi = 1.0;
  std::vector<Term> terms;

  bool operator==(const LinguisticVariable&) const = default;

  /// Index of the term with the given label, or -1.
  int term_index(std::string_view label) const;
};

struct Rule {
  std::vector<int> antecedent;  // one term index per input variable
  int output_term = -1;         // Coa mode
  std::vector<double> coeffs;   // Tsk mode, length n_inputs + 1, constant last

  bool operator==(const Rule&) const = default;
};

struct FisModel {
  InferMode mode = InferMode::Coa;
  TNorm tnorm = TNorm::Product;
  std::vector<LinguisticVariable> inputs;
  LinguisticVariable output;    // Coa mode only
  double out_lo = 0.0;          // Tsk mode output range
  double out_hi = 1.0;
  std::vector<Rule> rules;

  bool operator==(const FisModel&) const = default;

  std::size_t n_inputs() const { return inputs.size(); }
};

/// Checks structural invariants: variable ranges ordered, term labels unique
/// and non-empty, every rule arity-complete with in-range term indices, rule
/// antecedents unique, consequent form matching the mode, every membership
/// function well formed, and bounded-support terms overlapping their
/// variable's range. Throws FisError(InvalidModel) with a specific message.
void validate_model(const FisModel& model);

std::string_view tnorm_name(TNorm t);
std::string_view infer_mode_name(InferMode m);

}  // namespace fiskit
