#include "fiskit/model.hpp"

#include <set>
#include <string>

#include "fiskit/errors.hpp"

namespace fiskit {
namespace {

[[noreturn]] void fail(const std::string& what) {
  throw FisError(Errc::InvalidModel, what);
}

void check_variable(const LinguisticVariable& v) {
  if (!(v.lo < v.hi)) fail("variable '" + v.name + "': range must satisfy lo < hi");
  if (v.terms.empty()) fail("variable '" + v.name + "': needs at least one term");
  std::set<std::string> labels;
  for (const Term& t : v.terms) {
    if (t.label.empty()) fail("variable '" + v.name + "': empty term label");
    if (!labels.insert(t.label).second) {
      fail("variable '" + v.name + "': duplicate term label '" + t.label + "'");
    }
    if (auto issue = validate_mf(t.mf)) {
      fail("variable '" + v.name + "', term '" + t.label + "': " + issue->message);
    }
    // Bounded-support families must overlap the variable range to ever fire.
    switch (t.mf.kind) {
      case MfKind::Triangular:
        if (t.mf.params[2] < v.lo || t.mf.params[0] > v.hi) {
          fail("variable '" + v.name + "', term '" + t.label + "': support misses the range");
        }
        break;
      case MfKind::Trapezoidal:
      case MfKind::PiShape:
        if (t.mf.params[3] < v.lo || t.mf.params[0] > v.hi) {
          fail("variable '" + v.name + "', term '" + t.label + "': support misses the range");
        }
        break;
      default:
        break;
    }
  }
}

}  // namespace

int LinguisticVariable::term_index(std::string_view label) const {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].label == label) return static_cast<int>(i);
  }
  return -1;
}

void validate_model(const FisModel& model) {
  if (model.inputs.empty()) fail("model has no input variables");
  std::set<std::string> names;
  for (const auto& v : model.inputs) {
    if (v.name.empty()) fail("empty variable name");
    if (!names.insert(v.name).second) fail("duplicate variable name '" + v.name + "'");
    check_variable(v);
  }
  if (model.mode == InferMode::Coa) {
    if (!names.insert(model.output.name).second) {
      fail("duplicate variable name '" + model.output.name + "'");
    }
    check_variable(model.output);
  } else if (!(model.out_lo < model.out_hi)) {
    fail("output range must satisfy lo < hi");
  }

  std::set<std::vector<int>> seen;
  for (std::size_t r = 0; r < model.rules.size(); ++r) {
    const Rule& rule = model.rules[r];
    const std::string where = "rule " + std::to_string(r + 1);
    if (rule.antecedent.size() != model.inputs.size()) {
      fail(where + ": antecedent covers " + std::to_string(rule.antecedent.size()) +
           " variables, expected " + std::to_string(model.inputs.size()));
    }
    for (std::size_t v = 0; v < rule.antecedent.size(); ++v) {
      int t = rule.antecedent[v];
      if (t < 0 || t >= static_cast<int>(model.inputs[v].terms.size())) {
        fail(where + ": term index out of range for variable '" + model.inputs[v].name + "'");
      }
    }
    if (!seen.insert(rule.antecedent).second) fail(where + ": duplicate antecedent");
    if (model.mode == InferMode::Coa) {
      if (!rule.coeffs.empty()) fail(where + ": coefficient consequent in coa mode");
      if (rule.output_term < 0 ||
          rule.output_term >= static_cast<int>(model.output.terms.size())) {
        fail(where + ": output term index out of range");
      }
    } else {
      if (rule.output_term != -1) fail(where + ": linguistic consequent in tsk mode");
      if (rule.coeffs.size() != model.inputs.size() + 1) {
        fail(where + ": expected " + std::to_string(model.inputs.size() + 1) +
             " coefficients, got " + std::to_string(rule.coeffs.size()));
      }
    }
  }
}

std::string_view tnorm_name(TNorm t) {
  return t == TNorm::Product ? "product" : "min";
}

std::string_view infer_mode_name(InferMode m) {
  return m == InferMode::Coa ? "coa" : "tsk";
}

}  // namespace fiskit
