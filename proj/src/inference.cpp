#include "fiskit/inference.hpp"

#include <algorithm>
#include <cmath>

#include "fiskit/errors.hpp"

namespace fiskit {
namespace {

void require_arity(const FisModel& model, std::span<const double> input) {
  if (input.size() != model.inputs.size()) {
    throw FisError(Errc::ArityMismatch,
                   "input has " + std::to_string(input.size()) + " values, model expects " +
                       std::to_string(model.inputs.size()));
  }
}

void require_mode(const FisModel& model, InferMode mode, const char* op) {
  if (model.mode != mode) {
    throw FisError(Errc::ModeMismatch, std::string(op) + " requires a " +
                                           std::string(infer_mode_name(mode)) + " model");
  }
}

// Degrees of every input term at this input, fuzzified per variable once.
std::vector<std::vector<double>> degree_table(const FisModel& model,
                                              std::span<const double> input) {
  std::vector<std::vector<double>> degrees(model.inputs.size());
  for (std::size_t v = 0; v < model.inputs.size(); ++v) {
    degrees[v] = fuzzify(model.inputs[v], input[v]);
  }
  return degrees;
}

}  // namespace

std::vector<double> fuzzify(const LinguisticVariable& var, double x) {
  if (!std::isfinite(x)) {
    throw FisError(Errc::ArityMismatch, "variable '" + var.name + "': non-finite input");
  }
  double clamped = std::clamp(x, var.lo, var.hi);
  std::vector<double> degrees(var.terms.size());
  for (std::size_t i = 0; i < var.terms.size(); ++i) {
    degrees[i] = eval_mf(var.terms[i].mf, clamped);
  }
  return degrees;
}

FiringVector firing_strengths(const FisModel& model, std::span<const double> input) {
  require_arity(model, input);
  auto degrees = degree_table(model, input);
  FiringVector fv;
  fv.w.resize(model.rules.size());
  for (std::size_t r = 0; r < model.rules.size(); ++r) {
    const Rule& rule = model.rules[r];
    double w = model.tnorm == TNorm::Product ? 1.0 : 2.0;
    for (std::size_t v = 0; v < rule.antecedent.size(); ++v) {
      double mu = degrees[v][rule.antecedent[v]];
      w = model.tnorm == TNorm::Product ? w * mu : std::min(w, mu);
    }
    fv.w[r] = w;
    fv.total += w;
  }
  if (fv.total > 0.0) {
    fv.norm_defined = true;
    fv.w_norm.resize(fv.w.size());
    for (std::size_t r = 0; r < fv.w.size(); ++r) fv.w_norm[r] = fv.w[r] / fv.total;
  }
  return fv;
}

double rule_plane_value(const Rule& rule, std::span<const double> input) {
  double f = rule.coeffs.back();
  for (std::size_t d = 0; d < input.size(); ++d) f += rule.coeffs[d] * input[d];
  return f;
}

double tsk_output(const FisModel& model, std::span<const double> input) {
  require_mode(model, InferMode::Tsk, "tsk_output");
  FiringVector fv = firing_strengths(model, input);
  if (!fv.norm_defined) {
    throw FisError(Errc::ZeroFiring, "no rule fires for this input");
  }
  double out = 0.0;
  for (std::size_t r = 0; r < model.rules.size(); ++r) {
    if (fv.w[r] == 0.0) continue;
    out += fv.w_norm[r] * rule_plane_value(model.rules[r], input);
  }
  return out;
}

double coa_from_firing(const FisModel& model, const FiringVector& firing) {
  require_mode(model, InferMode::Coa, "coa_output");
  if (!(firing.total > 0.0)) {
    throw FisError(Errc::ZeroFiring, "no rule fires for this input");
  }
  double num = 0.0;
  for (std::size_t r = 0; r < model.rules.size(); ++r) {
    if (firing.w[r] == 0.0) continue;
    num += firing.w[r] * peak_location(model.output.terms[model.rules[r].output_term].mf);
  }
  return num / firing.total;
}

double coa_output(const FisModel& model, std::span<const double> input) {
  return coa_from_firing(model, firing_strengths(model, input));
}

std::vector<double> class_activations(const FisModel& model, const FiringVector& firing) {
  std::vector<double> act(model.output.terms.size(), 0.0);
  if (!firing.norm_defined) return act;
  for (std::size_t r = 0; r < model.rules.size(); ++r) {
    act[model.rules[r].output_term] += firing.w_norm[r];
  }
  return act;
}

ClassifyResult classify(const FisModel& model, std::span<const double> input) {
  require_mode(model, InferMode::Coa, "classify");
  FiringVector fv = firing_strengths(model, input);
  if (!fv.norm_defined) {
    throw FisError(Errc::ZeroFiring, "no rule fires for this input");
  }
  ClassifyResult result;
  result.activations = class_activations(model, fv);
  result.crisp = coa_from_firing(model, fv);
  result.class_index = 0;
  for (std::size_t c = 1; c < result.activations.size(); ++c) {
    if (result.activations[c] > result.activations[result.class_index]) {
      result.class_index = static_cast<int>(c);
    }
  }
  result.label = model.output.terms[result.class_index].label;
  return result;
}

ClassScoreReport aggregate_class_scores(const FisModel& model,
                                        const std::vector<std::vector<double>>& records) {
  require_mode(model, InferMode::Coa, "aggregate_class_scores");
  if (records.empty()) {
    throw FisError(Errc::EmptyInput, "no records to aggregate");
  }
  ClassScoreReport report;
  report.n_records = records.size();
  report.per_class.resize(model.output.terms.size());
  for (const Term& t : model.output.terms) report.labels.push_back(t.label);

  for (const auto& record : records) {
    ClassifyResult one;
    try {
      one = classify(model, record);
    } catch (const FisError& e) {
      if (e.code() == Errc::ZeroFiring) {
        ++report.n_zero_firing;
        continue;
      }
      throw;
    }
    ++report.n_classified;
    for (std::size_t c = 0; c < report.per_class.size(); ++c) {
      report.per_class[c].mean_output += one.activations[c];
      report.per_class[c].memberships.push_back(eval_mf(model.output.terms[c].mf, one.crisp));
    }
  }
  if (report.n_classified > 0) {
    for (auto& cls : report.per_class) {
      cls.mean_output /= static_cast<double>(report.n_classified);
    }
  }
  return report;
}

}  // namespace fiskit
