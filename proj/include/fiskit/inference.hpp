#pragma once

#include <span>
#include <string>
#include <vector>

#include "fiskit/model.hpp"

namespace fiskit {

/// Membership degree of x in every term of the variable, in term order.
/// Out-of-range inputs are clamped to [lo, hi] first.
std::vector<double> fuzzify(const LinguisticVariable& var, double x);

struct FiringVector {
  std::vector<double> w;       // raw rule firing strengths, rule order
  std::vector<double> w_norm;  // w / sum(w); meaningful only when norm_defined
  double total = 0.0;
  bool norm_defined = false;
};

/// Rule firing strengths for one input vector: the model's t-norm combined
/// over each rule's antecedent degrees. Throws FisError(ArityMismatch) when
/// the input width differs from the model's.
FiringVector firing_strengths(const FisModel& model, std::span<const double> input);

/// First-order consequent value of one rule at the given input.
double rule_plane_value(const Rule& rule, std::span<const double> input);

/// Weighted-average output of a Tsk model. Throws ZeroFiring when no rule
/// fires and ModeMismatch on a Coa model.
double tsk_output(const FisModel& model, std::span<const double> input);

/// Center-average output of a Coa model: firing-weighted mean of consequent
/// term gravities. Throws ZeroFiring when no rule fires and ModeMismatch on a
/// Tsk model.
double coa_output(const FisModel& model, std::span<const double> input);
double coa_from_firing(const FisModel& model, const FiringVector& firing);

/// Per-output-term activation: sum of normalized firing strengths of the
/// rules naming that term. Sums to 1 when any rule fires.
std::vector<double> class_activations(const FisModel& model, const FiringVector& firing);

struct ClassifyResult {
  int class_index = -1;              // output term index; ties go to the lower index
  std::string label;                 // output term label
  double crisp = 0.0;                // center-average output
  std::vector<double> activations;   // per output term, term order
};

/// Argmax-activation classification for Coa models.
ClassifyResult classify(const FisModel& model, std::span<const double> input);

struct ClassScore {
  double mean_output = 0.0;          // activation averaged over classified records
  std::vector<double> memberships;   // term membership of each record's crisp output
};

struct ClassScoreReport {
  std::vector<std::string> labels;   // output term labels, term order
  std::vector<ClassScore> per_class;
  std::size_t n_records = 0;
  std::size_t n_classified = 0;
  std::size_t n_zero_firing = 0;     // records excluded for firing no rule
};

/// Aggregates activations and output-term memberships over a record batch.
/// Throws FisError(EmptyInput) when records is empty.
ClassScoreReport aggregate_class_scores(const FisModel& model,
                                        const std::vector<std::vector<double>>& records);

}  // namespace fiskit
