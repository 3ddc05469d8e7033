#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fiskit/dataset.hpp"
#include "fiskit/model.hpp"

namespace fiskit {

struct TrainConfig {
  int epochs = 50;
  double learn_rate = 0.01;
  double ridge = 1e-8;       // Tikhonov weight for the consequent solve
  double tol = 1e-6;         // stop when epoch RMSE improves by less than this
  std::uint64_t seed = 0;    // reserved for randomized variants; kept for reproducibility plumbing

  bool operator==(const TrainConfig&) const = default;
};

struct TrainReport {
  std::vector<double> rmse_per_epoch;          // recorded after each consequent solve
  std::vector<std::size_t> excluded_per_epoch; // zero-firing records dropped that epoch
  double final_train_rmse = 0.0;
  std::optional<double> final_test_rmse;
  int epochs_run = 0;
  bool stopped_early = false;

  bool operator==(const TrainReport&) const = default;
};

/// Full-grid first-order Tsk model over the given input variables: one rule
/// per term combination, consequent coefficients zeroed. Premise terms keep
/// their parameters when already of the requested family and are otherwise
/// rebuilt from their recovered (left, mean, right) bounds. The output range
/// defaults to [0, 1]; callers set it to the target scale before serializing.
FisModel build_grid_anfis(const std::vector<LinguisticVariable>& inputs, MfKind kind,
                          TNorm tnorm = TNorm::Product);

/// Row-major N x (R*(n+1)) matrix: per record, per rule, the normalized firing
/// strength times (x1..xn, 1). Flattened consequent order matches Rule::coeffs.
struct DesignMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> a;                  // row-major
  std::vector<double> y;                  // targets for the kept records
  std::vector<std::size_t> record_index;  // dataset index per kept row

  double at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }
};

/// Strict assembly: throws ZeroFiringRecords listing every record with no rule
/// support. Requires a fully labeled dataset of matching arity.
DesignMatrix design_matrix(const FisModel& model, const Dataset& data);

/// Permissive assembly for training: zero-firing records are skipped and
/// appended to `dropped`.
DesignMatrix design_matrix_dropping(const FisModel& model, const Dataset& data,
                                    std::vector<std::size_t>& dropped);

struct LseResult {
  std::vector<double> theta;      // flattened consequents, written back to the model
  std::vector<double> residuals;  // y - X theta, kept-record order
  std::vector<double> hat_diag;   // diagonal of X (X'X + ridge I)^-1 X'
  std::vector<std::size_t> record_index;
  double rmse = 0.0;              // over kept records
};

/// Ridge least-squares solve of the consequents with the premises held fixed.
/// Thin-SVD based; ridge = 0 falls back to the pseudo-inverse on rank-deficient
/// systems. Writes the solution into model.rules[*].coeffs. Throws
/// FisError(Singular) on non-finite data or a failed factorization and
/// ZeroFiringRecords via strict assembly when `strict` is set.
LseResult forward_lse(FisModel& model, const Dataset& data, double ridge, bool strict = false);

/// Sum of squared prediction errors over the labeled records that fire at
/// least one rule.
double sse(const FisModel& model, const Dataset& data);

/// d(sse)/d(premise parameter), flattened in (input variable, term, parameter)
/// order, assembled by the chain rule through firing, normalization, and the
/// consequent planes. Zero-firing records contribute nothing.
std::vector<double> premise_sse_gradient(const FisModel& model, const Dataset& data);

/// One full-batch descent step on the squared-error sum: learn_rate times the
/// gradient, norm-clipped so the move in parameter space never exceeds
/// learn_rate. Followed by a projection back to each family's validity region
/// (knots re-sorted, widths and bell parameters clamped to 1e-6).
/// learn_rate = 0 or a zero gradient leaves the model unchanged.
void backward_gd(FisModel& model, const Dataset& data, double learn_rate);

/// Hybrid loop: per epoch a consequent solve (recording RMSE over the records
/// kept that epoch) and, when another epoch follows, a premise gradient step.
/// Stops early once the RMSE improvement falls below cfg.tol, leaving the
/// model in the state whose RMSE was recorded last. Reports the test RMSE of
/// the final model when test data is supplied. Deterministic: identical
/// (data, config) produce bit-identical reports.
TrainReport train(FisModel& model, const Dataset& train_data, const Dataset* test_data,
                  const TrainConfig& cfg);

/// Crisp prediction of a Tsk model; alias of tsk_output.
double predict(const FisModel& model, std::span<const double> input);

}  // namespace fiskit
