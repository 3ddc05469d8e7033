#pragma once

#include <cstddef>
#include <vector>

#include "fiskit/dataset.hpp"
#include "fiskit/model.hpp"

namespace fiskit {

/// Goodness-of-fit report for a Tsk model on a labeled dataset.
///
/// mse and rmse use the plain sum(e^2)/n normalization over the kept records.
/// deleted_mse[i] is the regression variance a refit without record i would
/// report, computed from the closed form
///   (RSS - e_i^2 / (1 - H_ii)) / (n - p - 1)
/// with H the ridge projector's diagonal; it is exact against a brute-force
/// leave-one-out refit when ridge = 0. Defined only when n > p + 1.
struct EvalDiagnostics {
  std::size_t n = 0;                       // records kept (labeled, firing)
  std::size_t p = 0;                       // consequent parameter count
  double mse = 0.0;
  double rmse = 0.0;
  std::vector<double> predictions;         // kept-record order
  std::vector<double> residuals;
  std::vector<double> leverage;            // hat diagonal, in [0, 1]
  std::vector<double> deleted_mse;         // empty unless deleted_defined
  bool deleted_defined = false;
  std::vector<std::size_t> record_index;   // dataset index per kept row
  std::vector<std::size_t> zero_firing;    // excluded records
};

/// Evaluates a trained Tsk model as-is (coefficients untouched). ridge sets
/// the projector used for leverage; 0 gives the classic least-squares hat
/// matrix. Throws FisError(EmptyInput) when no labeled record fires.
EvalDiagnostics eval_tsk(const FisModel& model, const Dataset& data, double ridge = 0.0);

struct CoaEval {
  std::size_t n = 0;
  double mse = 0.0;
  double rmse = 0.0;
  std::vector<std::size_t> zero_firing;
};

/// Center-average crisp outputs of a Coa model against the dataset targets.
CoaEval eval_coa(const FisModel& model, const Dataset& data);

}  // namespace fiskit
