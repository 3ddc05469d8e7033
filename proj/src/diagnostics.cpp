#include "fiskit/diagnostics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "fiskit/anfis.hpp"
#include "fiskit/errors.hpp"
#include "fiskit/inference.hpp"

namespace fiskit {
namespace {

std::vector<double> hat_diagonal(const DesignMatrix& d, double ridge) {
  using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::Map<const Mat> X(d.a.data(), static_cast<Eigen::Index>(d.rows),
                          static_cast<Eigen::Index>(d.cols));
  Eigen::BDCSVD<Eigen::MatrixXd> svd(X, Eigen::ComputeThinU);
  if (svd.info() != Eigen::Success) {
    throw FisError(Errc::Singular, "singular value decomposition failed");
  }
  const Eigen::MatrixXd& U = svd.matrixU();
  const Eigen::VectorXd& s = svd.singularValues();
  double cutoff = ridge > 0.0
                      ? -1.0
                      : s.size() > 0
                            ? s(0) * std::numeric_limits<double>::epsilon() *
                                  static_cast<double>(std::max(d.rows, d.cols))
                            : 0.0;
  std::vector<double> hat(d.rows, 0.0);
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    double f = s(k) <= cutoff ? 0.0 : s(k) * s(k) / (s(k) * s(k) + ridge);
    for (std::size_t i = 0; i < d.rows; ++i) {
      hat[i] += U(static_cast<Eigen::Index>(i), k) * U(static_cast<Eigen::Index>(i), k) * f;
    }
  }
  return hat;
}

}  // namespace

EvalDiagnostics eval_tsk(const FisModel& model, const Dataset& data, double ridge) {
  EvalDiagnostics out;
  std::vector<std::size_t> dropped;
  DesignMatrix d = design_matrix_dropping(model, data, dropped);
  out.zero_firing = std::move(dropped);
  if (d.rows == 0) {
    throw FisError(Errc::EmptyInput, "eval: every record fires no rule");
  }
  out.n = d.rows;
  out.p = d.cols;
  out.record_index = d.record_index;

  double rss = 0.0;
  out.predictions.reserve(d.rows);
  out.residuals.reserve(d.rows);
  for (std::size_t i = 0; i < d.rows; ++i) {
    double pred = tsk_output(model, data.x[d.record_index[i]]);
    double e = d.y[i] - pred;
    out.predictions.push_back(pred);
    out.residuals.push_back(e);
    rss += e * e;
  }
  out.mse = rss / static_cast<double>(out.n);
  out.rmse = std::sqrt(out.mse);
  out.leverage = hat_diagonal(d, ridge);

  out.deleted_defined = out.n > out.p + 1;
  if (out.deleted_defined) {
    double dof = static_cast<double>(out.n - out.p - 1);
    for (std::size_t i = 0; i < d.rows; ++i) {
      double slack = std::max(1.0 - out.leverage[i], 1e-12);
      out.deleted_mse.push_back((rss - out.residuals[i] * out.residuals[i] / slack) / dof);
    }
  }
  return out;
}

CoaEval eval_coa(const FisModel& model, const Dataset& data) {
  if (model.mode != InferMode::Coa) {
    throw FisError(Errc::ModeMismatch, "eval_coa requires a coa model");
  }
  if (data.size() == 0) throw FisError(Errc::EmptyInput, "eval: empty dataset");
  if (data.n_inputs() != model.inputs.size()) {
    throw FisError(Errc::ArityMismatch, "dataset arity does not match the model");
  }
  CoaEval out;
  double rss = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (!data.y[i].has_value()) continue;
    FiringVector fv = firing_strengths(model, data.x[i]);
    if (!fv.norm_defined) {
      out.zero_firing.push_back(i);
      continue;
    }
    double e = *data.y[i] - coa_from_firing(model, fv);
    rss += e * e;
    ++out.n;
  }
  if (out.n == 0) throw FisError(Errc::EmptyInput, "eval: no labeled record fires");
  out.mse = rss / static_cast<double>(out.n);
  out.rmse = std::sqrt(out.mse);
  return out;
}

}  // namespace fiskit
