#include "fiskit/anfis.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fiskit/errors.hpp"
#include "fiskit/inference.hpp"

namespace fiskit {
namespace {

constexpr double kMinWidth = 1e-6;

void require_tsk(const FisModel& model, const char* op) {
  if (model.mode != InferMode::Tsk) {
    throw FisError(Errc::ModeMismatch, std::string(op) + " requires a tsk model");
  }
}

void require_trainable(const FisModel& model, const Dataset& data, const char* op) {
  require_tsk(model, op);
  if (data.size() == 0) {
    throw FisError(Errc::EmptyInput, std::string(op) + ": empty dataset");
  }
  if (data.n_inputs() != model.inputs.size()) {
    throw FisError(Errc::ArityMismatch,
                   std::string(op) + ": dataset has " + std::to_string(data.n_inputs()) +
                       " input columns, model expects " + std::to_string(model.inputs.size()));
  }
  if (!data.fully_labeled()) {
    throw FisError(Errc::EmptyInput, std::string(op) + ": dataset has unlabeled records");
  }
}

DesignMatrix assemble(const FisModel& model, const Dataset& data,
                      std::vector<std::size_t>* dropped) {
  const std::size_t n = model.inputs.size();
  const std::size_t block = n + 1;
  DesignMatrix d;
  d.cols = model.rules.size() * block;

  std::vector<std::size_t> zero_firing;
  for (std::size_t i = 0; i < data.size(); ++i) {
    FiringVector fv = firing_strengths(model, data.x[i]);
    if (!fv.norm_defined) {
      zero_firing.push_back(i);
      continue;
    }
    std::size_t base = d.a.size();
    d.a.resize(base + d.cols);
    for (std::size_t r = 0; r < model.rules.size(); ++r) {
      if (fv.w[r] == 0.0) continue;
      double* cell = d.a.data() + base + r * block;
      for (std::size_t v = 0; v < n; ++v) cell[v] = fv.w_norm[r] * data.x[i][v];
      cell[n] = fv.w_norm[r];
    }
    d.y.push_back(*data.y[i]);
    d.record_index.push_back(i);
    ++d.rows;
  }
  if (dropped) {
    dropped->insert(dropped->end(), zero_firing.begin(), zero_firing.end());
  } else if (!zero_firing.empty()) {
    throw ZeroFiringRecords(zero_firing, std::to_string(zero_firing.size()) +
                                             " record(s) fire no rule, first at index " +
                                             std::to_string(zero_firing.front()));
  }
  return d;
}

// Flat premise-parameter layout: variables, then terms, then parameters.
struct ParamLayout {
  std::vector<std::vector<std::size_t>> term_offset;  // [var][term] -> flat start
  std::size_t total = 0;
};

ParamLayout premise_layout(const FisModel& model) {
  ParamLayout layout;
  layout.term_offset.resize(model.inputs.size());
  for (std::size_t v = 0; v < model.inputs.size(); ++v) {
    for (const Term& t : model.inputs[v].terms) {
      layout.term_offset[v].push_back(layout.total);
      layout.total += t.mf.params.size();
    }
  }
  return layout;
}

void project_mf(MembershipFunction& mf) {
  auto& p = mf.params;
  switch (mf.kind) {
    case MfKind::Triangular:
    case MfKind::Trapezoidal:
    case MfKind::PiShape:
      std::sort(p.begin(), p.end());
      break;
    case MfKind::Gaussian:
      p[1] = std::max(p[1], kMinWidth);
      break;
    case MfKind::TwoSideGaussian:
      if (p[0] > p[2]) {
        std::swap(p[0], p[2]);
        std::swap(p[1], p[3]);
      }
      p[1] = std::max(p[1], kMinWidth);
      p[3] = std::max(p[3], kMinWidth);
      break;
    case MfKind::BellShape:
      p[0] = std::max(p[0], kMinWidth);
      p[1] = std::max(p[1], kMinWidth);
      break;
    case MfKind::ProductTwoSigmoid:
    case MfKind::DiffTwoSigmoid:
      break;
  }
}

}  // namespace

FisModel build_grid_anfis(const std::vector<LinguisticVariable>& inputs, MfKind kind,
                          TNorm tnorm) {
  if (inputs.empty()) {
    throw FisError(Errc::EmptyInput, "build_grid_anfis: no input variables");
  }
  FisModel model;
  model.mode = InferMode::Tsk;
  model.tnorm = tnorm;
  model.inputs = inputs;
  for (auto& var : model.inputs) {
    for (Term& term : var.terms) {
      if (term.mf.kind == kind) continue;
      TermBounds b = bounds_of(term.mf);
      term.mf = mf_from_bounds(kind, b.left, b.mean, b.right);
    }
  }

  std::size_t n_rules = 1;
  for (const auto& var : model.inputs) n_rules *= var.terms.size();
  std::vector<int> combo(model.inputs.size(), 0);
  for (std::size_t r = 0; r < n_rules; ++r) {
    Rule rule;
    rule.antecedent = combo;
    rule.coeffs.assign(model.inputs.size() + 1, 0.0);
    model.rules.push_back(std::move(rule));
    // Advance the term combination, last variable fastest.
    for (std::size_t v = model.inputs.size(); v-- > 0;) {
      if (++combo[v] < static_cast<int>(model.inputs[v].terms.size())) break;
      combo[v] = 0;
    }
  }
  validate_model(model);
  return model;
}

DesignMatrix design_matrix(const FisModel& model, const Dataset& data) {
  require_trainable(model, data, "design_matrix");
  return assemble(model, data, nullptr);
}

DesignMatrix design_matrix_dropping(const FisModel& model, const Dataset& data,
                                    std::vector<std::size_t>& dropped) {
  require_trainable(model, data, "design_matrix");
  return assemble(model, data, &dropped);
}

LseResult forward_lse(FisModel& model, const Dataset& data, double ridge, bool strict) {
  require_trainable(model, data, "forward_lse");
  if (!(ridge >= 0.0)) {
    throw std::invalid_argument("forward_lse: ridge must be non-negative");
  }
  std::vector<std::size_t> dropped;
  DesignMatrix d = assemble(model, data, strict ? nullptr : &dropped);
  if (d.rows == 0) {
    throw ZeroFiringRecords(dropped, "every record fires no rule");
  }
  for (double v : d.a) {
    if (!std::isfinite(v)) throw FisError(Errc::Singular, "non-finite design matrix entry");
  }
  for (double v : d.y) {
    if (!std::isfinite(v)) throw FisError(Errc::Singular, "non-finite target");
  }

  using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::Map<const Mat> X(d.a.data(), static_cast<Eigen::Index>(d.rows),
                          static_cast<Eigen::Index>(d.cols));
  Eigen::Map<const Eigen::VectorXd> y(d.y.data(), static_cast<Eigen::Index>(d.rows));

  Eigen::BDCSVD<Eigen::MatrixXd> svd(X, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) {
    throw FisError(Errc::Singular, "singular value decomposition failed");
  }
  const Eigen::MatrixXd& U = svd.matrixU();
  const Eigen::MatrixXd& V = svd.matrixV();
  const Eigen::VectorXd& s = svd.singularValues();

  // With ridge = 0 this is the pseudo-inverse: directions below the rank
  // cutoff are zeroed instead of amplified.
  double cutoff = ridge > 0.0
                      ? -1.0
                      : s.size() > 0
                            ? s(0) * std::numeric_limits<double>::epsilon() *
                                  static_cast<double>(std::max(d.rows, d.cols))
                            : 0.0;
  Eigen::VectorXd solve_factor(s.size());
  Eigen::VectorXd hat_factor(s.size());
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    if (s(k) <= cutoff) {
      solve_factor(k) = 0.0;
      hat_factor(k) = 0.0;
    } else {
      solve_factor(k) = s(k) / (s(k) * s(k) + ridge);
      hat_factor(k) = s(k) * s(k) / (s(k) * s(k) + ridge);
    }
  }

  Eigen::VectorXd theta = V * (solve_factor.asDiagonal() * (U.transpose() * y));
  Eigen::VectorXd resid = y - X * theta;

  LseResult result;
  result.theta.assign(theta.data(), theta.data() + theta.size());
  result.residuals.assign(resid.data(), resid.data() + resid.size());
  result.hat_diag.resize(d.rows);
  for (std::size_t i = 0; i < d.rows; ++i) {
    double h = 0.0;
    for (Eigen::Index k = 0; k < s.size(); ++k) {
      h += U(static_cast<Eigen::Index>(i), k) * U(static_cast<Eigen::Index>(i), k) *
           hat_factor(k);
    }
    result.hat_diag[i] = h;
  }
  result.record_index = d.record_index;
  result.rmse = std::sqrt(resid.squaredNorm() / static_cast<double>(d.rows));

  const std::size_t block = model.inputs.size() + 1;
  for (std::size_t r = 0; r < model.rules.size(); ++r) {
    for (std::size_t c = 0; c < block; ++c) {
      model.rules[r].coeffs[c] = result.theta[r * block + c];
    }
  }
  return result;
}

double sse(const FisModel& model, const Dataset& data) {
  require_trainable(model, data, "sse");
  double total = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    FiringVector fv = firing_strengths(model, data.x[i]);
    if (!fv.norm_defined) continue;
    double out = 0.0;
    for (std::size_t r = 0; r < model.rules.size(); ++r) {
      if (fv.w[r] == 0.0) continue;
      out += fv.w_norm[r] * rule_plane_value(model.rules[r], data.x[i]);
    }
    double e = *data.y[i] - out;
    total += e * e;
  }
  return total;
}

std::vector<double> premise_sse_gradient(const FisModel& model, const Dataset& data) {
  require_trainable(model, data, "premise_sse_gradient");
  ParamLayout layout = premise_layout(model);
  std::vector<double> grad(layout.total, 0.0);

  const std::size_t n = model.inputs.size();
  std::vector<double> cx(n);
  std::vector<std::vector<double>> degrees(n);
  std::vector<std::vector<std::vector<double>>> dmu(n);

  for (std::size_t i = 0; i < data.size(); ++i) {
    for (std::size_t v = 0; v < n; ++v) {
      cx[v] = std::clamp(data.x[i][v], model.inputs[v].lo, model.inputs[v].hi);
      degrees[v] = fuzzify(model.inputs[v], data.x[i][v]);
      dmu[v].resize(model.inputs[v].terms.size());
      for (std::size_t t = 0; t < model.inputs[v].terms.size(); ++t) {
        dmu[v][t] = grad_mf_params(model.inputs[v].terms[t].mf, cx[v]);
      }
    }

    double total_w = 0.0;
    std::vector<double> w(model.rules.size());
    std::vector<double> plane(model.rules.size());
    for (std::size_t r = 0; r < model.rules.size(); ++r) {
      const Rule& rule = model.rules[r];
      double wr = model.tnorm == TNorm::Product ? 1.0 : 2.0;
      for (std::size_t v = 0; v < n; ++v) {
        double mu = degrees[v][rule.antecedent[v]];
        wr = model.tnorm == TNorm::Product ? wr * mu : std::min(wr, mu);
      }
      w[r] = wr;
      total_w += wr;
      plane[r] = rule_plane_value(rule, data.x[i]);
    }
    if (!(total_w > 0.0)) continue;

    double yhat = 0.0;
    for (std::size_t r = 0; r < model.rules.size(); ++r) yhat += w[r] * plane[r];
    yhat /= total_w;
    double err = *data.y[i] - yhat;

    for (std::size_t r = 0; r < model.rules.size(); ++r) {
      const Rule& rule = model.rules[r];
      double common = -2.0 * err * (plane[r] - yhat) / total_w;
      for (std::size_t v = 0; v < n; ++v) {
        double dw_dmu;
        if (model.tnorm == TNorm::Product) {
          // Product of the other antecedent degrees.
          dw_dmu = 1.0;
          for (std::size_t u = 0; u < n; ++u) {
            if (u != v) dw_dmu *= degrees[u][rule.antecedent[u]];
          }
        } else {
          // Min passes the gradient through its first attaining argument.
          std::size_t argmin = 0;
          double best = degrees[0][rule.antecedent[0]];
          for (std::size_t u = 1; u < n; ++u) {
            double mu = degrees[u][rule.antecedent[u]];
            if (mu < best) {
              best = mu;
              argmin = u;
            }
          }
          dw_dmu = argmin == v ? 1.0 : 0.0;
        }
        if (dw_dmu == 0.0) continue;
        int t = rule.antecedent[v];
        const auto& g = dmu[v][t];
        std::size_t offset = layout.term_offset[v][t];
        for (std::size_t j = 0; j < g.size(); ++j) {
          grad[offset + j] += common * dw_dmu * g[j];
        }
      }
    }
  }
  return grad;
}

void backward_gd(FisModel& model, const Dataset& data, double learn_rate) {
  if (learn_rate == 0.0) return;
  std::vector<double> grad = premise_sse_gradient(model, data);
  // Norm-clipped step: plain learn_rate * gradient while the gradient is
  // small, a step of length learn_rate along its direction once the norm
  // exceeds one. A raw step scales with the record count and overshoots on
  // full batches; clipping bounds the move in parameter space while staying
  // an exact gradient step near a stationary point.
  double norm = 0.0;
  for (double g : grad) norm += g * g;
  norm = std::sqrt(norm);
  if (!std::isfinite(norm)) return;
  const double scale = learn_rate / std::max(1.0, norm);
  ParamLayout layout = premise_layout(model);
  for (std::size_t v = 0; v < model.inputs.size(); ++v) {
    for (std::size_t t = 0; t < model.inputs[v].terms.size(); ++t) {
      MembershipFunction& mf = model.inputs[v].terms[t].mf;
      std::size_t offset = layout.term_offset[v][t];
      for (std::size_t j = 0; j < mf.params.size(); ++j) {
        mf.params[j] -= scale * grad[offset + j];
      }
      project_mf(mf);
    }
  }
}

TrainReport train(FisModel& model, const Dataset& train_data, const Dataset* test_data,
                  const TrainConfig& cfg) {
  require_trainable(model, train_data, "train");
  if (cfg.epochs < 1) throw std::invalid_argument("train: epochs must be >= 1");

  TrainReport report;
  double prev_rmse = 0.0;
  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    LseResult lse = forward_lse(model, train_data, cfg.ridge);
    report.rmse_per_epoch.push_back(lse.rmse);
    report.excluded_per_epoch.push_back(train_data.size() - lse.record_index.size());
    report.epochs_run = epoch;
    if (epoch > 1 && prev_rmse - lse.rmse < cfg.tol) {
      report.stopped_early = true;
      break;
    }
    prev_rmse = lse.rmse;
    // The step runs only between epochs so the returned model is the one whose
    // RMSE was recorded last.
    if (epoch < cfg.epochs) backward_gd(model, train_data, cfg.learn_rate);
  }
  report.final_train_rmse = report.rmse_per_epoch.back();

  if (test_data && test_data->size() > 0) {
    double total = 0.0;
    std::size_t kept = 0;
    for (std::size_t i = 0; i < test_data->size(); ++i) {
      if (!test_data->y[i].has_value()) continue;
      FiringVector fv = firing_strengths(model, test_data->x[i]);
      if (!fv.norm_defined) continue;
      double e = *test_data->y[i] - tsk_output(model, test_data->x[i]);
      total += e * e;
      ++kept;
    }
    if (kept > 0) {
      report.final_test_rmse = std::sqrt(total / static_cast<double>(kept));
    }
  }
  return report;
}

double predict(const FisModel& model, std::span<const double> input) {
  return tsk_output(model, input);
}

}  // namespace fiskit
