#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "fiskit/anfis.hpp"
#include "fiskit/diagnostics.hpp"
#include "fiskit/errors.hpp"
#include "fiskit/inference.hpp"
#include "fiskit/terrorism.hpp"

using namespace fiskit;

namespace {

// Single always-on rule over one input: the model is an ordinary straight-line
// fit y = p1*x + p2, which makes every diagnostic checkable by hand.
FisModel line_model(double slope, double intercept) {
  FisModel m;
  m.mode = InferMode::Tsk;
  m.tnorm = TNorm::Product;
  m.inputs = {{"x", -100.0, 100.0, {{"any", {MfKind::Gaussian, {0.0, 1e6}}}}}};
  m.rules = {{{0}, -1, {slope, intercept}}};
  return m;
}

Dataset line_data(const std::vector<double>& xs, const std::vector<double>& ys) {
  Dataset d;
  d.columns = {"x", "y"};
  for (std::size_t i = 0; i < xs.size(); ++i) {
    d.x.push_back({xs[i]});
    d.y.push_back(ys[i]);
  }
  return d;
}

// Straight-line least squares on all records except `skip`.
void fit_without(const std::vector<double>& xs, const std::vector<double>& ys,
                 std::size_t skip, double& slope, double& intercept) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  double n = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i == skip) continue;
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
    n += 1;
  }
  double det = n * sxx - sx * sx;
  slope = (n * sxy - sx * sy) / det;
  intercept = (sy * sxx - sx * sxy) / det;
}

}  // namespace

TEST_CASE("evaluation reports residuals and the error of the model as given") {
  FisModel m = line_model(2.0, -1.0);
  Dataset d = line_data({0, 1, 2, 3}, {-1.0, 1.5, 3.0, 4.5});
  EvalDiagnostics diag = eval_tsk(m, d);
  CHECK(diag.n == 4);
  CHECK(diag.p == 2);
  REQUIRE(diag.predictions.size() == 4);
  CHECK(diag.predictions[0] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(diag.predictions[3] == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(diag.residuals[1] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(diag.residuals[3] == doctest::Approx(-0.5).epsilon(1e-12));
  double mse = (0.0 + 0.25 + 0.0 + 0.25) / 4.0;
  CHECK(diag.mse == doctest::Approx(mse).epsilon(1e-12));
  CHECK(diag.rmse == doctest::Approx(std::sqrt(mse)).epsilon(1e-12));
}

TEST_CASE("evaluation leaves the model's coefficients alone") {
  FisModel m = line_model(0.5, 4.0);
  FisModel before = m;
  Dataset d = line_data({1, 2, 3, 4, 5}, {2, 1, 4, 3, 6});
  eval_tsk(m, d);
  CHECK(m == before);
}

TEST_CASE("leverage diagonal sums to the parameter count on a full-rank fit") {
  std::mt19937_64 gen(77);
  auto uniform = [&](double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(gen() >> 11) * 0x1.0p-53);
  };
  std::vector<double> xs, ys;
  for (int i = 0; i < 12; ++i) {
    xs.push_back(uniform(-5, 5));
    ys.push_back(uniform(-2, 2));
  }
  FisModel m = line_model(1.0, 0.0);
  EvalDiagnostics diag = eval_tsk(m, line_data(xs, ys));
  double trace = 0.0;
  for (double h : diag.leverage) {
    CHECK(h >= -1e-12);
    CHECK(h <= 1.0 + 1e-12);
    trace += h;
  }
  CHECK(trace == doctest::Approx(static_cast<double>(diag.p)).epsilon(1e-9));
}

TEST_CASE("deleted error matches a brute-force leave-one-out refit") {
  std::vector<double> xs = {0.4, 1.1, 2.0, 2.6, 3.3, 4.8, 5.5, 6.1, 7.7, 9.2};
  std::vector<double> ys = {1.0, 1.9, 2.2, 3.5, 3.1, 5.2, 5.4, 6.5, 7.4, 9.6};
  FisModel m = line_model(0.0, 0.0);
  Dataset d = line_data(xs, ys);
  forward_lse(m, d, 0.0);
  EvalDiagnostics diag = eval_tsk(m, d);
  REQUIRE(diag.deleted_defined);
  REQUIRE(diag.deleted_mse.size() == xs.size());

  for (std::size_t skip = 0; skip < xs.size(); ++skip) {
    double slope, intercept;
    fit_without(xs, ys, skip, slope, intercept);
    double rss = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (i == skip) continue;
      double e = ys[i] - (slope * xs[i] + intercept);
      rss += e * e;
    }
    double expected = rss / static_cast<double>(xs.size() - 2 - 1);
    CHECK(diag.deleted_mse[skip] == doctest::Approx(expected).epsilon(1e-8));
  }
}

TEST_CASE("deleted error is undefined without spare degrees of freedom") {
  FisModel m = line_model(1.0, 0.0);
  // n = p + 1 = 3: one spare record is not enough.
  EvalDiagnostics diag = eval_tsk(m, line_data({1, 2, 3}, {1, 2, 4}));
  CHECK_FALSE(diag.deleted_defined);
  CHECK(diag.deleted_mse.empty());

  EvalDiagnostics ok = eval_tsk(m, line_data({1, 2, 3, 4}, {1, 2, 4, 4}));
  CHECK(ok.deleted_defined);
}

TEST_CASE("crisp center-average evaluation measures the expert model's own error") {
  FisModel expert = default_terrorism_fis();
  Dataset d = gen_synthetic(100, 5, expert);
  CoaEval eval = eval_coa(expert, d);
  CHECK(eval.n == 100);
  CHECK(eval.zero_firing.empty());

  double total = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    double e = coa_output(expert, d.x[i]) - *d.y[i];
    total += e * e;
  }
  CHECK(eval.mse == doctest::Approx(total / 100.0).epsilon(1e-12));
  CHECK(eval.rmse == doctest::Approx(std::sqrt(total / 100.0)).epsilon(1e-12));
}

TEST_CASE("evaluating an empty or fully unlabeled dataset is an error") {
  FisModel m = line_model(1.0, 0.0);
  Dataset empty;
  empty.columns = {"x", "y"};
  CHECK_THROWS_AS(eval_tsk(m, empty), FisError);
}
