#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "fiskit/errors.hpp"
#include "fiskit/inference.hpp"
#include "fiskit/terrorism.hpp"

using namespace fiskit;

namespace {

// Two overlapping triangles on [0, 10], peaks at 2 and 8.
LinguisticVariable small_var(std::string name) {
  return {std::move(name),
          0.0,
          10.0,
          {{"low", {MfKind::Triangular, {0, 2, 9}}},
           {"high", {MfKind::Triangular, {1, 8, 10}}}}};
}

FisModel two_rule_coa() {
  FisModel m;
  m.mode = InferMode::Coa;
  m.tnorm = TNorm::Product;
  m.inputs = {small_var("a")};
  m.output = {"out",
              0.0,
              1.0,
              {{"small", {MfKind::Triangular, {0, 0.2, 0.4}}},
               {"large", {MfKind::Triangular, {0.6, 0.8, 1.0}}}}};
  m.rules = {{{0}, 0, {}}, {{1}, 1, {}}};
  return m;
}

}  // namespace

TEST_CASE("fuzzify clamps to the variable range before evaluating") {
  LinguisticVariable var = small_var("a");
  std::vector<double> inside = fuzzify(var, 10.0);
  std::vector<double> beyond = fuzzify(var, 250.0);
  CHECK(inside == beyond);
  CHECK(fuzzify(var, -3.0) == fuzzify(var, 0.0));
  CHECK_THROWS_AS(fuzzify(var, std::nan("")), FisError);
}

TEST_CASE("product and min firings differ exactly as the t-norms do") {
  FisModel m;
  m.mode = InferMode::Tsk;
  m.inputs = {small_var("a"), small_var("b")};
  m.rules = {{{0, 1}, -1, {0, 0, 1}}};

  std::vector<double> x = {2.0, 2.0};  // mu_low(2) = 1, mu_high(2) = 1/7
  m.tnorm = TNorm::Product;
  FiringVector prod = firing_strengths(m, x);
  m.tnorm = TNorm::Min;
  FiringVector mn = firing_strengths(m, x);
  CHECK(prod.w[0] == doctest::Approx(1.0 / 7.0).epsilon(1e-12));
  CHECK(mn.w[0] == doctest::Approx(1.0 / 7.0).epsilon(1e-12));

  x = {2.0, 5.0};  // mu_low(5) = 4/7, mu_high(5) = 4/7
  m.rules = {{{0, 0}, -1, {0, 0, 1}}};
  m.tnorm = TNorm::Product;
  prod = firing_strengths(m, x);
  m.tnorm = TNorm::Min;
  mn = firing_strengths(m, x);
  CHECK(prod.w[0] == doctest::Approx(4.0 / 7.0).epsilon(1e-12));
  CHECK(mn.w[0] == doctest::Approx(4.0 / 7.0).epsilon(1e-12));
  CHECK(prod.w[0] == doctest::Approx(mn.w[0]).epsilon(1e-12));

  x = {2.0, 8.0};  // mu_low: 1 and 1/7
  m.tnorm = TNorm::Product;
  prod = firing_strengths(m, x);
  m.tnorm = TNorm::Min;
  mn = firing_strengths(m, x);
  CHECK(prod.w[0] == doctest::Approx(1.0 / 7.0).epsilon(1e-12));
  CHECK(mn.w[0] == doctest::Approx(1.0 / 7.0).epsilon(1e-12));
}

TEST_CASE("normalized firing strengths sum to one whenever any rule fires") {
  FisModel model = default_terrorism_fis();
  std::mt19937_64 gen(123);
  auto uniform = [&](double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(gen() >> 11) * 0x1.0p-53);
  };
  for (TNorm tnorm : {TNorm::Product, TNorm::Min}) {
    model.tnorm = tnorm;
    for (int i = 0; i < 1000; ++i) {
      std::vector<double> x = {uniform(0, 25), uniform(0, 4), uniform(0, 4)};
      FiringVector fv = firing_strengths(model, x);
      REQUIRE(fv.norm_defined);
      double sum = 0.0;
      for (double w : fv.w_norm) sum += w;
      CHECK(std::fabs(sum - 1.0) <= 1e-9);
    }
  }
}

TEST_CASE("tsk output is the firing-weighted mean of the rule planes") {
  FisModel m;
  m.mode = InferMode::Tsk;
  m.tnorm = TNorm::Product;
  m.inputs = {small_var("a")};
  m.rules = {{{0}, -1, {2.0, 1.0}}, {{1}, -1, {-1.0, 10.0}}};

  // At x = 5: mu_low = 4/7, mu_high = 4/7, planes 11 and 5.
  double expected = 0.5 * 11.0 + 0.5 * 5.0;
  CHECK(tsk_output(m, std::vector<double>{5.0}) == doctest::Approx(expected).epsilon(1e-12));

  // At the left peak rule 0 fires fully (plane 5), rule 1 at 1/7 (plane 8).
  CHECK(tsk_output(m, std::vector<double>{2.0}) ==
        doctest::Approx((1.0 * 5.0 + (1.0 / 7.0) * 8.0) / (1.0 + 1.0 / 7.0))
            .epsilon(1e-12));
  CHECK_THROWS_AS(tsk_output(two_rule_coa(), std::vector<double>{2.0}), FisError);
}

TEST_CASE("coa output averages consequent gravities by firing strength") {
  FisModel m = two_rule_coa();
  // At x = 1 the high term is still zero, so the output is the low gravity.
  CHECK(coa_output(m, std::vector<double>{1.0}) == doctest::Approx(0.2).epsilon(1e-12));
  // At x = 5 both fire with 4/7: midway between the gravities.
  CHECK(coa_output(m, std::vector<double>{5.0}) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_THROWS_AS(coa_output(default_terrorism_fis(), std::vector<double>{25, 3}), FisError);
}

TEST_CASE("classification picks the largest activation and reports the crisp value") {
  FisModel model = default_terrorism_fis();
  ClassifyResult r = classify(model, std::vector<double>{25.0, 3.0, 3.0});
  CHECK(r.label == "high");
  CHECK(r.class_index == 3);
  CHECK(r.crisp == doctest::Approx(4.0).epsilon(1e-12));
  double sum = 0.0;
  for (double a : r.activations) sum += a;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("activation ties resolve to the lower output term index") {
  FisModel m = two_rule_coa();
  ClassifyResult r = classify(m, std::vector<double>{5.0});
  CHECK(r.activations[0] == doctest::Approx(r.activations[1]).epsilon(1e-12));
  CHECK(r.class_index == 0);
  CHECK(r.label == "small");
}

TEST_CASE("inputs that fire no rule raise ZeroFiring") {
  FisModel m = two_rule_coa();
  // Touching supports: both memberships are exactly zero only at the far ends.
  m.inputs[0].terms[0].mf = {MfKind::Triangular, {0, 2, 5}};
  m.inputs[0].terms[1].mf = {MfKind::Triangular, {5, 8, 10}};
  try {
    classify(m, std::vector<double>{5.0});
    FAIL("expected ZeroFiring");
  } catch (const FisError& e) {
    CHECK(e.code() == Errc::ZeroFiring);
  }
}

TEST_CASE("batch aggregation counts zero-firing records without aborting") {
  FisModel m = two_rule_coa();
  m.inputs[0].terms[0].mf = {MfKind::Triangular, {0, 2, 5}};
  m.inputs[0].terms[1].mf = {MfKind::Triangular, {5, 8, 10}};
  std::vector<std::vector<double>> records = {{2.0}, {5.0}, {8.0}, {7.0}};
  ClassScoreReport rep = aggregate_class_scores(m, records);
  CHECK(rep.n_records == 4);
  CHECK(rep.n_classified == 3);
  CHECK(rep.n_zero_firing == 1);
  REQUIRE(rep.labels.size() == 2);
  CHECK(rep.per_class[0].memberships.size() == rep.n_classified);
  CHECK_THROWS_AS(aggregate_class_scores(m, {}), FisError);
}

TEST_CASE("mismatched input arity is rejected") {
  FisModel model = default_terrorism_fis();
  CHECK_THROWS_AS(firing_strengths(model, std::vector<double>{1.0, 2.0}), FisError);
}
