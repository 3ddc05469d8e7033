#include <cmath>
#include <random>

#include "doctest.h"
#include "fiskit/errors.hpp"
#include "fiskit/mf.hpp"
#include "fiskit/terrorism.hpp"

using namespace fiskit;

TEST_CASE("triangular evaluates piecewise linearly and vanishes outside support") {
  MembershipFunction mf{MfKind::Triangular, {0, 1, 9}};
  CHECK(eval_mf(mf, 0.5) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(eval_mf(mf, 1.0) == 1.0);
  CHECK(eval_mf(mf, 3.0) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(eval_mf(mf, 9.0) == 0.0);
  CHECK(eval_mf(mf, -2.0) == 0.0);
  CHECK(eval_mf(mf, 25.0) == 0.0);
}

TEST_CASE("collapsed shoulder knots keep the peak instead of degenerating to zero") {
  // A shared left knot (a == b) makes the rising edge a step, not a spike.
  MembershipFunction left{MfKind::Triangular, {0, 0, 1.2}};
  CHECK(eval_mf(left, 0.0) == 1.0);
  CHECK(eval_mf(left, 0.6) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(eval_mf(left, 1.2) == 0.0);

  MembershipFunction right{MfKind::Triangular, {2.8, 4, 4}};
  CHECK(eval_mf(right, 4.0) == 1.0);
  CHECK(eval_mf(right, 4.0001) == 0.0);

  MembershipFunction point{MfKind::Triangular, {3, 3, 3}};
  CHECK(eval_mf(point, 3.0) == 1.0);
  CHECK(eval_mf(point, 3.0000001) == 0.0);

  MembershipFunction trap{MfKind::Trapezoidal, {1, 1, 2, 3}};
  CHECK(eval_mf(trap, 1.0) == 1.0);

  MembershipFunction pi{MfKind::PiShape, {2, 2, 3, 3}};
  CHECK(eval_mf(pi, 2.0) == 1.0);
  CHECK(eval_mf(pi, 3.0) == 1.0);
  CHECK(eval_mf(pi, 1.9999) == 0.0);
}

TEST_CASE("trapezoidal plateau and slopes") {
  MembershipFunction mf{MfKind::Trapezoidal, {1, 2, 5, 9}};
  CHECK(eval_mf(mf, 2.0) == 1.0);
  CHECK(eval_mf(mf, 4.0) == 1.0);
  CHECK(eval_mf(mf, 5.0) == 1.0);
  CHECK(eval_mf(mf, 6.0) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(eval_mf(mf, 10.0) == 0.0);
}

TEST_CASE("gaussian and two-side gaussian agree where the sides coincide") {
  MembershipFunction g{MfKind::Gaussian, {2, 1.5}};
  MembershipFunction g2{MfKind::TwoSideGaussian, {2, 1.5, 2, 1.5}};
  for (double x : {-1.0, 0.3, 2.0, 2.7, 6.0}) {
    CHECK(eval_mf(g, x) == doctest::Approx(eval_mf(g2, x)).epsilon(1e-15));
  }
  // Distinct centers create a unit plateau between them.
  MembershipFunction wide{MfKind::TwoSideGaussian, {1, 0.5, 3, 2}};
  CHECK(eval_mf(wide, 1.0) == 1.0);
  CHECK(eval_mf(wide, 1.7) == 1.0);
  CHECK(eval_mf(wide, 3.0) == 1.0);
  CHECK(eval_mf(wide, 0.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-15));
}

TEST_CASE("bell shape is symmetric around its center with half height at c +- a") {
  MembershipFunction mf{MfKind::BellShape, {2, 3, 5}};
  CHECK(eval_mf(mf, 5.0) == 1.0);
  CHECK(eval_mf(mf, 3.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(eval_mf(mf, 7.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(eval_mf(mf, 4.0) == doctest::Approx(eval_mf(mf, 6.0)).epsilon(1e-15));
}

TEST_CASE("sigmoid product and difference stay within [0, 1] and peak between centers") {
  MembershipFunction prod{MfKind::ProductTwoSigmoid, {2, 1, -1.5, 6}};
  MembershipFunction diff{MfKind::DiffTwoSigmoid, {2, 2, 2, 6}};
  std::mt19937_64 gen(42);
  for (int i = 0; i < 200; ++i) {
    double x = -5.0 + 15.0 * (static_cast<double>(gen() >> 11) * 0x1.0p-53);
    for (const auto& mf : {prod, diff}) {
      double v = eval_mf(mf, x);
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
  }
  CHECK(eval_mf(prod, 3.5) > eval_mf(prod, -2.0));
  CHECK(eval_mf(prod, 3.5) > eval_mf(prod, 9.0));
  CHECK(eval_mf(diff, 4.0) > 0.96);
}

TEST_CASE("pi shape rises as a smooth s curve and falls as its mirror") {
  MembershipFunction mf{MfKind::PiShape, {1, 3, 5, 8}};
  CHECK(eval_mf(mf, 1.5) == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(eval_mf(mf, 2.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(eval_mf(mf, 4.0) == 1.0);
  CHECK(eval_mf(mf, 6.0) == doctest::Approx(7.0 / 9.0).epsilon(1e-15));
  CHECK(eval_mf(mf, 9.0) == 0.0);
}

TEST_CASE("validate_mf reports arity, ordering, and sign violations") {
  auto issue = validate_mf(MembershipFunction{MfKind::Triangular, {1, 2}});
  REQUIRE(issue.has_value());
  CHECK(issue->kind == MfIssueKind::ParamCount);

  issue = validate_mf(MembershipFunction{MfKind::Triangular, {3, 2, 5}});
  REQUIRE(issue.has_value());
  CHECK(issue->kind == MfIssueKind::ParamOrder);

  issue = validate_mf(MembershipFunction{MfKind::Gaussian, {0, -1}});
  REQUIRE(issue.has_value());
  CHECK(issue->kind == MfIssueKind::ParamSign);

  issue = validate_mf(MembershipFunction{MfKind::BellShape, {1, 0, 2}});
  REQUIRE(issue.has_value());
  CHECK(issue->kind == MfIssueKind::ParamSign);

  CHECK_FALSE(validate_mf(MembershipFunction{MfKind::Trapezoidal, {1, 2, 2, 3}}).has_value());
  CHECK(validate_mf(MembershipFunction{MfKind::TwoSideGaussian, {3, 1, 2, 1}}).has_value());
}

TEST_CASE("every family built from term bounds peaks at 1 on the mean") {
  for (const DomainTermBounds& row : terrorism_term_bounds()) {
    for (MfKind kind : kAllMfKinds) {
      MembershipFunction mf = mf_from_bounds(kind, row.left, row.mean, row.right);
      CAPTURE(mf_kind_name(kind));
      CAPTURE(row.variable);
      CAPTURE(row.label);
      CHECK_FALSE(validate_mf(mf).has_value());
      CHECK(eval_mf(mf, row.mean) == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("mf_from_bounds rejects disordered bounds") {
  CHECK_THROWS_AS(mf_from_bounds(MfKind::Triangular, 2, 1, 3), FisError);
  CHECK_THROWS_AS(mf_from_bounds(MfKind::Gaussian, 0, 4, 3), FisError);
}

TEST_CASE("membership built from bounds decays towards the far side of its support") {
  // Values well outside [lo, hi] must be (near) zero so neighbouring terms can
  // take over; smooth families only reach zero asymptotically.
  for (MfKind kind : kAllMfKinds) {
    MembershipFunction mf = mf_from_bounds(kind, 6, 13, 20);
    CAPTURE(mf_kind_name(kind));
    CHECK(eval_mf(mf, -8.0) < 1e-3);
    CHECK(eval_mf(mf, 34.0) < 1e-3);
  }
}

TEST_CASE("analytic parameter gradients match central differences on smooth families") {
  const double h = 1e-6;
  std::mt19937_64 gen(7);
  auto uniform = [&](double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(gen() >> 11) * 0x1.0p-53);
  };
  std::vector<MembershipFunction> mfs = {
      {MfKind::Gaussian, {2, 1.5}},
      {MfKind::TwoSideGaussian, {1, 0.5, 3, 2}},
      {MfKind::BellShape, {2, 3, 5}},
      {MfKind::ProductTwoSigmoid, {2, 1, -1.5, 6}},
      {MfKind::DiffTwoSigmoid, {2, 2, 2, 6}},
  };
  for (const auto& mf : mfs) {
    REQUIRE(mf_kind_is_smooth(mf.kind));
    for (int trial = 0; trial < 25; ++trial) {
      double x = uniform(-2.0, 9.0);
      if (mf.kind == MfKind::BellShape && std::fabs(x - mf.params[2]) < 0.05) continue;
      std::vector<double> grad = grad_mf_params(mf, x);
      REQUIRE(grad.size() == mf.params.size());
      for (std::size_t p = 0; p < mf.params.size(); ++p) {
        MembershipFunction up = mf;
        MembershipFunction down = mf;
        up.params[p] += h;
        down.params[p] -= h;
        double fd = (eval_mf(up, x) - eval_mf(down, x)) / (2 * h);
        double rel = std::fabs(grad[p] - fd) /
                     std::max({1.0, std::fabs(grad[p]), std::fabs(fd)});
        CAPTURE(mf_kind_name(mf.kind));
        CAPTURE(x);
        CAPTURE(p);
        CHECK(rel <= 1e-4);
      }
    }
  }
}

TEST_CASE("piecewise families get finite-difference gradients of matching arity") {
  for (MfKind kind : {MfKind::Triangular, MfKind::Trapezoidal, MfKind::PiShape}) {
    MembershipFunction mf = mf_from_bounds(kind, 0, 5, 10);
    auto grad = grad_mf_params(mf, 3.7);
    CHECK(grad.size() == mf_param_count(kind));
    for (double g : grad) CHECK(std::isfinite(g));
  }
}

TEST_CASE("peak_location returns the maximizing abscissa for every family") {
  for (MfKind kind : kAllMfKinds) {
    MembershipFunction mf = mf_from_bounds(kind, 1, 2.5, 4);
    double peak = peak_location(mf);
    CAPTURE(mf_kind_name(kind));
    CHECK(eval_mf(mf, peak) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(peak == doctest::Approx(2.5).epsilon(1e-9));
  }
  CHECK(peak_location({MfKind::Trapezoidal, {0, 2, 6, 8}}) == 4.0);
  CHECK(peak_location({MfKind::BellShape, {2, 3, 5}}) == 5.0);
}

TEST_CASE("bounds_of inverts mf_from_bounds for every family") {
  for (MfKind kind : kAllMfKinds) {
    MembershipFunction mf = mf_from_bounds(kind, 6, 13, 20);
    TermBounds b = bounds_of(mf);
    CAPTURE(mf_kind_name(kind));
    CHECK(b.mean == doctest::Approx(13.0).epsilon(1e-9));
    MembershipFunction rebuilt = mf_from_bounds(kind, b.left, b.mean, b.right);
    REQUIRE(rebuilt.params.size() == mf.params.size());
    for (std::size_t p = 0; p < mf.params.size(); ++p) {
      CHECK(rebuilt.params[p] == doctest::Approx(mf.params[p]).epsilon(1e-9));
    }
  }
}

TEST_CASE("kind names round-trip") {
  for (MfKind kind : kAllMfKinds) {
    auto parsed = mf_kind_from_name(std::string(mf_kind_name(kind)));
    REQUIRE(parsed.has_value());
    CHECK(*parsed == kind);
  }
  CHECK_FALSE(mf_kind_from_name("sombrero").has_value());
}
