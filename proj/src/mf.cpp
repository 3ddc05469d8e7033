#include "fiskit/mf.hpp"

#include <algorithm>
#include <cmath>

#include "fiskit/errors.hpp"

namespace fiskit {
namespace {

// Plateau value at the mean is sigma(kGain/2)^2 = 1 - 2.8e-11 for the sigmoid
// pairs built by mf_from_bounds; the gain must stay >= 43 to keep the peak
// within 1e-9 of one.
constexpr double kSigmoidGain = 50.0;
constexpr double kMinWidth = 1e-6;
constexpr double kFdStep = 1e-6;

double sq(double v) { return v * v; }

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  double e = std::exp(z);
  return e / (1.0 + e);
}

// Quadratic s-ramp: 0 left of a, 1 right of b. A collapsed ramp (a == b) is a
// step whose edge point takes the high value.
double s_part(double x, double a, double b) {
  if (a >= b) return x >= a ? 1.0 : 0.0;
  if (x <= a) return 0.0;
  if (x >= b) return 1.0;
  if (x <= 0.5 * (a + b)) return 2.0 * sq((x - a) / (b - a));
  return 1.0 - 2.0 * sq((x - b) / (b - a));
}

double z_part(double x, double c, double d) {
  if (c >= d) return x <= c ? 1.0 : 0.0;
  if (x <= c) return 1.0;
  if (x >= d) return 0.0;
  if (x <= 0.5 * (c + d)) return 1.0 - 2.0 * sq((x - c) / (d - c));
  return 2.0 * sq((x - d) / (d - c));
}

double eval_triangular(const double* p, double x) {
  double a = p[0], b = p[1], c = p[2];
  if (a == b && b == c) return x == a ? 1.0 : 0.0;
  if (a == b) return (x >= a && x <= c) ? (c - x) / (c - b) : 0.0;
  if (b == c) return (x >= a && x <= c) ? (x - a) / (b - a) : 0.0;
  return std::max(0.0, std::min((x - a) / (b - a), (c - x) / (c - b)));
}

double eval_trapezoidal(const double* p, double x) {
  double a = p[0], b = p[1], c = p[2], d = p[3];
  double rise = (x >= b) ? 1.0 : (x <= a ? 0.0 : (x - a) / (b - a));
  double fall = (x <= c) ? 1.0 : (x >= d ? 0.0 : (d - x) / (d - c));
  return std::min(rise, fall);
}

double eval_gaussian(const double* p, double x) {
  return std::exp(-sq(x - p[0]) / (2.0 * sq(p[1])));
}

double eval_two_side_gaussian(const double* p, double x) {
  double left = x < p[0] ? std::exp(-sq(x - p[0]) / (2.0 * sq(p[1]))) : 1.0;
  double right = x > p[2] ? std::exp(-sq(x - p[2]) / (2.0 * sq(p[3]))) : 1.0;
  return left * right;
}

double eval_bell(const double* p, double x) {
  double t = std::abs((x - p[2]) / p[0]);
  return 1.0 / (1.0 + std::pow(t, 2.0 * p[1]));
}

double eval_product_sigmoid(const double* p, double x) {
  return sigmoid(p[0] * (x - p[1])) * sigmoid(p[2] * (x - p[3]));
}

double eval_diff_sigmoid(const double* p, double x) {
  return std::abs(sigmoid(p[0] * (x - p[1])) - sigmoid(p[2] * (x - p[3])));
}

double eval_pi(const double* p, double x) {
  return s_part(x, p[0], p[1]) * z_part(x, p[2], p[3]);
}

std::vector<double> grad_gaussian(const double* p, double x) {
  double m = p[0], s = p[1];
  double v = eval_gaussian(p, x);
  return {v * (x - m) / sq(s), v * sq(x - m) / (s * s * s)};
}

std::vector<double> grad_two_side_gaussian(const double* p, double x) {
  double m1 = p[0], s1 = p[1], m2 = p[2], s2 = p[3];
  double left = x < m1 ? std::exp(-sq(x - m1) / (2.0 * sq(s1))) : 1.0;
  double right = x > m2 ? std::exp(-sq(x - m2) / (2.0 * sq(s2))) : 1.0;
  std::vector<double> g(4, 0.0);
  if (x < m1) {
    g[0] = right * left * (x - m1) / sq(s1);
    g[1] = right * left * sq(x - m1) / (s1 * s1 * s1);
  }
  if (x > m2) {
    g[2] = left * right * (x - m2) / sq(s2);
    g[3] = left * right * sq(x - m2) / (s2 * s2 * s2);
  }
  return g;
}

std::vector<double> grad_bell(const double* p, double x) {
  double a = p[0], b = p[1], c = p[2];
  if (x == c) return {0.0, 0.0, 0.0};
  double t = std::abs((x - c) / a);
  double tb = std::pow(t, 2.0 * b);
  double v = 1.0 / (1.0 + tb);
  double v2 = v * v;
  double sgn = x > c ? 1.0 : -1.0;
  return {
      (2.0 * b / a) * tb * v2,
      -2.0 * std::log(t) * tb * v2,
      (2.0 * b / a) * sgn * std::pow(t, 2.0 * b - 1.0) * v2,
  };
}

std::vector<double> grad_product_sigmoid(const double* p, double x) {
  double s1 = sigmoid(p[0] * (x - p[1]));
  double s2 = sigmoid(p[2] * (x - p[3]));
  double d1 = s1 * (1.0 - s1);
  double d2 = s2 * (1.0 - s2);
  return {
      s2 * d1 * (x - p[1]),
      s2 * d1 * -p[0],
      s1 * d2 * (x - p[3]),
      s1 * d2 * -p[2],
  };
}

std::vector<double> grad_diff_sigmoid(const double* p, double x) {
  double s1 = sigmoid(p[0] * (x - p[1]));
  double s2 = sigmoid(p[2] * (x - p[3]));
  double d1 = s1 * (1.0 - s1);
  double d2 = s2 * (1.0 - s2);
  double sgn = (s1 - s2) < 0.0 ? -1.0 : 1.0;
  return {
      sgn * d1 * (x - p[1]),
      sgn * d1 * -p[0],
      sgn * -d2 * (x - p[3]),
      sgn * -d2 * -p[2],
  };
}

std::vector<double> grad_fd(const MembershipFunction& mf, double x) {
  std::vector<double> g(mf.params.size());
  MembershipFunction probe = mf;
  for (std::size_t i = 0; i < mf.params.size(); ++i) {
    probe.params[i] = mf.params[i] + kFdStep;
    double hi = eval_mf(probe, x);
    probe.params[i] = mf.params[i] - kFdStep;
    double lo = eval_mf(probe, x);
    probe.params[i] = mf.params[i];
    g[i] = (hi - lo) / (2.0 * kFdStep);
  }
  return g;
}

std::optional<MfIssue> require_sorted(const std::vector<double>& p, std::size_t n) {
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!(p[i] <= p[i + 1])) {
      return MfIssue{MfIssueKind::ParamOrder, "knots must be non-decreasing"};
    }
  }
  return std::nullopt;
}

}  // namespace

std::size_t mf_param_count(MfKind kind) {
  switch (kind) {
    case MfKind::Triangular: return 3;
    case MfKind::Trapezoidal: return 4;
    case MfKind::Gaussian: return 2;
    case MfKind::TwoSideGaussian: return 4;
    case MfKind::BellShape: return 3;
    case MfKind::ProductTwoSigmoid: return 4;
    case MfKind::DiffTwoSigmoid: return 4;
    case MfKind::PiShape: return 4;
  }
  return 0;
}

std::string_view mf_kind_name(MfKind kind) {
  switch (kind) {
    case MfKind::Triangular: return "triangular";
    case MfKind::Trapezoidal: return "trapezoidal";
    case MfKind::Gaussian: return "gaussian";
    case MfKind::TwoSideGaussian: return "two_side_gaussian";
    case MfKind::BellShape: return "bell";
    case MfKind::ProductTwoSigmoid: return "sigmoid_product";
    case MfKind::DiffTwoSigmoid: return "sigmoid_difference";
    case MfKind::PiShape: return "pi_shape";
  }
  return "";
}

std::optional<MfKind> mf_kind_from_name(std::string_view name) {
  for (MfKind kind : kAllMfKinds) {
    if (mf_kind_name(kind) == name) return kind;
  }
  return std::nullopt;
}

bool mf_kind_is_smooth(MfKind kind) {
  switch (kind) {
    case MfKind::Gaussian:
    case MfKind::TwoSideGaussian:
    case MfKind::BellShape:
    case MfKind::ProductTwoSigmoid:
    case MfKind::DiffTwoSigmoid:
      return true;
    default:
      return false;
  }
}

std::optional<MfIssue> validate_mf(const MembershipFunction& mf) {
  const auto& p = mf.params;
  if (p.size() != mf_param_count(mf.kind)) {
    return MfIssue{MfIssueKind::ParamCount,
                   std::string(mf_kind_name(mf.kind)) + " takes " +
                       std::to_string(mf_param_count(mf.kind)) + " parameters, got " +
                       std::to_string(p.size())};
  }
  switch (mf.kind) {
    case MfKind::Triangular:
      return require_sorted(p, 3);
    case MfKind::Trapezoidal:
    case MfKind::PiShape:
      return require_sorted(p, 4);
    case MfKind::Gaussian:
      if (!(p[1] > 0.0)) return MfIssue{MfIssueKind::ParamSign, "sigma must be positive"};
      return std::nullopt;
    case MfKind::TwoSideGaussian:
      if (!(p[1] > 0.0) || !(p[3] > 0.0)) {
        return MfIssue{MfIssueKind::ParamSign, "sigma must be positive"};
      }
      if (!(p[0] <= p[2])) {
        return MfIssue{MfIssueKind::ParamOrder, "left center must not exceed right center"};
      }
      return std::nullopt;
    case MfKind::BellShape:
      if (!(p[0] > 0.0) || !(p[1] > 0.0)) {
        return MfIssue{MfIssueKind::ParamSign, "width and exponent must be positive"};
      }
      return std::nullopt;
    case MfKind::ProductTwoSigmoid:
    case MfKind::DiffTwoSigmoid:
      return std::nullopt;
  }
  return std::nullopt;
}

double eval_mf(const MembershipFunction& mf, double x) {
  const double* p = mf.params.data();
  switch (mf.kind) {
    case MfKind::Triangular: return eval_triangular(p, x);
    case MfKind::Trapezoidal: return eval_trapezoidal(p, x);
    case MfKind::Gaussian: return eval_gaussian(p, x);
    case MfKind::TwoSideGaussian: return eval_two_side_gaussian(p, x);
    case MfKind::BellShape: return eval_bell(p, x);
    case MfKind::ProductTwoSigmoid: return eval_product_sigmoid(p, x);
    case MfKind::DiffTwoSigmoid: return eval_diff_sigmoid(p, x);
    case MfKind::PiShape: return eval_pi(p, x);
  }
  return 0.0;
}

std::vector<double> grad_mf_params(const MembershipFunction& mf, double x) {
  const double* p = mf.params.data();
  switch (mf.kind) {
    case MfKind::Gaussian: return grad_gaussian(p, x);
    case MfKind::TwoSideGaussian: return grad_two_side_gaussian(p, x);
    case MfKind::BellShape: return grad_bell(p, x);
    case MfKind::ProductTwoSigmoid: return grad_product_sigmoid(p, x);
    case MfKind::DiffTwoSigmoid: return grad_diff_sigmoid(p, x);
    default: return grad_fd(mf, x);
  }
}

MembershipFunction mf_from_bounds(MfKind kind, double left, double mean, double right) {
  if (!(left <= mean) || !(mean <= right)) {
    throw FisError(Errc::BoundsOrder, "bounds must satisfy left <= mean <= right");
  }
  double hl = std::max(mean - left, kMinWidth);
  double hr = std::max(right - mean, kMinWidth);
  switch (kind) {
    case MfKind::Triangular:
      return {kind, {left, mean, right}};
    case MfKind::Trapezoidal:
    case MfKind::PiShape:
      return {kind, {left, 0.5 * (left + mean), 0.5 * (mean + right), right}};
    case MfKind::Gaussian:
      return {kind, {mean, std::max((right - left) / 6.0, kMinWidth)}};
    case MfKind::TwoSideGaussian:
      return {kind, {mean, std::max((mean - left) / 3.0, kMinWidth), mean,
                     std::max((right - mean) / 3.0, kMinWidth)}};
    case MfKind::BellShape:
      return {kind, {std::max((right - left) / 4.0, kMinWidth), 2.0, mean}};
    case MfKind::ProductTwoSigmoid:
      return {kind, {kSigmoidGain / hl, mean - 0.5 * hl, -kSigmoidGain / hr, mean + 0.5 * hr}};
    case MfKind::DiffTwoSigmoid:
      return {kind, {kSigmoidGain / hl, mean - 0.5 * hl, kSigmoidGain / hr, mean + 0.5 * hr}};
  }
  throw FisError(Errc::BoundsOrder, "unknown membership function kind");
}

TermBounds bounds_of(const MembershipFunction& mf) {
  const auto& p = mf.params;
  switch (mf.kind) {
    case MfKind::Triangular:
      return {p[0], p[1], p[2]};
    case MfKind::Trapezoidal:
    case MfKind::PiShape:
      return {p[0], 0.5 * (p[1] + p[2]), p[3]};
    case MfKind::Gaussian:
      return {p[0] - 3.0 * p[1], p[0], p[0] + 3.0 * p[1]};
    case MfKind::TwoSideGaussian:
      return {p[0] - 3.0 * p[1], 0.5 * (p[0] + p[2]), p[2] + 3.0 * p[3]};
    case MfKind::BellShape:
      return {p[2] - 2.0 * p[0], p[2], p[2] + 2.0 * p[0]};
    case MfKind::ProductTwoSigmoid:
    case MfKind::DiffTwoSigmoid: {
      double hl = kSigmoidGain / std::max(std::abs(p[0]), kMinWidth);
      double hr = kSigmoidGain / std::max(std::abs(p[2]), kMinWidth);
      double mean = 0.5 * ((p[1] + 0.5 * hl) + (p[3] - 0.5 * hr));
      return {mean - hl, mean, mean + hr};
    }
  }
  return {};
}

double peak_location(const MembershipFunction& mf) {
  const auto& p = mf.params;
  switch (mf.kind) {
    case MfKind::Triangular: return p[1];
    case MfKind::Trapezoidal:
    case MfKind::PiShape: return 0.5 * (p[1] + p[2]);
    case MfKind::Gaussian: return p[0];
    case MfKind::TwoSideGaussian: return 0.5 * (p[0] + p[2]);
    case MfKind::BellShape: return p[2];
    case MfKind::ProductTwoSigmoid:
    case MfKind::DiffTwoSigmoid: return 0.5 * (p[1] + p[3]);
  }
  return 0.0;
}

}  // namespace fiskit
