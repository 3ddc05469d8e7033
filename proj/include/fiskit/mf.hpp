#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fiskit {

/// Membership function families. Parameter layout per kind:
///   Triangular        a, b, c          feet a and c, peak b, a <= b <= c
///   Trapezoidal       a, b, c, d       feet a and d, plateau [b, c], a <= b <= c <= d
///   Gaussian          m, sigma         center and width, sigma > 0
///   TwoSideGaussian   m1, s1, m2, s2   left/right half-Gaussians, plateau [m1, m2]
///   BellShape         a, b, c          1 / (1 + |(x - c)/a|^(2b)), a > 0, b > 0
///   ProductTwoSigmoid k1, c1, k2, c2   sigmoid(k1(x-c1)) * sigmoid(k2(x-c2))
///   DiffTwoSigmoid    k1, c1, k2, c2   |sigmoid(k1(x-c1)) - sigmoid(k2(x-c2))|
///   PiShape           a, b, c, d       quadratic rise [a, b], plateau, fall [c, d]
enum class MfKind {
  Triangular,
  Trapezoidal,
  Gaussian,
  TwoSideGaussian,
  BellShape,
  ProductTwoSigmoid,
  DiffTwoSigmoid,
  PiShape,
};

inline constexpr MfKind kAllMfKinds[] = {
    MfKind::Triangular,       MfKind::Trapezoidal,    MfKind::Gaussian,
    MfKind::TwoSideGaussian,  MfKind::BellShape,      MfKind::ProductTwoSigmoid,
    MfKind::DiffTwoSigmoid,   MfKind::PiShape,
};

struct MembershipFunction {
  MfKind kind = MfKind::Triangular;
  std::vector<double> params;

  bool operator==(const MembershipFunction&) const = default;
};

enum class MfIssueKind { ParamCount, ParamOrder, ParamSign };

struct MfIssue {
  MfIssueKind kind;
  std::string message;
};

std::size_t mf_param_count(MfKind kind);

/// Token used in .fis files, CLI flags, and reports.
std::string_view mf_kind_name(MfKind kind);
std::optional<MfKind> mf_kind_from_name(std::string_view name);

/// Checks arity and the kind-specific ordering/sign constraints above.
/// Returns std::nullopt when the function is well formed.
std::optional<MfIssue> validate_mf(const MembershipFunction& mf);

/// Membership degree in [0, 1]. Collapsed knots (a == b, c == d, ...) behave as
/// a shoulder: the value is 1 at the collapsed edge and steps to 0 beyond it.
double eval_mf(const MembershipFunction& mf, double x);

/// Partial derivatives of eval_mf with respect to each parameter, at fixed x.
/// Analytic for the smooth families, central finite differences (h = 1e-6) for
/// the piecewise-linear ones.
std::vector<double> grad_mf_params(const MembershipFunction& mf, double x);

bool mf_kind_is_smooth(MfKind kind);

/// Builds a term of the requested family from a (left, mean, right) support
/// summary. Peaks at `mean` with value 1; effective support roughly
/// [left, right]. Throws FisError(BoundsOrder) unless left <= mean <= right.
MembershipFunction mf_from_bounds(MfKind kind, double left, double mean, double right);

struct TermBounds {
  double left = 0, mean = 0, right = 0;
};

/// Recovers a (left, mean, right) summary from an existing term. Exact inverse
/// of mf_from_bounds for Triangular, Gaussian, TwoSideGaussian, BellShape and
/// the sigmoid pairs; flat-top families (Trapezoidal, PiShape) lose the
/// original mean when the shape is asymmetric, so the plateau midpoint is
/// reported instead.
TermBounds bounds_of(const MembershipFunction& mf);

/// Location of the maximum: the peak knot, or the midpoint of the flat top.
/// Serves as the term's gravity in center-average defuzzification.
double peak_location(const MembershipFunction& mf);

}  // namespace fiskit
