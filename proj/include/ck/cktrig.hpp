#pragma once

#include <cmath>
#include <complex>

namespace ck {

// Below this value of |kappa| x^2 the C, S, V triple is evaluated from its
// Taylor polynomial in z = kappa x^2 instead of cos/sin/cosh/sinh.
inline constexpr double kSeriesThreshold = 1e-4;

struct Trig {
    double C;
    double S;
    double V;
};

[[nodiscard]] Trig ck_trig(double kappa, double x);

[[nodiscard]] double ck_cos(double kappa, double x);
[[nodiscard]] double ck_sin(double kappa, double x);
[[nodiscard]] double ck_versin(double kappa, double x);

// S/C. At a zero of C the result is +inf or -inf (sign of S), never NaN.
[[nodiscard]] double ck_tan(double kappa, double x);

[[nodiscard]] inline bool is_pole(double t) { return std::isinf(t); }

// Inverse of ck_tan. For kappa > 0 the principal range is (-q, q) with
// q = pi / (2 sqrt(kappa)); branch b adds b * pi / sqrt(kappa). y may be +-inf
// for kappa > 0. For kappa <= 0 only branch 0 exists.
[[nodiscard]] double ck_atan(double kappa, double y, int branch = 0);

// Inverse of ck_sin on its principal range.
[[nodiscard]] double ck_asin(double kappa, double y);

// Angle-like inverse: the x with (C, S) proportional to (c, s) for kappa > 0
// (range (-pi/sqrt(kappa), pi/sqrt(kappa)]); for kappa <= 0 requires c > 0.
[[nodiscard]] double ck_atan2(double kappa, double s, double c);

// (x - S_kappa(x)) / kappa, the integral of V_kappa from 0 to x.
[[nodiscard]] double ck_sin_defect(double kappa, double x);

// Principal ArcT for a complex label and argument: atan(sqrt(k) y)/sqrt(k),
// continuous through k = 0.
[[nodiscard]] std::complex<double> ck_atan(std::complex<double> kappa, std::complex<double> y);

namespace series {
[[nodiscard]] Trig trig(double kappa, double x);
}
namespace direct {
[[nodiscard]] Trig trig(double kappa, double x);
}

}  // namespace ck
