#include "ck/cktrig.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "ck/errors.hpp"

namespace ck {

namespace {

void require_finite(double kappa, double x) {
    if (!std::isfinite(kappa) || !std::isfinite(x)) throw DomainError("ck trig: non-finite input");
}

}  // namespace

namespace series {

Trig trig(double kappa, double x) {
    const double z = kappa * x * x;
    const double C = 1.0 + z * (-1.0 / 2 + z * (1.0 / 24 + z * (-1.0 / 720 + z * (1.0 / 40320))));
    const double S = x * (1.0 + z * (-1.0 / 6 + z * (1.0 / 120 + z * (-1.0 / 5040 + z * (1.0 / 362880)))));
    const double V =
        x * x * (1.0 / 2 + z * (-1.0 / 24 + z * (1.0 / 720 + z * (-1.0 / 40320 + z * (1.0 / 3628800)))));
    return {C, S, V};
}

}  // namespace series

namespace direct {

Trig trig(double kappa, double x) {
    if (kappa > 0) {
        const double q = std::sqrt(kappa);
        const double h = std::sin(0.5 * q * x);
        return {std::cos(q * x), std::sin(q * x) / q, 2.0 * h * h / kappa};
    }
    if (kappa < 0) {
        const double q = std::sqrt(-kappa);
        const double h = std::sinh(0.5 * q * x);
        return {std::cosh(q * x), std::sinh(q * x) / q, -2.0 * h * h / kappa};
    }
    return {1.0, x, 0.5 * x * x};
}

}  // namespace direct

Trig ck_trig(double kappa, double x) {
    require_finite(kappa, x);
    if (std::abs(kappa) * x * x < kSeriesThreshold) return series::trig(kappa, x);
    return direct::trig(kappa, x);
}

double ck_cos(double kappa, double x) { return ck_trig(kappa, x).C; }
double ck_sin(double kappa, double x) { return ck_trig(kappa, x).S; }
double ck_versin(double kappa, double x) { return ck_trig(kappa, x).V; }

double ck_tan(double kappa, double x) {
    const Trig t = ck_trig(kappa, x);
    if (kappa > 0) {
        const double theta = std::sqrt(kappa) * x;
        const double eps = std::numeric_limits<double>::epsilon();
        if (std::abs(t.C) <= 4.0 * eps * std::max(1.0, std::abs(theta)))
            return std::copysign(std::numeric_limits<double>::infinity(), t.S);
    }
    return t.S / t.C;
}

double ck_atan(double kappa, double y, int branch) {
    if (!std::isfinite(kappa) || std::isnan(y)) throw DomainError("ck_atan: non-finite input");
    if (kappa > 0) {
        const double q = std::sqrt(kappa);
        const double base = std::isinf(y) ? std::copysign(std::numbers::pi / 2, y) / q : std::atan(q * y) / q;
        return base + branch * std::numbers::pi / q;
    }
    if (branch != 0) throw UsageError("ck_atan: nonzero branch needs kappa > 0");
    if (std::isinf(y)) throw DomainError("ck_atan: infinite argument outside range");
    if (kappa == 0) return y;
    const double q = std::sqrt(-kappa);
    if (std::abs(q * y) >= 1.0) throw DomainError("ck_atan: argument outside tanh range");
    return std::atanh(q * y) / q;
}

double ck_asin(double kappa, double y) {
    if (!std::isfinite(kappa) || !std::isfinite(y)) throw DomainError("ck_asin: non-finite input");
    if (kappa > 0) {
        const double q = std::sqrt(kappa);
        double w = q * y;
        if (std::abs(w) > 1.0) {
            if (std::abs(w) > 1.0 + 1e-14) throw DomainError("ck_asin: argument outside sine range");
            w = std::copysign(1.0, w);
        }
        return std::asin(w) / q;
    }
    if (kappa == 0) return y;
    const double q = std::sqrt(-kappa);
    return std::asinh(q * y) / q;
}

double ck_atan2(double kappa, double s, double c) {
    if (!std::isfinite(kappa) || !std::isfinite(s) || !std::isfinite(c))
        throw DomainError("ck_atan2: non-finite input");
    if (kappa > 0) {
        const double q = std::sqrt(kappa);
        return std::atan2(q * s, c) / q;
    }
    if (c <= 0) throw DomainError("ck_atan2: direction outside the cone");
    if (kappa == 0) return s / c;
    const double q = std::sqrt(-kappa);
    const double w = q * s / c;
    if (std::abs(w) >= 1.0) throw DomainError("ck_atan2: direction outside the cone");
    return std::atanh(w) / q;
}

double ck_sin_defect(double kappa, double x) {
    require_finite(kappa, x);
    const double z = kappa * x * x;
    if (std::abs(z) < 1.0) {
        // x^3 * sum_n (-z)^n / (2n+3)!
        double term = 1.0 / 6.0, sum = term;
        for (int n = 1; n < 12; ++n) {
            term *= -z / ((2.0 * n + 2) * (2.0 * n + 3));
            sum += term;
        }
        return x * x * x * sum;
    }
    return (x - direct::trig(kappa, x).S) / kappa;
}

std::complex<double> ck_atan(std::complex<double> kappa, std::complex<double> y) {
    const std::complex<double> z = kappa * y * y;
    if (std::abs(z) < 1e-3) {
        // y * sum_n (-z)^n / (2n+1)
        std::complex<double> pw = 1.0, sum = 1.0;
        for (int n = 1; n < 8; ++n) {
            pw *= -z;
            sum += pw / (2.0 * n + 1);
        }
        return y * sum;
    }
    const std::complex<double> q = std::sqrt(kappa);
    return std::atan(q * y) / q;
}

}  // namespace ck
