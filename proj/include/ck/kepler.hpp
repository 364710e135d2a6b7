#pragma once

#include <cmath>
#include <limits>

#include "ck/ckspace.hpp"

namespace ck {

struct OrbitParams {
    CKSpace space;
    double k = 1.0;
    double E = 0.0;
    double J = 0.0;  // magnitude; NaN when only kappa2*J^2 was supplied
    double L = 0.0;  // kappa2 * J^2
    double sigma = 0.0;
    double e = 0.0;
    double p = 0.0;        // NaN when there is no real semilatus rectum (kappa2 <= 0)
    double epsilon = 0.0;  // NaN when J is unknown
    double phi0 = 0.0;
    int direction = 1;  // -1 for retrograde motion
    // kappa2 * V_{sigma kappa2}(epsilon) = (1 - e) / sigma; k*A is T(r) at periastron.
    double A = 0.0;

    [[nodiscard]] bool has_J() const { return !std::isnan(J); }
};

// J < 0 selects retrograde motion. Requires kappa2 != 0 unless J == 0.
[[nodiscard]] OrbitParams orbit_from_dynamical(const CKSpace& sp, double k, double E, double J, double phi0 = 0.0);
// Takes L = kappa2 * J^2 instead of J; the only way to describe rotating orbits when kappa2 == 0.
[[nodiscard]] OrbitParams orbit_from_kappa2_J2(const CKSpace& sp, double k, double E, double L, double phi0 = 0.0);
// Eccentricity and semilatus rectum; kappa2 > 0 only.
[[nodiscard]] OrbitParams orbit_from_shape(const CKSpace& sp, double k, double e, double p, double phi0 = 0.0);
[[nodiscard]] OrbitParams orbit_from_sigma(const CKSpace& sp, double k, double sigma, double J, double phi0 = 0.0);

// Impact parameter: C_{sigma kappa2}(eps) = e, S_{sigma kappa2}(eps) = J/k, eps >= 0.
[[nodiscard]] double solve_epsilon(double sigma, double kappa2, double e, double J_over_k);

// s-period 2 pi / sqrt(sigma) of a closed orbit (sigma > 0, kappa2 > 0), else +inf.
[[nodiscard]] double s_period(const OrbitParams& o);

struct RegularizedState {
    double s = 0, u = 0, v = 0, r = 0, phi = 0, t = 0;
};

[[nodiscard]] double r_of_phi(const OrbitParams& o, double phi);
[[nodiscard]] double tan_r_of_s(const OrbitParams& o, double s);
[[nodiscard]] ParallelPoint2 uv_of_s(const OrbitParams& o, double s);
[[nodiscard]] double r_of_s(const OrbitParams& o, double s);
[[nodiscard]] double phi_of_s(const OrbitParams& o, double s);
// dt/ds = S(r) C(r) along the orbit.
[[nodiscard]] double dt_ds(const OrbitParams& o, double s);

enum class TimePath { Flat, Closed, Quadrature };

struct TimeEval {
    double t = 0.0;
    TimePath path = TimePath::Flat;
    double imag_residue = 0.0;  // closed path only
    bool fallback = false;      // closed form rejected, quadrature used
};

[[nodiscard]] TimeEval t_of_s_eval(const OrbitParams& o, double s);
[[nodiscard]] double t_of_s(const OrbitParams& o, double s);
// Forced evaluation paths, mainly for cross-checks.
[[nodiscard]] double t_of_s_closed(const OrbitParams& o, double s, double* imag_residue = nullptr);
[[nodiscard]] double t_of_s_flat(const OrbitParams& o, double s);
[[nodiscard]] double t_of_s_quadrature(const OrbitParams& o, double s, double tol = 1e-13);

[[nodiscard]] double s_of_t(const OrbitParams& o, double t);

[[nodiscard]] RegularizedState state_at(const OrbitParams& o, double s);

[[nodiscard]] double energy_of_semimajor(const CKSpace& sp, double k, double a);
[[nodiscard]] double semimajor_of_energy(const CKSpace& sp, double k, double E);

struct PeriodReport {
    double a = 0, E = 0;
    double T = 0;         // from the semiaxis form
    double T_energy = 0;  // from the energy form
    double omega = 0;
    double residual_123 = 0;  // k - C(a) omega^2 S(a)^3
};

[[nodiscard]] PeriodReport period_of_semimajor(const CKSpace& sp, double k, double a);
[[nodiscard]] PeriodReport period_of_energy(const CKSpace& sp, double k, double E);

// Euclidean plane only.
[[nodiscard]] double eccentric_anomaly(const OrbitParams& o, double s);

}  // namespace ck
