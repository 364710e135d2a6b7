#include "ck/geoflow.hpp"

#include <array>
#include <cmath>

#include "ck/cktrig.hpp"
#include "ck/errors.hpp"

namespace ck {

namespace {

void require_rotating(const OrbitParams& o) {
    if (!o.has_J() || o.J == 0) throw Unsupported("hodograph: collision orbit (J = 0) or unknown J");
    if (o.space.kappa2 == 0) throw Unsupported("hodograph: kappa2 = 0");
}

// Standard-position momenta carried to the actual orbit: mirror for
// retrograde motion, then the kappa2-rotation by phi0.
MomentumPoint place(const OrbitParams& o, MomentumPoint P) {
    if (o.direction < 0) P.P2 = -P.P2;
    if (o.phi0 == 0) return P;
    const Trig f = ck_trig(o.space.kappa2, o.phi0);
    return {f.C * P.P1 - o.space.kappa2 * f.S * P.P2, f.S * P.P1 + f.C * P.P2};
}

}  // namespace

MomentumPoint hodograph_center(const OrbitParams& o) {
    require_rotating(o);
    return place(o, {0.0, o.k * o.e / (o.space.kappa2 * o.J)});
}

double hodograph_form(const OrbitParams& o, const MomentumPoint& P) {
    const MomentumPoint c = hodograph_center(o);
    const double d1 = P.P1 - c.P1, d2 = P.P2 - c.P2;
    return d1 * d1 + o.space.kappa2 * d2 * d2;
}

MomentumPoint hodograph_of_phi(const OrbitParams& o, double phi) {
    require_rotating(o);
    const Trig f = ck_trig(o.space.kappa2, o.direction * (phi - o.phi0));
    return place(o, {-(o.k / o.J) * f.S, o.k / (o.space.kappa2 * o.J) * (o.e + f.C)});
}

MomentumPoint hodograph_of_s(const OrbitParams& o, double s) {
    require_rotating(o);
    const Trig g = ck_trig(o.sigma, s);
    const double tr = o.k * (o.A + o.e * g.V);
    if (tr == 0) throw SingularFactor("hodograph_of_s: orbit passes the origin");
    return place(o, {-o.k * g.S / tr, o.J * g.C / tr});
}

EccentricityVector eccentricity_vector(const CKSpace& sp, double k, const PhaseState& st) {
    const Momenta m = noether_momenta(sp, {st.r, st.phi}, st.rdot, st.phidot);
    const Trig f = ck_trig(sp.kappa2, st.phi);
    return {m.J * m.P1 + k * f.S, m.J * m.P2 + k * f.V};
}

SlowmentumPoint slowmentum(const MomentumPoint& P, double kappa2) {
    const double n = P.P1 * P.P1 + kappa2 * P.P2 * P.P2;
    if (n == 0 || !std::isfinite(n)) throw NullInversion("slowmentum: null momentum");
    return {P.P1 / n, P.P2 / n, false};
}

double lc_conformal_factor(const MomentumPoint& P, double sigma, double kappa2) {
    const double d = P.P1 * P.P1 + kappa2 * P.P2 * P.P2 + sigma;
    if (d == 0) throw SingularFactor("Levi-Civita factor: point on the singular set");
    return 4.0 / (d * d);
}

double lc_curvature_numeric(double sigma, double kappa2, const MomentumPoint& P, double h) {
    if (!(kappa2 > 0)) throw Unsupported("curvature: needs a definite metric (kappa2 > 0)");
    if (!(h > 0)) throw UsageError("curvature: step must be positive");
    // Orthonormal coordinates w = (P1, sqrt(kappa2) P2) make the metric conformally flat.
    const double w1 = P.P1, w2 = std::sqrt(kappa2) * P.P2;
    auto den = [&](double a, double b) { return a * a + b * b + sigma; };
    const std::array<double, 5> d{den(w1, w2), den(w1 + h, w2), den(w1 - h, w2), den(w1, w2 + h), den(w1, w2 - h)};
    for (double x : d)
        if (x == 0 || (x > 0) != (d[0] > 0)) throw SingularFactor("curvature: stencil crosses the singular set");
    // f = log(lambda) / 2 = log 2 - log|d|
    auto f = [](double x) { return -std::log(std::abs(x)); };
    const double lap = (f(d[1]) + f(d[2]) + f(d[3]) + f(d[4]) - 4 * f(d[0])) / (h * h);
    const double lambda = 4.0 / (d[0] * d[0]);
    return -lap / lambda;
}

SlowmentumPoint geodesic_slowmentum(double sigma, double kappa2, double epsilon, double s) {
    const Trig a = ck_trig(sigma * kappa2, epsilon);
    const Trig g = ck_trig(sigma, s);
    const double den = 1 + a.C * g.C;
    if (den == 0) return {0.0, 0.0, true};
    return {-g.S / den, a.S * g.C / den, false};
}

double epsilon_of_orbit(const OrbitParams& o) {
    if (!o.has_J()) throw Unsupported("impact parameter: J unknown");
    const double j = o.J / o.k;
    const double ident = o.e * o.e + o.sigma * o.space.kappa2 * j * j;
    if (std::abs(ident - 1) > 1e-10 * std::max(1.0, o.e * o.e)) throw InvariantViolation("impact parameter: (e, J, sigma) inconsistent");
    return solve_epsilon(o.sigma, o.space.kappa2, o.e, j);
}

}  // namespace ck
