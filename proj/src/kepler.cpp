#include "ck/kepler.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <complex>
#include <numbers>

#include "ck/cktrig.hpp"
#include "ck/errors.hpp"

namespace ck {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

OrbitParams build(const CKSpace& sp, double k, double E, double L, double J, int dir, double phi0) {
    if (!std::isfinite(sp.kappa1) || !std::isfinite(sp.kappa2)) throw DomainError("space labels must be finite");
    if (!(k > 0) || !std::isfinite(k)) throw DomainError("coupling k must be positive");
    if (!std::isfinite(E) || !std::isfinite(L) || !std::isfinite(phi0)) throw DomainError("non-finite orbit input");

    OrbitParams o;
    o.space = sp;
    o.k = k;
    o.E = E;
    o.J = J;
    o.L = L;
    o.phi0 = phi0;
    o.direction = dir;
    o.sigma = -(2 * E - sp.kappa1 * L);

    double e2 = 1 + (2 * E - sp.kappa1 * L) * L / (k * k);
    if (e2 < 0) {
        if (e2 < -1e-14) throw InfeasibleOrbit("e^2 < 0");
        e2 = 0;
    }
    o.e = std::sqrt(e2);
    o.A = L / (k * k * (1 + o.e));

    o.p = kNaN;
    if (sp.kappa2 > 0) {
        try {
            o.p = ck_atan(sp.kappa1 * sp.kappa2, L / (k * std::sqrt(sp.kappa2)));
        } catch (const DomainError&) {
            o.p = std::numeric_limits<double>::infinity();
        }
    }

    o.epsilon = o.has_J() ? solve_epsilon(o.sigma, sp.kappa2, o.e, J / k) : kNaN;
    return o;
}

// Tangent of the half parameter s/2 reduced to its principal window, with the
// number n of half-turns of sqrt(sigma) s / 2 that were removed.
struct HalfTan {
    int n;
    double tau;
};

HalfTan half_tan(double sigma, double s) {
    if (sigma > 0) {
        const double q = std::sqrt(sigma);
        const double n = std::round(0.5 * q * s / kPi);
        return {static_cast<int>(n), ck_tan(sigma, 0.5 * s - n * kPi / q)};
    }
    return {0, ck_tan(sigma, 0.5 * s)};
}

cplx arct_unwound(cplx lambda, double tau, int n) {
    const cplx q = std::sqrt(lambda);
    cplx base;
    if (std::isinf(tau))
        base = std::copysign(kPi / 2, tau) / q;
    else
        base = ck_atan(lambda, cplx(tau));
    if (n != 0) base += static_cast<double>(n) * kPi / q;
    return base;
}

// With kappa2 * J^2 < 0 the radial tangent starts negative and reaches zero
// exactly where phi runs off to its asymptote; the orbit ends there.
void check_asymptote(const OrbitParams& o, double s) {
    if (o.A < 0 && !(o.k * (o.A + o.e * ck_versin(o.sigma, s)) < 0))
        throw BeyondAsymptote("parameter beyond the asymptote of the orbit");
}

// The time integrand blows up where 1 + kappa1 T(r)^2 vanishes (kappa1 < 0).
void check_time_domain(const OrbitParams& o, double s) {
    if (o.space.kappa1 >= 0) return;
    const double smax = o.sigma > 0 ? std::min(std::abs(s), kPi / std::sqrt(o.sigma)) : std::abs(s);
    const double tmax = std::max(std::abs(o.k * o.A), std::abs(tan_r_of_s(o, smax)));
    if (!(tmax * std::sqrt(-o.space.kappa1) < 1))
        throw DomainError("orbit reaches the chart boundary before this parameter value");
}

template <class F>
double integrate_pieces(F f, double s, double piece, double tol) {
    using boost::math::quadrature::gauss_kronrod;
    const double span = std::abs(s);
    const int n = std::clamp(static_cast<int>(std::ceil(span / piece)), 1, 4096);
    const double h = s / n;
    double total = 0;
    for (int i = 0; i < n; ++i) total += gauss_kronrod<double, 61>::integrate(f, i * h, (i + 1) * h, 15, tol);
    return total;
}

double quad_piece(const OrbitParams& o) {
    if (o.sigma != 0) return 0.25 * kPi / std::sqrt(std::abs(o.sigma));
    return 1.0;
}

}  // namespace

double solve_epsilon(double sigma, double kappa2, double e, double j) {
    const double lam = sigma * kappa2;
    double eps;
    try {
        if (e > 0)
            eps = ck_atan(lam, j / e);
        else if (lam > 0)
            eps = kPi / (2 * std::sqrt(lam));
        else
            throw InvariantViolation("impact parameter: e = 0 needs sigma*kappa2 > 0");
    } catch (const InvariantViolation&) {
        throw;
    } catch (const DomainError&) {
        throw InvariantViolation("impact parameter: inconsistent (e, J, sigma)");
    }
    const Trig t = ck_trig(lam, eps);
    if (std::abs(t.C - e) > 1e-10 * std::max(1.0, e) || std::abs(t.S - j) > 1e-10 * std::max(1.0, j))
        throw InvariantViolation("impact parameter: identification conditions violated");
    return eps;
}

OrbitParams orbit_from_dynamical(const CKSpace& sp, double k, double E, double J, double phi0) {
    if (!std::isfinite(J)) throw DomainError("non-finite angular momentum");
    if (sp.kappa2 == 0 && J != 0)
        throw UsageError("kappa2 = 0 with J != 0: supply kappa2*J^2 instead (orbit_from_kappa2_J2)");
    const double Jm = std::abs(J);
    return build(sp, k, E, sp.kappa2 * Jm * Jm, Jm, J < 0 ? -1 : 1, phi0);
}

OrbitParams orbit_from_kappa2_J2(const CKSpace& sp, double k, double E, double L, double phi0) {
    double J = kNaN;
    if (sp.kappa2 != 0) {
        const double j2 = L / sp.kappa2;
        if (j2 < 0) throw InfeasibleOrbit("kappa2*J^2 has the wrong sign for this space");
        J = std::sqrt(j2);
    }
    return build(sp, k, E, L, J, 1, phi0);
}

OrbitParams orbit_from_shape(const CKSpace& sp, double k, double e, double p, double phi0) {
    if (!(sp.kappa2 > 0)) throw UsageError("(e, p) input needs kappa2 > 0");
    if (!(e >= 0) || !(p > 0)) throw DomainError("(e, p) input needs e >= 0 and p > 0");
    const double tp = ck_tan(sp.kappa1 * sp.kappa2, p);
    if (is_pole(tp) || !(tp > 0)) throw DomainError("semilatus rectum outside the chart");
    const double L = k * std::sqrt(sp.kappa2) * tp;
    const double sigma = k * k * (1 - e * e) / L;
    const double E = 0.5 * (sp.kappa1 * L - sigma);
    return build(sp, k, E, L, std::sqrt(L / sp.kappa2), 1, phi0);
}

OrbitParams orbit_from_sigma(const CKSpace& sp, double k, double sigma, double J, double phi0) {
    const double E = 0.5 * (sp.kappa1 * sp.kappa2 * J * J - sigma);
    return orbit_from_dynamical(sp, k, E, J, phi0);
}

double s_period(const OrbitParams& o) {
    if (o.sigma > 0 && o.space.kappa2 > 0) return 2 * kPi / std::sqrt(o.sigma);
    return std::numeric_limits<double>::infinity();
}

double r_of_phi(const OrbitParams& o, double phi) {
    const double den = 1 + o.e * ck_cos(o.space.kappa2, phi - o.phi0);
    if (!(den > 0)) throw BeyondAsymptote("r_of_phi: angle beyond the asymptote");
    try {
        return ck_atan(o.space.kappa1, (o.L / o.k) / den);
    } catch (const DomainError&) {
        throw ChartOverflow("r_of_phi: point outside the chart");
    }
}

double tan_r_of_s(const OrbitParams& o, double s) { return o.k * (o.A + o.e * ck_versin(o.sigma, s)); }

ParallelPoint2 uv_of_s(const OrbitParams& o, double s) {
    check_asymptote(o, s);
    const Trig g = ck_trig(o.sigma, s);
    const double tu = o.k * (o.A - g.V);
    try {
        const double u = ck_atan(o.space.kappa1, tu);
        double v = kNaN;
        if (o.has_J()) {
            const double tv = o.k * ck_sin(o.sigma * o.space.kappa2, o.epsilon) * g.S;
            v = o.direction * ck_atan(o.space.kappa1 * o.space.kappa2, tv);
        }
        return {u, v};
    } catch (const DomainError&) {
        throw ChartOverflow("uv_of_s: orbit leaves the parallel chart");
    }
}

double r_of_s(const OrbitParams& o, double s) {
    check_asymptote(o, s);
    try {
        return ck_atan(o.space.kappa1, tan_r_of_s(o, s));
    } catch (const DomainError&) {
        throw ChartOverflow("r_of_s: orbit leaves the chart");
    }
}

double phi_of_s(const OrbitParams& o, double s) {
    const double k2 = o.space.kappa2;
    if (!o.has_J()) throw Unsupported("phi_of_s: angular momentum unknown (kappa2*J^2 input)");
    if (o.J == 0) return o.phi0 + (k2 > 0 ? kPi / std::sqrt(k2) : 0.0);
    // Half-angle relation T_k2(phi/2) = (J / (k A)) T_sigma(s/2).
    const double c = o.J / (o.k * o.A);
    const HalfTan h = half_tan(o.sigma, s);
    double half;
    if (k2 > 0) {
        half = ck_atan(k2, c * h.tau, h.n);
    } else {
        if (h.n != 0 || std::isinf(h.tau)) throw BeyondAsymptote("phi_of_s: parameter beyond the asymptote");
        try {
            half = ck_atan(k2, c * h.tau);
        } catch (const DomainError&) {
            throw BeyondAsymptote("phi_of_s: parameter beyond the asymptote");
        }
    }
    return o.phi0 + o.direction * 2 * half;
}

double dt_ds(const OrbitParams& o, double s) {
    const double tr = tan_r_of_s(o, s);
    return tr / (1 + o.space.kappa1 * tr * tr);
}

double t_of_s_flat(const OrbitParams& o, double s) {
    double t = o.k * (o.A * s + o.e * ck_sin_defect(o.sigma, s));
    if (o.space.kappa1 != 0) {
        // first-order curvature term of T/(1 + kappa1 T^2)
        auto cube = [&](double x) {
            const double tr = tan_r_of_s(o, x);
            return tr * tr * tr;
        };
        t -= o.space.kappa1 * integrate_pieces(cube, s, quad_piece(o), 1e-12);
    }
    return t;
}

double t_of_s_closed(const OrbitParams& o, double s, double* imag_residue) {
    const double k1 = o.space.kappa1;
    if (k1 == 0) throw UsageError("t_of_s_closed: needs kappa1 != 0");
    if (s < 0) return -t_of_s_closed(o, -s, imag_residue);
    const cplx q = std::sqrt(cplx(-k1));
    const cplx qk = q * o.k;
    const cplx d1 = 1.0 - qk * o.A;
    const cplx d2 = 1.0 + qk * o.A;
    const cplx lam1 = (o.sigma - qk * (1 + o.e)) / d1;
    const cplx lam2 = (o.sigma + qk * (1 + o.e)) / d2;
    const HalfTan h = half_tan(o.sigma, s);
    const cplx t = (arct_unwound(lam1, h.tau, h.n) / d1 - arct_unwound(lam2, h.tau, h.n) / d2) / q;
    if (imag_residue) *imag_residue = std::abs(t.imag());
    return t.real();
}

double t_of_s_quadrature(const OrbitParams& o, double s, double tol) {
    check_time_domain(o, s);
    return integrate_pieces([&](double x) { return dt_ds(o, x); }, s, quad_piece(o), tol);
}

TimeEval t_of_s_eval(const OrbitParams& o, double s) {
    if (!std::isfinite(s)) throw DomainError("t_of_s: non-finite parameter");
    TimeEval r;
    if (s == 0) return r;
    check_asymptote(o, s);
    check_time_domain(o, s);
    const double k1 = o.space.kappa1;
    const double smax = o.sigma > 0 ? std::min(std::abs(s), kPi / std::sqrt(o.sigma)) : std::abs(s);
    const double tmax = std::max(std::abs(o.k * o.A), std::abs(tan_r_of_s(o, smax)));
    if (k1 == 0 || std::abs(k1) * tmax * tmax < 1e-6) {
        r.t = t_of_s_flat(o, s);
        r.path = TimePath::Flat;
        return r;
    }
    r.t = t_of_s_closed(o, s, &r.imag_residue);
    r.path = TimePath::Closed;
    if (!std::isfinite(r.t) || r.imag_residue >= 1e-9 * (1 + std::abs(r.t))) {
        r.t = t_of_s_quadrature(o, s);
        r.path = TimePath::Quadrature;
        r.fallback = true;
    }
    return r;
}

double t_of_s(const OrbitParams& o, double s) { return t_of_s_eval(o, s).t; }

double s_of_t(const OrbitParams& o, double t) {
    if (!std::isfinite(t)) throw OutOfRange("s_of_t: non-finite time");
    if (t == 0) return 0;
    // t(s) is odd; its orientation follows the sign of T(r) at periastron.
    const int d = (t > 0 ? 1 : -1) * (o.A < 0 ? -1 : 1);
    const double target = std::abs(t);
    auto h = [&](double x) { return std::abs(t_of_s(o, d * x)) - target; };
    auto slope = [&](double x) { return std::abs(dt_ds(o, d * x)); };

    double lo = 0, hi;
    const double g0 = slope(0);
    hi = g0 > 0 ? target / g0 : 1.0;
    if (std::isfinite(s_period(o))) hi = std::min(hi, s_period(o));
    double fhi;
    int grow = 0;
    for (;;) {
        try {
            fhi = h(hi);
        } catch (const DomainError&) {
            fhi = std::numeric_limits<double>::infinity();
        }
        if (fhi >= 0) break;
        lo = hi;
        hi *= 2;
        if (++grow > 60) throw OutOfRange("s_of_t: time not reachable on this orbit");
    }

    double x = std::isfinite(fhi) ? hi : 0.5 * (lo + hi);
    for (int it = 0; it < 100; ++it) {
        double f;
        try {
            f = h(x);
        } catch (const DomainError&) {
            hi = x;
            x = 0.5 * (lo + hi);
            continue;
        }
        if (f == 0) return d * x;
        if (f < 0)
            lo = x;
        else
            hi = x;
        const double g = slope(x);
        double xn = g > 0 ? x - f / g : 0.5 * (lo + hi);
        if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
        const double dx = std::abs(xn - x);
        x = xn;
        if (dx <= 1e-12 * std::max(1.0, x) || hi - lo <= 1e-15 * std::max(1.0, x)) break;
    }
    // an unreachable target leaves the iterate pinned at the end of the orbit
    double reached;
    try {
        reached = std::abs(t_of_s(o, d * x));
    } catch (const DomainError&) {
        throw OutOfRange("s_of_t: time not reachable on this orbit");
    }
    if (std::abs(reached - target) > 1e-8 * std::max(1.0, target)) throw OutOfRange("s_of_t: time not reachable on this orbit");
    return d * x;
}

RegularizedState state_at(const OrbitParams& o, double s) {
    const ParallelPoint2 uv = uv_of_s(o, s);
    return {s, uv.u, uv.v, r_of_s(o, s), phi_of_s(o, s), t_of_s(o, s)};
}

double energy_of_semimajor(const CKSpace& sp, double k, double a) {
    if (!(sp.kappa2 > 0)) throw DomainError("closed orbits need kappa2 > 0");
    if (!(a > 0) || !std::isfinite(a)) throw DomainError("semimajor axis must be positive");
    if (sp.kappa1 > 0 && !(2 * a < kPi / std::sqrt(sp.kappa1)))
        throw DomainError("2a reaches the antipode");
    const double t = ck_tan(sp.kappa1, 2 * a);
    if (is_pole(t)) return 0.0;
    return -k / t;
}

double semimajor_of_energy(const CKSpace& sp, double k, double E) {
    if (!(sp.kappa2 > 0)) throw DomainError("closed orbits need kappa2 > 0");
    if (!std::isfinite(E)) throw DomainError("non-finite energy");
    if (sp.kappa1 > 0) {
        if (E == 0) return kPi / (4 * std::sqrt(sp.kappa1));
        return 0.5 * ck_atan(sp.kappa1, -k / E, E > 0 ? 1 : 0);
    }
    if (!(E < 0)) throw DomainError("no closed orbit at this energy");
    return 0.5 * ck_atan(sp.kappa1, -k / E);
}

PeriodReport period_of_semimajor(const CKSpace& sp, double k, double a) {
    PeriodReport r;
    r.a = a;
    r.E = energy_of_semimajor(sp, k, a);
    const Trig t2 = ck_trig(sp.kappa1, 2 * a);
    r.T = std::sqrt(kPi * kPi / k * t2.S * t2.V);
    const double E = r.E;
    const double m = E * E + sp.kappa1 * k * k;
    r.T_energy = std::sqrt(kPi * kPi * k * k / (m * (-E + std::sqrt(m))));
    // m cancels as E approaches -k sqrt(-kappa1); widen by its condition number
    const double cond = E * E / std::abs(m);
    if (std::abs(r.T - r.T_energy) > (1e-10 + 16 * std::numeric_limits<double>::epsilon() * cond) * r.T)
        throw InvariantViolation("period: semiaxis and energy forms disagree");
    r.omega = 2 * kPi / r.T;
    const Trig ta = ck_trig(sp.kappa1, a);
    r.residual_123 = k - ta.C * r.omega * r.omega * ta.S * ta.S * ta.S;
    return r;
}

PeriodReport period_of_energy(const CKSpace& sp, double k, double E) {
    return period_of_semimajor(sp, k, semimajor_of_energy(sp, k, E));
}

double eccentric_anomaly(const OrbitParams& o, double s) {
    if (o.space.kappa1 != 0 || o.space.kappa2 != 1) throw Unsupported("eccentric anomaly: Euclidean plane only");
    if (o.sigma > 0) return std::sqrt(o.sigma) * s;
    if (o.sigma == 0) return std::sqrt(o.k) * s;
    return std::sqrt(-o.sigma) * s;
}

}  // namespace ck
