#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "ck/cktrig.hpp"
#include "ck/errors.hpp"
#include "ck/kepler.hpp"
#include "doctest.h"

using namespace ck;
using std::numbers::pi;

namespace {

const CKSpace kS2{1, 1}, kE2{0, 1}, kH2{-1, 1};

OrbitParams sphere_orbit() { return orbit_from_dynamical(kS2, 1, -1, 0.5); }

// Reference time from the non-universal radial form T(r) = k (1 - e C(s)) / sigma.
double reference_time(const OrbitParams& o, double s) {
    using boost::math::quadrature::gauss_kronrod;
    auto f = [&](double x) {
        const double tr = o.k * (1 - o.e * ck_cos(o.sigma, x)) / o.sigma;
        return tr / (1 + o.space.kappa1 * tr * tr);
    };
    const int n = 16;
    double t = 0;
    for (int i = 0; i < n; ++i) t += gauss_kronrod<double, 61>::integrate(f, s * i / n, s * (i + 1) / n, 12, 1e-12);
    return t;
}

struct Case {
    OrbitParams o;
    std::vector<double> s;
};

// Orbits over several spaces and characters with parameters kept inside the
// region where the time integrand is regular.
std::vector<Case> orbit_grid() {
    std::vector<Case> out;
    for (double k1 : {-1.0, -0.3, 0.4, 1.0, 2.0})
        for (double k2 : {1.0, 0.5, -1.0})
            for (double sigma : {-1.0, -1e-3, 1e-3, 0.7, 2.25})
                for (double J : {0.2, 0.5}) {
                    OrbitParams o;
                    try {
                        o = orbit_from_sigma({k1, k2}, 1, sigma, J);
                    } catch (const DomainError&) {
                        continue;
                    }
                    Case c{o, {}};
                    const double span = std::isfinite(s_period(o)) ? 1.6 * s_period(o) : 1.5;
                    for (int i = 1; i <= 8; ++i) {
                        const double s = span * i / 8 * (i % 2 ? 1 : -1);
                        const double step = span / 400;
                        double tmax = 0;
                        for (double x = 0; x <= std::abs(s); x += step) tmax = std::max(tmax, std::abs(tan_r_of_s(o, x)));
                        if (k1 < 0 && tmax * std::sqrt(-k1) > 0.8) continue;
                        if (o.A < 0 && !(tan_r_of_s(o, s) < 0)) continue;
                        c.s.push_back(s);
                    }
                    if (!c.s.empty()) out.push_back(c);
                }
    return out;
}

}  // namespace

TEST_CASE("orbit constants: sphere example") {
    const OrbitParams o = sphere_orbit();
    CHECK(o.sigma == 2.25);
    CHECK(o.e == doctest::Approx(std::sqrt(7.0) / 4).epsilon(1e-15));
    CHECK(o.e == doctest::Approx(0.6614378).epsilon(1e-7));
    CHECK(o.p == doctest::Approx(std::atan(0.25)).epsilon(1e-15));
    CHECK(o.p == doctest::Approx(0.2449787).epsilon(1e-7));
    CHECK(std::cos(1.5 * o.epsilon) == doctest::Approx(o.e).epsilon(1e-12));
    CHECK(std::sin(1.5 * o.epsilon) / 1.5 == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(o.epsilon == doctest::Approx(0.5653747).epsilon(1e-7));
}

TEST_CASE("orbit constants: circular and collision") {
    const OrbitParams c = orbit_from_dynamical(kE2, 1, -0.5, 1);
    CHECK(c.sigma == 1.0);
    CHECK(c.e == 0.0);
    CHECK(c.p == doctest::Approx(1).epsilon(1e-15));
    for (const CKSpace sp : {kS2, kH2, CKSpace{1, -1}, CKSpace{0, 0}}) {
        const OrbitParams z = orbit_from_dynamical(sp, 1, -0.3, 0);
        CHECK(z.e == 1.0);
        CHECK(z.sigma == doctest::Approx(0.6));
        if (sp.kappa2 > 0) CHECK(z.p == 0.0);
        if (sp.kappa2 != 0) CHECK(z.epsilon == 0.0);
    }
}

TEST_CASE("orbit constants: invariants on random inputs") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> K(-2, 2), Ev(-2, 1), Jv(0.05, 1.2), kv(0.3, 3);
    int built = 0;
    for (int i = 0; i < 4000; ++i) {
        const CKSpace sp{K(rng), K(rng)};
        const double k = kv(rng), E = Ev(rng), J = Jv(rng);
        OrbitParams o;
        try {
            o = orbit_from_dynamical(sp, k, E, J);
        } catch (const InfeasibleOrbit&) {
            CHECK(1 + (2 * E - sp.kappa1 * sp.kappa2 * J * J) * sp.kappa2 * J * J / (k * k) < 0);
            continue;
        }
        ++built;
        CHECK(o.sigma == -(2 * E - sp.kappa1 * (sp.kappa2 * J * J)));
        CHECK(std::abs((1 - o.e * o.e) - sp.kappa2 * o.sigma * J * J / (k * k)) < 1e-12 * std::max(1.0, o.e * o.e));
        if (sp.kappa2 > 0 && std::isfinite(o.p)) {
            const double lhs = std::sqrt(sp.kappa2) * ck_tan(sp.kappa1 * sp.kappa2, o.p);
            CHECK(std::abs(lhs - sp.kappa2 * J * J / k) < 1e-12 * std::max(1.0, std::abs(lhs)));
        }
        const Trig te = ck_trig(o.sigma * sp.kappa2, o.epsilon);
        CHECK(std::abs(te.C - o.e) < 1e-10 * std::max(1.0, o.e));
        CHECK(std::abs(te.S - J / k) < 1e-10 * std::max(1.0, J / k));
    }
    CHECK(built > 2000);
}

TEST_CASE("orbit construction errors") {
    CHECK_THROWS_AS((void)orbit_from_dynamical(kS2, 1, -2.0, 1.0), InfeasibleOrbit);
    CHECK_THROWS_WITH((void)orbit_from_dynamical(kS2, 1, -2.0, 1.0), doctest::Contains("infeasible orbit"));
    CHECK_THROWS_AS((void)orbit_from_dynamical({0, 0}, 1, -1, 0.5), UsageError);
    CHECK_THROWS_AS((void)orbit_from_dynamical(kS2, 0, -1, 0.5), DomainError);
    CHECK_THROWS_AS((void)orbit_from_dynamical(kS2, 1, std::nan(""), 0.5), DomainError);
    CHECK_THROWS_AS((void)orbit_from_shape({1, -1}, 1, 0.5, 0.3), UsageError);
}

TEST_CASE("orbit from shape reproduces dynamical constants") {
    const OrbitParams a = sphere_orbit();
    const OrbitParams b = orbit_from_shape(kS2, 1, a.e, a.p);
    CHECK(b.E == doctest::Approx(-1).epsilon(1e-13));
    CHECK(b.J == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(b.sigma == doctest::Approx(2.25).epsilon(1e-13));
}

TEST_CASE("r_of_phi examples") {
    const OrbitParams a = sphere_orbit();
    CHECK(r_of_phi(a, 0) == doctest::Approx(std::atan(0.25 / (1 + a.e))).epsilon(1e-14));
    CHECK(r_of_phi(a, 0) == doctest::Approx(0.1493516).epsilon(1e-6));
    CHECK(std::tan(r_of_phi(a, pi)) == doctest::Approx(0.7384168).epsilon(1e-7));
    CHECK(r_of_phi(a, pi) == doctest::Approx(std::atan((1 + a.e) / 2.25)).epsilon(1e-14));

    const OrbitParams e1 = orbit_from_shape(kE2, 1, 0.5, 1);
    CHECK(r_of_phi(e1, pi / 2) == doctest::Approx(1).epsilon(1e-15));

    const OrbitParams circ = orbit_from_shape(kS2, 1, 0, a.p);
    for (double phi : {0.0, 1.0, 2.5, -2.0}) CHECK(r_of_phi(circ, phi) == doctest::Approx(a.p).epsilon(1e-14));

    const OrbitParams hyp = orbit_from_shape(kE2, 1, 2.0, 1);
    CHECK_THROWS_AS((void)r_of_phi(hyp, 2.2), BeyondAsymptote);
}

TEST_CASE("uv_of_s, r_of_s, phi_of_s examples") {
    const OrbitParams a = sphere_orbit();
    const ParallelPoint2 p0 = uv_of_s(a, 0);
    CHECK(p0.v == 0.0);
    CHECK(p0.u == doctest::Approx(r_of_s(a, 0)).epsilon(1e-15));
    CHECK(uv_of_s(a, pi / 3).v == doctest::Approx(std::atan(1.0 / 3)).epsilon(1e-14));
    CHECK(uv_of_s(a, pi / 3).v == doctest::Approx(0.3217506).epsilon(1e-7));

    CHECK(r_of_s(a, 0) == doctest::Approx(0.1493516).epsilon(1e-6));
    CHECK(std::tan(r_of_s(a, 0)) == doctest::Approx((1 - a.e) / 2.25).epsilon(1e-14));
    CHECK(std::tan(r_of_s(a, pi / 1.5)) == doctest::Approx((1 + a.e) / 2.25).epsilon(1e-14));
    CHECK(r_of_s(a, pi / 1.5) == doctest::Approx(0.6360466).epsilon(1e-7));
    CHECK(r_of_s(a, pi / 1.5) == doctest::Approx(r_of_phi(a, pi)).epsilon(1e-13));

    CHECK(phi_of_s(a, 0) == 0.0);
    CHECK(phi_of_s(a, pi / 1.5) == doctest::Approx(pi).epsilon(1e-14));
    CHECK(phi_of_s(a, 2 * pi / 1.5) == doctest::Approx(2 * pi).epsilon(1e-14));
    CHECK(phi_of_s(a, 5 * pi / 1.5) == doctest::Approx(5 * pi).epsilon(1e-14));

    const OrbitParams eu = orbit_from_shape(kE2, 1, 0.5, 0.75);
    CHECK(eu.sigma == doctest::Approx(1).epsilon(1e-15));
    CHECK(phi_of_s(eu, pi / 2) == doctest::Approx(2 * pi / 3).epsilon(1e-14));
}

TEST_CASE("parabolic forms at sigma = 0") {
    for (double k1 : {-0.5, 0.0, 1.0}) {
        const OrbitParams o = orbit_from_sigma({k1, 1}, 1, 0, 0.6);
        CHECK(o.sigma == 0.0);
        for (double s : {0.0, 0.3, -0.8, 1.1}) {
            const ParallelPoint2 uv = uv_of_s(o, s);
            const double eps = o.epsilon;
            CHECK(ck_tan(k1, uv.u) == doctest::Approx((eps * eps - s * s) / 2).epsilon(1e-13));
            CHECK(ck_tan(k1, uv.v) == doctest::Approx(eps * s).epsilon(1e-13));
            CHECK(tan_r_of_s(o, s) == doctest::Approx((eps * eps + s * s) / 2).epsilon(1e-13));
        }
    }
}

TEST_CASE("universal forms agree with the sigma != 0 forms") {
    for (const auto& c : orbit_grid()) {
        const OrbitParams& o = c.o;
        if (std::abs(o.sigma) < 1e-2) continue;
        for (double s : c.s) {
            const double tr = o.k * (1 - o.e * ck_cos(o.sigma, s)) / o.sigma;
            const double tu = o.k * (ck_cos(o.sigma, s) - o.e) / o.sigma;
            const double tv = o.J * ck_sin(o.sigma, s);
            const double sc = std::max(1.0, std::abs(tr));
            CHECK(std::abs(tan_r_of_s(o, s) - tr) < 1e-11 * sc);
            try {
                const ParallelPoint2 uv = uv_of_s(o, s);
                CHECK(std::abs(ck_tan(o.space.kappa1, uv.u) - tu) < 1e-11 * std::max(1.0, std::abs(tu)));
                CHECK(std::abs(ck_tan(o.space.kappa1 * o.space.kappa2, uv.v) - tv) < 1e-11 * std::max(1.0, std::abs(tv)));
            } catch (const ChartOverflow&) {
            }
        }
    }
}

TEST_CASE("linear system along orbits") {
    const double h = 1e-5;
    int checked = 0;
    for (const auto& c : orbit_grid()) {
        const OrbitParams& o = c.o;
        const double k1 = o.space.kappa1, k2 = o.space.kappa2;
        auto tu = [&](double s) { return o.k * (o.A - ck_versin(o.sigma, s)); };
        auto tv = [&](double s) { return o.k * ck_sin(o.sigma * k2, o.epsilon) * ck_sin(o.sigma, s); };
        for (double s : c.s) {
            const double dtu = (tu(s + h) - tu(s - h)) / (2 * h);
            const double dtv = (tv(s + h) - tv(s - h)) / (2 * h);
            const double rhs_u = -(o.k / o.J) * tv(s);
            const double rhs_v = o.e * o.J + (o.k / o.J) * ((1 - o.e * o.e) / k2) * tu(s);
            CHECK(std::abs(dtu - rhs_u) < 1e-6 * std::max(1.0, std::abs(rhs_u)));
            CHECK(std::abs(dtv - rhs_v) < 1e-6 * std::max(1.0, std::abs(rhs_v)));
            // the library coordinates carry the same tangents
            try {
                const ParallelPoint2 uv = uv_of_s(o, s);
                CHECK(std::abs(ck_tan(k1, uv.u) - tu(s)) < 1e-12 * std::max(1.0, std::abs(tu(s))));
            } catch (const ChartOverflow&) {
            }
            ++checked;
        }
    }
    CHECK(checked > 200);
}

TEST_CASE("orbit equation, coordinates and sigma-phi symmetry along orbits") {
    int checked = 0;
    for (const auto& c : orbit_grid()) {
        const OrbitParams& o = c.o;
        const CKSpace sp = o.space;
        if (sp.kappa2 <= 0) continue;
        for (double s : c.s) {
            double r, phi;
            try {
                r = r_of_s(o, s);
                phi = phi_of_s(o, s);
            } catch (const DomainError&) {
                continue;
            }
            const double den = 1 + o.e * ck_cos(sp.kappa2, phi);
            if (den > 1e-6) CHECK(std::abs(r_of_phi(o, phi) - r) < 1e-9 * std::max(1.0, r));
            if (std::abs(o.sigma) > 1e-6) {
                const double sym = (1 - o.e * ck_cos(o.sigma, s)) / o.sigma * den / sp.kappa2;
                CHECK(std::abs(sym - o.J * o.J / (o.k * o.k)) < 1e-9 * std::max(1.0, std::abs(sym)));
            }
            if (std::abs(ck_tan(sp.kappa1, r)) < 1e6) {
                try {
                    const ParallelPoint2 a = uv_of_s(o, s);
                    const ParallelPoint2 b = polar_to_parallel2(sp, {r, phi});
                    CHECK(std::abs(a.u - b.u) < 1e-9 * std::max(1.0, std::abs(a.u)));
                    CHECK(std::abs(a.v - b.v) < 1e-9 * std::max(1.0, std::abs(a.v)));
                } catch (const DomainError&) {
                }
            }
            ++checked;
        }
    }
    CHECK(checked > 100);
}

TEST_CASE("phi is continuous and monotone across half periods") {
    const OrbitParams a = sphere_orbit();
    const double P = s_period(a);
    double prev = phi_of_s(a, -2 * P);
    for (int i = 1; i <= 4000; ++i) {
        const double s = -2 * P + 4 * P * i / 4000.0;
        const double phi = phi_of_s(a, s);
        CHECK(phi > prev);
        CHECK(phi - prev < 0.05);
        prev = phi;
    }
    const OrbitParams retro = orbit_from_dynamical(kS2, 1, -1, -0.5);
    CHECK(retro.direction == -1);
    CHECK(phi_of_s(retro, 0.7) == doctest::Approx(-phi_of_s(a, 0.7)).epsilon(1e-15));
    CHECK(uv_of_s(retro, 0.7).v == doctest::Approx(-uv_of_s(a, 0.7).v).epsilon(1e-15));
}

TEST_CASE("t_of_s examples") {
    const OrbitParams a = sphere_orbit();
    CHECK(t_of_s(a, 0) == 0.0);
    const PeriodReport pr = period_of_energy(kS2, 1, -1);
    CHECK(t_of_s(a, pi / 1.5) == doctest::Approx(pr.T / 2).epsilon(1e-11));
    CHECK(t_of_s(a, 2 * pi / 1.5) == doctest::Approx(pr.T).epsilon(1e-11));
    CHECK(t_of_s(a, pi / 1.5) == doctest::Approx(reference_time(a, pi / 1.5)).epsilon(1e-11));

    const OrbitParams eu = orbit_from_shape(kE2, 1, 0.5, 0.75);
    CHECK(t_of_s(eu, pi) == doctest::Approx(pi).epsilon(1e-14));
    CHECK(t_of_s_eval(eu, pi).path == TimePath::Flat);
}

TEST_CASE("closed-form time agrees with quadrature") {
    int closed = 0;
    for (const auto& c : orbit_grid()) {
        const OrbitParams& o = c.o;
        for (double s : c.s) {
            const TimeEval ev = t_of_s_eval(o, s);
            const double q = t_of_s_quadrature(o, s);
            CHECK(std::abs(ev.t - q) <= 1e-8 * std::abs(q) + 1e-14);
            if (std::abs(o.sigma) > 1e-2) {
                const double ref = reference_time(o, s);
                CHECK(std::abs(ev.t - ref) <= 1e-8 * std::abs(ref) + 1e-14);
            }
            if (o.space.kappa1 != 0) {
                double im = 0;
                const double t = t_of_s_closed(o, s, &im);
                if (std::isfinite(t) && im < 1e-9 * (1 + std::abs(t))) {
                    CHECK(std::abs(t - q) <= 1e-8 * std::abs(q) + 1e-14);
                    ++closed;
                }
            }
        }
    }
    CHECK(closed > 200);
}

TEST_CASE("time derivative and monotonicity") {
    const double h = 1e-5;
    for (const auto& c : orbit_grid()) {
        const OrbitParams& o = c.o;
        const int dir = o.A < 0 ? -1 : 1;
        for (double s : c.s) {
            const double span = std::abs(s) - h;
            if (span <= 0) continue;
            const double x = std::copysign(span, s);
            const double d = (t_of_s(o, x + h) - t_of_s(o, x - h)) / (2 * h);
            const double tr = tan_r_of_s(o, x);
            const double ref = tr / (1 + o.space.kappa1 * tr * tr);
            CHECK(std::abs(d - ref) < 1e-6 * std::max(1.0, std::abs(ref)));
            CHECK(std::abs(dt_ds(o, x) - ref) < 1e-14 * std::max(1.0, std::abs(ref)));
        }
        double prev = 0;
        const double last = c.s.back();
        for (int i = 1; i <= 50; ++i) {
            const double t = t_of_s(o, std::abs(last) * i / 50);
            CHECK(dir * (t - prev) > 0);
            prev = t;
        }
    }
}

TEST_CASE("s_of_t inverts t_of_s") {
    const OrbitParams a = sphere_orbit();
    CHECK(s_of_t(a, 0) == 0.0);
    const double T = period_of_energy(kS2, 1, -1).T;
    CHECK(s_of_t(a, T) == doctest::Approx(2 * pi / 1.5).epsilon(1e-11));
    const OrbitParams eu = orbit_from_shape(kE2, 1, 0.5, 0.75);
    CHECK(s_of_t(eu, pi) == doctest::Approx(pi).epsilon(1e-12));
    for (const auto& c : orbit_grid()) {
        for (double s : c.s) {
            const double t = t_of_s(c.o, s);
            const double back = s_of_t(c.o, t);
            CHECK(std::abs(t_of_s(c.o, back) - t) <= 1e-10 * std::max(1.0, std::abs(t)));
        }
    }
    const OrbitParams hyp = orbit_from_sigma(kH2, 1, -1, 0.5);
    CHECK_THROWS_AS((void)s_of_t(hyp, 1e6), OutOfRange);
}

TEST_CASE("primitive of the Kepler time integrand") {
    // d/ds [2 ArcT_lambda(T_sigma(s/2)) / (1 - e)] = 1 / (1 - e C_sigma(s)), lambda = sigma (1+e)/(1-e)
    using boost::math::quadrature::gauss_kronrod;
    std::mt19937_64 rng(32);
    std::uniform_real_distribution<double> Sg(-2, 2), Ev(0, 0.9), U(0.05, 0.9);
    for (int i = 0; i < 300; ++i) {
        const double sigma = Sg(rng), e = Ev(rng);
        const double lam = sigma * (1 + e) / (1 - e);
        double smax = sigma > 0 ? pi / std::sqrt(sigma) : 3.0;
        if (lam < 0) {
            // keep T_sigma(s/2) inside the ArcT_lambda range
            smax = std::min(smax, 2 * ck_atan(sigma, 0.95 / std::sqrt(-lam)));
        }
        const double s = U(rng) * smax;
        auto f = [&](double x) { return 1 / (1 - e * ck_cos(sigma, x)); };
        const double num = gauss_kronrod<double, 61>::integrate(f, 0, s, 15, 1e-14);
        const double closed = 2 * ck_atan(lam, ck_tan(sigma, s / 2)) / (1 - e);
        CHECK(std::abs(num - closed) < 1e-8 * std::max(1.0, std::abs(num)));
    }
}

TEST_CASE("Euclidean reduction matches the classical anomaly formulas") {
    for (double E : {-0.7, -0.2, 0.3, 1.1})
        for (double J : {0.4, 0.9}) {
            const OrbitParams o = orbit_from_dynamical(kE2, 2.0, E, J);
            const double k = o.k, e = o.e;
            for (double s : {0.2, 0.9, -1.3, 2.0}) {
                const double xi = eccentric_anomaly(o, s);
                double r, t, phi;
                if (E < 0) {
                    const double a = -k / (2 * E), n = std::sqrt(k / (a * a * a));
                    r = a * (1 - e * std::cos(xi));
                    t = (xi - e * std::sin(xi)) / n;
                    phi = 2 * std::atan(std::sqrt((1 + e) / (1 - e)) * std::tan(xi / 2));
                } else {
                    const double a = k / (2 * E), n = std::sqrt(k / (a * a * a));
                    r = a * (e * std::cosh(xi) - 1);
                    t = (e * std::sinh(xi) - xi) / n;
                    phi = 2 * std::atan(std::sqrt((e + 1) / (e - 1)) * std::tanh(xi / 2));
                }
                CHECK(r_of_s(o, s) == doctest::Approx(r).epsilon(1e-11));
                CHECK(std::abs(t_of_s(o, s) - t) < 1e-11 * std::max(1.0, std::abs(t)));
                CHECK(std::abs(phi_of_s(o, s) - phi) < 1e-11 * std::max(1.0, std::abs(phi)));
            }
        }
}

TEST_CASE("eccentric anomaly examples") {
    CHECK(eccentric_anomaly(orbit_from_sigma(kE2, 1, 4, 0.2), 1) == doctest::Approx(2));
    CHECK(eccentric_anomaly(orbit_from_sigma(kE2, 9, 0, 0.5), 2) == doctest::Approx(6));
    CHECK(eccentric_anomaly(orbit_from_sigma(kE2, 1, -1, 0.5), 3) == doctest::Approx(3));
    CHECK_THROWS_AS((void)eccentric_anomaly(sphere_orbit(), 1), Unsupported);
}

TEST_CASE("states are smooth through sigma = 0") {
    for (double k1 : {-0.5, 0.0, 0.7})
        for (double k2 : {1.0, -1.0}) {
            const CKSpace sp{k1, k2};
            const OrbitParams m = orbit_from_sigma(sp, 1, -1e-6, 0.5);
            const OrbitParams z = orbit_from_sigma(sp, 1, 0, 0.5);
            const OrbitParams p = orbit_from_sigma(sp, 1, 1e-6, 0.5);
            // the Lorentzian orbit ends near |s| = 0.5
            for (double s : {0.1, 0.3, -0.4}) {
                const RegularizedState a = state_at(m, s), b = state_at(z, s), c = state_at(p, s);
                for (auto [x, y] : {std::pair{a.r, b.r}, {c.r, b.r}, {a.u, b.u}, {c.v, b.v}, {a.phi, b.phi},
                                    {c.phi, b.phi}, {a.t, b.t}, {c.t, b.t}})
                    CHECK(std::abs(x - y) < 1e-5);
            }
        }
}

TEST_CASE("collision orbits pass the origin with finite time") {
    for (const CKSpace sp : {kS2, kE2, kH2, CKSpace{1, -1}}) {
        const OrbitParams o = orbit_from_dynamical(sp, 1, -0.4, 0);
        CHECK(r_of_s(o, 0) == 0.0);
        double prev = t_of_s(o, -0.5);
        for (int i = 1; i <= 20; ++i) {
            const double s = -0.5 + i * 0.05;
            const double t = t_of_s(o, s);
            CHECK(std::isfinite(t));
            CHECK(t > prev);
            CHECK(std::isfinite(r_of_s(o, s)));
            prev = t;
        }
        const double phi = phi_of_s(o, 0.3);
        CHECK(phi == phi_of_s(o, -0.3));
    }
}

TEST_CASE("kappa2 = 0 spaces through the kappa2 J^2 input") {
    for (double k1 : {-1.0, 0.0, 1.0}) {
        const CKSpace sp{k1, 0};
        const OrbitParams o = orbit_from_kappa2_J2(sp, 1, -0.3, 0.0);
        CHECK(!o.has_J());
        CHECK(o.e == 1.0);
        CHECK(o.sigma == doctest::Approx(0.6));
        for (double s : {0.2, 0.8}) {
            CHECK(std::isfinite(r_of_s(o, s)));
            CHECK(std::isfinite(t_of_s(o, s)));
            CHECK(std::isnan(uv_of_s(o, s).v));
            CHECK(std::isfinite(uv_of_s(o, s).u));
        }
        CHECK_THROWS_AS((void)phi_of_s(o, 0.5), Unsupported);
        // nonzero kappa2 J^2 has no meaning on a kappa2 = 0 space other than as a limit value
        const OrbitParams l = orbit_from_kappa2_J2(sp, 1, -0.3, 0.2);
        CHECK(l.sigma == doctest::Approx(0.6 + k1 * 0.2));
        CHECK(std::isfinite(t_of_s(l, 0.4)));
    }
}

TEST_CASE("time domain errors") {
    const OrbitParams hyp = orbit_from_sigma(kH2, 1, -1, 0.5);
    CHECK_THROWS_AS((void)t_of_s(hyp, 50.0), DomainError);
    CHECK_THROWS_AS((void)t_of_s(hyp, std::nan("")), DomainError);
}

TEST_CASE("semimajor axis, energy and period") {
    CHECK(energy_of_semimajor(kE2, 1, 1) == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(energy_of_semimajor(kS2, 1, pi / 6) == doctest::Approx(-1 / std::tan(pi / 3)).epsilon(1e-15));
    CHECK(energy_of_semimajor(kS2, 1, pi / 6) == doctest::Approx(-0.5773503).epsilon(1e-7));
    CHECK(std::abs(energy_of_semimajor(kS2, 1, pi / 4)) < 1e-15);
    CHECK_THROWS_AS((void)energy_of_semimajor(kS2, 1, 1.7), DomainError);
    CHECK_THROWS_AS((void)semimajor_of_energy(kE2, 1, 0.1), DomainError);

    std::mt19937_64 rng(33);
    std::uniform_real_distribution<double> K(-2, 2), U(0.05, 0.95), kv(0.5, 2);
    for (int i = 0; i < 500; ++i) {
        const CKSpace sp{K(rng), 1};
        const double k = kv(rng);
        const double a = sp.kappa1 > 0 ? U(rng) * pi / (2 * std::sqrt(sp.kappa1)) : 3 * U(rng);
        const double E = energy_of_semimajor(sp, k, a);
        CHECK(std::abs(energy_of_semimajor(sp, k, semimajor_of_energy(sp, k, E)) - E) < 1e-12 * std::max(1.0, std::abs(E)));
        // on the hyperbolic plane E saturates at -k sqrt(-kappa1) and a(E) loses digits
        if (sp.kappa1 >= 0 || 2 * a * std::sqrt(-sp.kappa1) <= 3)
            CHECK(std::abs(semimajor_of_energy(sp, k, E) - a) < 1e-12 * std::max(1.0, a));
        const PeriodReport pr = period_of_semimajor(sp, k, a);
        if (pr.E * pr.E / std::abs(pr.E * pr.E + sp.kappa1 * k * k) < 1e4) CHECK(std::abs(pr.T - pr.T_energy) <= 1e-10 * pr.T);
        CHECK(std::abs(pr.residual_123) < 1e-10 * k);
    }

    const PeriodReport flat = period_of_semimajor(kE2, 1, 1);
    CHECK(flat.T == doctest::Approx(2 * pi).epsilon(1e-15));
    const PeriodReport sph = period_of_semimajor(kS2, 1, pi / 6);
    CHECK(sph.T * sph.T == doctest::Approx(pi * pi * std::sin(pi / 3) * (1 - std::cos(pi / 3))).epsilon(1e-14));
    CHECK(sph.T == doctest::Approx(2.0672842).epsilon(1e-7));
    CHECK(2 * pi / sph.omega == doctest::Approx(sph.T).epsilon(1e-14));
    CHECK(sph.omega * sph.omega == doctest::Approx(1 / (std::cos(pi / 6) * std::pow(std::sin(pi / 6), 3))).epsilon(1e-13));
    CHECK(sph.omega * sph.omega == doctest::Approx(9.2376043).epsilon(1e-7));
}

TEST_CASE("period equals the closed-form time over one s-period") {
    for (double k1 : {-1.0, -0.2, 0.0, 0.5, 1.0})
        for (double E : {-1.5, -0.8})
            for (double J : {0.2, 0.45}) {
                const CKSpace sp{k1, 1};
                OrbitParams o;
                try {
                    o = orbit_from_dynamical(sp, 1, E, J);
                } catch (const InfeasibleOrbit&) {
                    continue;
                }
                if (!(o.sigma > 0) || !(o.e < 1)) continue;
                try {
                    const double t = t_of_s(o, s_period(o));
                    CHECK(t == doctest::Approx(period_of_energy(sp, 1, E).T).epsilon(1e-10));
                } catch (const DomainError&) {
                    // apoastron beyond the hyperbolic chart
                    CHECK(k1 < 0);
                }
            }
}
