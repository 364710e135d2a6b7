#include "verify.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <stdexcept>

#include "ck/cktrig.hpp"
#include "ck/ckspace.hpp"
#include "ck/errors.hpp"
#include "ck/geoflow.hpp"
#include "ck/kepler.hpp"
#include "ck/oracle.hpp"
#include "json.hpp"

namespace ck::tools {

namespace {

using std::numbers::pi;

struct Report {
    std::string suite;
    std::ostream& out;
    bool ok = true;

    void check(const std::string& name, double value, double limit) {
        const bool pass = value < limit;
        ok = ok && pass;
        out << nlohmann::json{{"suite", suite}, {"check", name}, {"value", value}, {"limit", limit}, {"pass", pass}}.dump()
            << '\n';
    }
};

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

void suite_trig(Report& rep) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> K(-10, 10), X(-5, 5);
    double ident = 0, vers = 0;
    for (int i = 0; i < 10000; ++i) {
        const double kappa = K(rng), x = X(rng);
        const Trig t = ck_trig(kappa, x);
        ident = std::max(ident, std::abs(t.C * t.C + kappa * t.S * t.S - 1) / (t.C * t.C + std::abs(kappa) * t.S * t.S));
        vers = std::max(vers, std::abs(t.C - (1 - kappa * t.V)) / std::max({1.0, std::abs(t.C), std::abs(kappa * t.V)}));
    }
    rep.check("pythagorean identity", ident, 1e-12);
    rep.check("versine relation", vers, 1e-12);

    double seam = 0;
    std::uniform_real_distribution<double> U(0.5, 2.0), Y(0.01, 3.0);
    for (int i = 0; i < 2000; ++i) {
        const double x = Y(rng), kappa = (i % 2 ? 1 : -1) * U(rng) * kSeriesThreshold / (x * x);
        const Trig a = series::trig(kappa, x), b = direct::trig(kappa, x);
        seam = std::max({seam, std::abs(a.C - b.C), std::abs(a.S - b.S) / std::max(1.0, x),
                         std::abs(a.V - b.V) / std::max(1.0, x * x)});
    }
    rep.check("series/direct seam", seam, 1e-13);

    double inv = 0;
    std::uniform_real_distribution<double> W(-0.99, 0.99), L(-4, 4);
    for (int i = 0; i < 2000; ++i) {
        const double kappa = L(rng);
        const double x = kappa > 0 ? W(rng) * pi / (2 * std::sqrt(kappa)) : 3 * W(rng);
        inv = std::max(inv, std::abs(ck_atan(kappa, ck_tan(kappa, x)) - x) / std::max(1.0, std::abs(x)));
    }
    rep.check("atan inverts tan", inv, 1e-12);
}

void suite_ckspace(Report& rep) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> K(-2, 2), R(0.05, 0.7), A(-2, 2);
    double kin = 0, amb = 0, rt = 0;
    for (int i = 0; i < 3000; ++i) {
        const CKSpace sp{K(rng), K(rng)};
        const PolarPoint p{R(rng), A(rng)};
        const double rd = A(rng), pd = A(rng);
        const Momenta m = noether_momenta(sp, p, rd, pd);
        const double lhs = metric_speed2(sp, p, rd, pd);
        kin = std::max(kin, rel(m.P1 * m.P1 + sp.kappa2 * m.P2 * m.P2 + sp.kappa1 * sp.kappa2 * m.J * m.J, lhs));
        const AmbientPoint a = embed_ambient(sp, p);
        amb = std::max(amb, std::abs(ambient_constraint(sp, a) - 1) /
                                std::max(1.0, a.s0 * a.s0 + std::abs(sp.kappa1) * (a.s1 * a.s1 + std::abs(sp.kappa2) * a.s2 * a.s2)));
        try {
            const PolarPoint b = parallel1_to_polar(sp, polar_to_parallel1(sp, p));
            rt = std::max({rt, rel(b.r, p.r), rel(b.phi, p.phi)});
        } catch (const DomainError&) {
        }
    }
    rep.check("kinetic form equals momentum form", kin, 1e-10);
    rep.check("ambient constraint", amb, 1e-12);
    rep.check("parallel-1 round trip", rt, 1e-10);
}

std::vector<OrbitParams> sample_orbits(double k2) {
    std::vector<OrbitParams> out;
    for (double k1 : {-1.0, 0.0, 1.0})
        for (double E : {-1.2, -0.5, 0.0, 0.4})
            for (double J : {0.3, 0.6}) {
                try {
                    const OrbitParams o = orbit_from_dynamical({k1, k2}, 1, E, J);
                    if (o.sigma != 0) out.push_back(o);
                } catch (const DomainError&) {
                }
            }
    return out;
}

// s-values on the physical branch of o within its natural span.
std::vector<double> s_grid(const OrbitParams& o, int n) {
    const double span = s_period(o) < 50 ? s_period(o) : 1.5;
    std::vector<double> out;
    for (int i = 0; i <= n; ++i) {
        const double s = -0.5 * span + span * i / n;
        if (o.A < 0 && !(tan_r_of_s(o, s) < 0)) continue;
        if (o.space.kappa1 < 0 && std::abs(tan_r_of_s(o, s)) * std::sqrt(-o.space.kappa1) > 0.8) continue;
        if (std::abs(1 - o.e * ck_cos(o.sigma, s)) < 1e-3) continue;
        out.push_back(s);
    }
    return out;
}

void suite_kepler(Report& rep) {
    const OrbitParams sph = orbit_from_dynamical({1, 1}, 1, -1, 0.5);
    rep.check("sphere eccentricity", std::abs(sph.e - std::sqrt(7.0) / 4), 1e-14);
    rep.check("sphere semilatus rectum", std::abs(sph.p - std::atan(0.25)), 1e-14);
    rep.check("sphere apoastron phi", std::abs(phi_of_s(sph, pi / 1.5) - pi), 1e-13);
    const PeriodReport pr = period_of_semimajor({1, 1}, 1, pi / 6);
    rep.check("sphere period", std::abs(pr.T * pr.T - pi * pi * std::sin(pi / 3) * (1 - std::cos(pi / 3))), 1e-13);
    rep.check("1-2-3 residual", std::abs(pr.residual_123), 1e-10);

    double orbit_eq = 0, sym = 0, paths = 0, inv = 0, dtds = 0;
    for (double k2 : {1.0, -1.0})
        for (const OrbitParams& o : sample_orbits(k2))
            for (double s : s_grid(o, 12)) {
                const double r = r_of_s(o, s), phi = phi_of_s(o, s);
                if (k2 > 0 && 1 + o.e * ck_cos(k2, phi) > 1e-6) orbit_eq = std::max(orbit_eq, rel(r_of_phi(o, phi), r));
                sym = std::max(sym, rel((1 - o.e * ck_cos(o.sigma, s)) / o.sigma * (1 + o.e * ck_cos(k2, phi)) / k2,
                                        o.J * o.J / (o.k * o.k)));
                const double t = t_of_s(o, s);
                if (s != 0) paths = std::max(paths, std::abs(t - quadrature_t_of_s(o, s, 1e-12)) / std::abs(t));
                inv = std::max(inv, std::abs(t_of_s(o, s_of_t(o, t)) - t) / std::max(1.0, std::abs(t)));
                const double h = 1e-5;
                try {
                    const double d = (t_of_s(o, s + h) - t_of_s(o, s - h)) / (2 * h);
                    dtds = std::max(dtds, rel(d, dt_ds(o, s)));
                } catch (const DomainError&) {
                }
            }
    rep.check("orbit equation consistency", orbit_eq, 1e-9);
    rep.check("sigma-phi symmetry", sym, 1e-9);
    rep.check("closed form vs quadrature", paths, 1e-8);
    rep.check("s_of_t inversion", inv, 1e-10);
    rep.check("dt/ds finite difference", dtds, 1e-6);
}

void suite_geoflow(Report& rep) {
    double cycle = 0, ident = 0, energy = 0;
    for (double k2 : {1.0, -1.0})
        for (const OrbitParams& o : sample_orbits(k2)) {
            const double target = o.k * o.k / (k2 * o.J * o.J);
            for (double s : s_grid(o, 40)) {
                const MomentumPoint P = hodograph_of_s(o, s);
                cycle = std::max(cycle, rel(hodograph_form(o, P), target));
                const SlowmentumPoint g = geodesic_slowmentum(o.sigma, k2, o.epsilon, s);
                if (!g.at_infinity) {
                    const SlowmentumPoint w = slowmentum(P, k2);
                    ident = std::max({ident, std::abs(g.W1 - w.W1), std::abs(g.W2 - w.W2)});
                }
                energy = std::max(energy, rel(0.5 * (P.P1 * P.P1 + k2 * P.P2 * P.P2 + o.sigma), o.k / tan_r_of_s(o, s)));
            }
        }
    rep.check("hodograph cycle", cycle, 1e-10);
    rep.check("geodesic identification", ident, 1e-9);
    rep.check("energy identity", energy, 1e-9);
    double curv = 0;
    for (double sigma : {-1.0, 0.0, 2.25})
        for (auto P : {MomentumPoint{0.3, 0.4}, MomentumPoint{0.5, 0.2}, MomentumPoint{-0.2, 0.1}})
            curv = std::max(curv, std::abs(lc_curvature_numeric(sigma, 1, P, 1e-3) - sigma));
    rep.check("Levi-Civita curvature", curv, 1e-3);
}

void suite_oracle(Report& rep, double tol) {
    const CKSpace S2{1, 1};
    const OrbitParams o = orbit_from_dynamical(S2, 1, -1, 0.5);
    const double T = period_of_energy(S2, 1, -1).T;
    const PhaseState init = phase_state_of_orbit(o, 0);
    const Trajectory tr = integrate(S2, 1, init, T, tol);
    const PhaseState f = tr.samples.back();
    rep.check("sphere orbit closure", std::max({std::abs(f.r - init.r), std::abs(f.rdot), std::abs(f.phi - 2 * pi)}), 1e-7);
    const Drift d = conserved_drift(tr);
    rep.check("sphere drift", std::max({d.dE, d.dJ, d.dE01, d.dE02}), 1e-8);

    double worst = 0;
    for (double k1 : {-1.0, 0.0, 1.0})
        for (double sigma : {-1.0, 2.25}) {
            const OrbitParams q = orbit_from_sigma({k1, 1}, 1, sigma, 0.5);
            const double span = s_period(q) < 50 ? s_period(q) : 0.8;
            PhaseState st0 = phase_state_of_orbit(q, 0);
            const Trajectory t = integrate(q.space, 1, st0, t_of_s(q, span), tol);
            for (const PhaseState& st : t.samples) worst = std::max(worst, std::abs(st.r - r_of_s(q, s_of_t(q, st.t))));
        }
    rep.check("oracle vs closed form radius", worst, 1e-6);

    const PhaseState drop{0.5, 0, 0, 0, 0};
    const OrbitParams c = orbit_from_dynamical(S2, 1, energy_of_state(S2, 1, drop), 0);
    const Trajectory tc = integrate(S2, 1, drop, 1.5 * t_of_s(c, pi / std::sqrt(c.sigma)), tol);
    const Drift dc = conserved_drift(tc);
    rep.check("collision drift", std::max({dc.dE, dc.dJ, dc.dE01, dc.dE02}), 1e-7);
}

}  // namespace

const std::vector<std::string>& verify_suites() {
    static const std::vector<std::string> names{"trig", "ckspace", "kepler", "geoflow", "oracle", "all"};
    return names;
}

bool run_verify(const std::string& suite, double tol, std::ostream& out) {
    const auto& names = verify_suites();
    if (std::find(names.begin(), names.end(), suite) == names.end())
        throw std::invalid_argument("unknown suite: " + suite);
    bool ok = true;
    auto run = [&](const std::string& name, const std::function<void(Report&)>& fn) {
        if (suite != "all" && suite != name) return;
        Report rep{name, out};
        fn(rep);
        ok = ok && rep.ok;
    };
    run("trig", suite_trig);
    run("ckspace", suite_ckspace);
    run("kepler", suite_kepler);
    run("geoflow", suite_geoflow);
    run("oracle", [tol](Report& r) { suite_oracle(r, tol); });
    return ok;
}

}  // namespace ck::tools
