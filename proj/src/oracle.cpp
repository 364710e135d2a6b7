#include "ck/oracle.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "ck/cktrig.hpp"
#include "ck/errors.hpp"

namespace ck {

namespace {

using Vec = std::array<double, 4>;

// Dormand-Prince 5(4) tableau with Hairer's continuous extension.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784, a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

struct StepResult {
    Vec y1, k7;
    double err;
    std::array<Vec, 5> rc;
};

template <class F>
StepResult dopri_step(const F& f, double x, const Vec& y, const Vec& k1, double h, double tol) {
    Vec k2, k3, k4, k5, k6, k7, tmp, y1;
    for (int i = 0; i < 4; ++i) tmp[i] = y[i] + h * a21 * k1[i];
    f(x + c2 * h, tmp, k2);
    for (int i = 0; i < 4; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    f(x + c3 * h, tmp, k3);
    for (int i = 0; i < 4; ++i) tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    f(x + c4 * h, tmp, k4);
    for (int i = 0; i < 4; ++i) tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    f(x + c5 * h, tmp, k5);
    for (int i = 0; i < 4; ++i)
        tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    f(x + h, tmp, k6);
    for (int i = 0; i < 4; ++i)
        y1[i] = y[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
    f(x + h, y1, k7);

    StepResult out;
    out.y1 = y1;
    out.k7 = k7;
    double sum = 0;
    for (int i = 0; i < 4; ++i) {
        const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
        const double sk = tol + tol * std::max(std::abs(y[i]), std::abs(y1[i]));
        sum += (ei / sk) * (ei / sk);
    }
    out.err = std::sqrt(sum / 4);
    if (!std::isfinite(out.err)) out.err = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 4; ++i) {
        const double ydiff = y1[i] - y[i];
        const double bspl = h * k1[i] - ydiff;
        out.rc[0][i] = y[i];
        out.rc[1][i] = ydiff;
        out.rc[2][i] = bspl;
        out.rc[3][i] = ydiff - h * k7[i] - bspl;
        out.rc[4][i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
    }
    return out;
}

Vec dense(const std::array<Vec, 5>& rc, double th) {
    const double th1 = 1 - th;
    Vec y;
    for (int i = 0; i < 4; ++i) y[i] = rc[0][i] + th * (rc[1][i] + th1 * (rc[2][i] + th * (rc[3][i] + th1 * rc[4][i])));
    return y;
}

// Hairer's PI controller constants.
constexpr double kBeta = 0.04, kExpo = 0.2 - kBeta * 0.75, kSafe = 0.9, kFacMin = 0.2, kFacMax = 10.0;

struct TimeRhs {
    CKSpace sp;
    double k;
    void operator()(double, const Vec& y, Vec& dy) const {
        const Trig a = ck_trig(sp.kappa1, y[0]);
        dy[0] = y[2];
        dy[1] = y[3];
        dy[2] = sp.kappa2 * a.S * a.C * y[3] * y[3] - k / (a.S * a.S);
        dy[3] = -2 * (a.C / a.S) * y[2] * y[3];
    }
};

// Regularized flow: dt/ds = S C, with the radial equation written through the
// first integrals so that it stays finite at r = 0.
struct ParamRhs {
    CKSpace sp;
    double k, E, J, orient;
    void operator()(double, const Vec& y, Vec& dy) const {
        const Trig a = ck_trig(sp.kappa1, y[0]);
        const double S = a.S, C = a.C, k1 = sp.kappa1;
        dy[0] = y[2];
        dy[1] = J == 0 ? 0.0 : orient * J * C / S;
        dy[2] = 2 * E * S * C * (C * C - k1 * S * S) + k * (C * C * C * C - 3 * k1 * S * S * C * C) +
                k1 * sp.kappa2 * J * J * S * C;
        dy[3] = orient * S * C;
    }
};

double length_scale(const CKSpace& sp) { return sp.kappa1 != 0 ? 1 / std::sqrt(std::abs(sp.kappa1)) : 1.0; }

// rdot = (dr/ds)/(S C) amplifies the dr/ds error by the inverse switch
// threshold, so its magnitude comes from the first integrals the s-mode carries.
PhaseState from_param(const CKSpace& sp, double k, const Vec& y, double E, double J, double orient) {
    const Trig a = ck_trig(sp.kappa1, y[0]);
    double rdot = y[2] / (orient * a.S * a.C);
    const double rdot2 = 2 * (E + k * a.C / a.S) - sp.kappa2 * J * J / (a.S * a.S);
    if (rdot2 > 0) rdot = std::copysign(std::sqrt(rdot2), rdot);
    return {y[0], y[1], rdot, J / (a.S * a.S), y[3]};
}

}  // namespace

double energy_of_state(const CKSpace& sp, double k, const PhaseState& st) {
    const Trig a = ck_trig(sp.kappa1, st.r);
    return 0.5 * (st.rdot * st.rdot + sp.kappa2 * a.S * a.S * st.phidot * st.phidot) - k * a.C / a.S;
}

Trajectory integrate(const CKSpace& sp, double k, const PhaseState& init, double t_end, double tol,
                     const IntegrateOptions& opt) {
    if (!(t_end > init.t)) throw UsageError("integrate: t_end must exceed the initial time");
    if (!(tol > 0)) throw UsageError("integrate: tolerance must be positive");
    if (init.r == 0 || !std::isfinite(init.r)) throw DomainError("integrate: initial radius must be nonzero");
    if (sp.kappa1 > 0 && std::abs(init.r) >= std::numbers::pi / std::sqrt(sp.kappa1))
        throw DomainError("integrate: initial radius beyond the antipode");

    Trajectory tr;
    tr.space = sp;
    tr.k = k;
    tr.tol = tol;
    tr.switch_threshold = opt.switch_factor * length_scale(sp);
    tr.E0 = energy_of_state(sp, k, init);
    tr.J0 = ck_sin(sp.kappa1, init.r) * ck_sin(sp.kappa1, init.r) * init.phidot;

    const TimeRhs frhs{sp, k};
    const double thr = tr.switch_threshold;
    const double rpole = sp.kappa1 > 0 ? std::numbers::pi / std::sqrt(sp.kappa1) : 0.0;
    auto sc_of = [&](double r) {
        const Trig a = ck_trig(sp.kappa1, r);
        return a.S * a.C;
    };

    bool reg = false;
    ParamRhs prhs{sp, k, 0, 0, 1};
    Vec y{init.r, init.phi, init.rdot, init.phidot};
    double x = init.t;
    double h = std::min(1e-3 * (t_end - init.t), 1e-2 * length_scale(sp));
    double facold = 1e-4;

    auto enter_param = [&](const PhaseState& st) {
        const Trig a = ck_trig(sp.kappa1, st.r);
        prhs.J = a.S * a.S * st.phidot;
        prhs.E = energy_of_state(sp, k, st);
        prhs.orient = a.S * a.C > 0 ? 1.0 : -1.0;
        const double sc = std::abs(a.S * a.C);
        y = {st.r, st.phi, st.rdot * sc, st.t};
        h = h / sc;
        x = 0;
        reg = true;
        facold = 1e-4;
    };
    auto enter_time = [&]() {
        const PhaseState st = from_param(sp, k, y, prhs.E, prhs.J, prhs.orient);
        h = h * std::abs(sc_of(st.r));
        y = {st.r, st.phi, st.rdot, st.phidot};
        x = st.t;
        reg = false;
        facold = 1e-4;
    };
    auto current = [&]() -> PhaseState {
        if (reg) return from_param(sp, k, y, prhs.E, prhs.J, prhs.orient);
        return {y[0], y[1], y[2], y[3], x};
    };

    if (std::abs(sc_of(init.r)) < thr) enter_param(init);
    tr.samples.push_back(init);
    tr.regularized.push_back(reg);

    Vec k1;
    auto eval = [&](double xx, const Vec& yy, Vec& dy) {
        if (reg)
            prhs(xx, yy, dy);
        else
            frhs(xx, yy, dy);
    };
    eval(x, y, k1);

    for (;;) {
        if (tr.steps + tr.rejected > opt.max_steps) throw StiffnessError("integrate: step budget exhausted");
        if (!reg) h = std::min(h, t_end - x);
        if (!(std::abs(h) > 1e-15 * std::max(1.0, std::abs(x))))
            throw StiffnessError("integrate: step size underflow");

        const StepResult st = reg ? dopri_step(prhs, x, y, k1, h, tol) : dopri_step(frhs, x, y, k1, h, tol);
        bool ok = st.err <= 1.0;
        if (ok && !(std::isfinite(st.y1[0]) && std::isfinite(st.y1[1]) && std::isfinite(st.y1[2]) &&
                    std::isfinite(st.y1[3])))
            ok = false;
        if (!ok) {
            const double fac11 = std::isfinite(st.err) ? std::pow(st.err, kExpo) : 1.0 / kFacMin;
            h /= std::min(1.0 / kFacMin, fac11 / kSafe);
            ++tr.rejected;
            continue;
        }

        const double r1 = st.y1[0];
        if (sp.kappa1 > 0 && std::abs(r1) >= rpole) throw DomainError("integrate: orbit crosses the antipode");
        if (!reg && (r1 > 0) != (y[0] > 0)) throw DomainError("integrate: radius changed sign with J != 0");

        Trajectory::Segment seg;
        seg.reg = reg;
        seg.x0 = x;
        seg.h = h;
        seg.E = prhs.E;
        seg.J = prhs.J;
        seg.orient = prhs.orient;
        seg.rc = st.rc;
        seg.t0 = reg ? y[3] : x;
        seg.t1 = reg ? st.y1[3] : x + h;

        // PI step-size update
        const double fac11 = std::pow(std::max(st.err, 1e-16), kExpo);
        double fac = fac11 / std::pow(facold, kBeta);
        fac = std::max(1.0 / kFacMax, std::min(1.0 / kFacMin, fac / kSafe));
        const double hnew = h / fac;
        facold = std::max(st.err, 1e-4);
        ++tr.steps;

        bool done = false;
        if (reg && st.y1[3] >= t_end) {
            double lo = 0, hi = 1;
            for (int i = 0; i < 200 && hi - lo > 1e-16; ++i) {
                const double mid = 0.5 * (lo + hi);
                if (dense(st.rc, mid)[3] < t_end)
                    lo = mid;
                else
                    hi = mid;
            }
            y = dense(st.rc, hi);
            y[3] = t_end;
            x += hi * h;
            seg.t1 = t_end;
            done = true;
        } else {
            x += h;
            y = st.y1;
            if (!reg && x >= t_end) {
                x = t_end;
                done = true;
            }
        }
        k1 = st.k7;
        h = hnew;
        tr.segments.push_back(seg);
        tr.samples.push_back(current());
        tr.regularized.push_back(reg);
        if (done) break;

        const double sc = sc_of(y[0]);
        if (!reg && std::abs(sc) < thr && y[0] * y[2] < 0) {
            enter_param(current());
            eval(x, y, k1);
        } else if (reg && std::abs(sc) > 2 * thr && y[0] * y[2] > 0) {
            enter_time();
            eval(x, y, k1);
        }
    }
    return tr;
}

PhaseState Trajectory::at(double t) const {
    if (segments.empty()) throw UsageError("trajectory: no dense output");
    if (t < segments.front().t0 || t > segments.back().t1) throw OutOfRange("trajectory: time outside the run");
    auto it = std::lower_bound(segments.begin(), segments.end(), t,
                               [](const Segment& s, double tt) { return s.t1 < tt; });
    if (it == segments.end()) it = std::prev(segments.end());
    const Segment& s = *it;
    if (!s.reg) {
        const Vec y = dense(s.rc, (t - s.x0) / s.h);
        return {y[0], y[1], y[2], y[3], t};
    }
    double lo = 0, hi = 1;
    for (int i = 0; i < 200 && hi - lo > 1e-16; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (dense(s.rc, mid)[3] < t)
            lo = mid;
        else
            hi = mid;
    }
    Vec y = dense(s.rc, 0.5 * (lo + hi));
    y[3] = t;
    return from_param(space, this->k, y, s.E, s.J, s.orient);
}

PhaseState phase_state_of_orbit(const OrbitParams& o, double s) {
    const double r = r_of_s(o, s);
    const Trig a = ck_trig(o.space.kappa1, r);
    const double j = o.has_J() ? o.direction * o.J : 0.0;
    const double rdot = o.k * o.e * ck_sin(o.sigma, s) * a.C / a.S;
    return {r, phi_of_s(o, s), rdot, j / (a.S * a.S), t_of_s(o, s)};
}

double quadrature_t_of_s(const OrbitParams& o, double s, double tol) {
    using boost::math::quadrature::gauss_kronrod;
    const double k1 = o.space.kappa1, sig = o.sigma;
    auto f = [&](double x) {
        const Trig g = ck_trig(sig, x);
        // (1 - e C_sigma(s)) / sigma, switched to V + A C near sigma = 0
        const double w = std::abs(sig) >= 1e-6 ? (1 - o.e * g.C) / sig : g.V + o.A * g.C;
        const double den = 1 + k1 * o.k * o.k * w * w;
        if (!(den > 0)) throw DomainError("quadrature_t_of_s: integrand pole inside the range");
        return o.k * w / den;
    };
    const double piece = sig != 0 ? 0.25 * std::numbers::pi / std::sqrt(std::abs(sig)) : 1.0;
    const int n = std::clamp(static_cast<int>(std::ceil(std::abs(s) / piece)), 1, 4096);
    const double h = s / n;
    double total = 0;
    for (int i = 0; i < n; ++i)
        total += gauss_kronrod<double, 61>::integrate(f, i * h, (i + 1) * h, 20, std::min(tol, 1e-10));
    return total;
}

Drift conserved_drift(const Trajectory& traj) {
    Drift d;
    if (traj.samples.empty()) return d;
    const CKSpace& sp = traj.space;
    const double thr = traj.switch_threshold;
    bool have_ref = false;
    EccentricityVector ref{};
    for (const PhaseState& st : traj.samples) {
        const Trig a = ck_trig(sp.kappa1, st.r);
        if (std::isfinite(st.phidot)) d.dJ = std::max(d.dJ, std::abs(a.S * a.S * st.phidot - traj.J0));
        if (std::abs(a.S * a.C) < thr || !std::isfinite(st.rdot)) continue;
        d.dE = std::max(d.dE, std::abs(energy_of_state(sp, traj.k, st) - traj.E0));
        const EccentricityVector ev = eccentricity_vector(sp, traj.k, st);
        if (!have_ref) {
            ref = ev;
            have_ref = true;
        }
        d.dE01 = std::max(d.dE01, std::abs(ev.E01 - ref.E01));
        d.dE02 = std::max(d.dE02, std::abs(ev.E02 - ref.E02));
    }
    return d;
}

}  // namespace ck
