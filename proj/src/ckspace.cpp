#include "ck/ckspace.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "ck/cktrig.hpp"
#include "ck/errors.hpp"

namespace ck {

namespace {

struct Named {
    const char* name;
    double k1, k2;
};

constexpr std::array<Named, 9> kNamed{{
    {"S2", 1, 1},
    {"E2", 0, 1},
    {"H2", -1, 1},
    {"AdS11", 1, -1},
    {"M11", 0, -1},
    {"dS11", -1, -1},
    {"ANH11", 1, 0},
    {"G11", 0, 0},
    {"NH11", -1, 0},
}};

double sq(double x) { return x * x; }

}  // namespace

std::optional<CKSpace> named_space(std::string_view name) {
    for (const auto& n : kNamed)
        if (name == n.name) return CKSpace{n.k1, n.k2};
    return std::nullopt;
}

std::string space_name(const CKSpace& sp) {
    for (const auto& n : kNamed)
        if (sp.kappa1 == n.k1 && sp.kappa2 == n.k2) return n.name;
    return {};
}

PolarPoint canonical(const CKSpace& sp, PolarPoint p) {
    if (!std::isfinite(p.r) || !std::isfinite(p.phi)) throw DomainError("polar point: non-finite");
    if (p.r < 0) throw DomainError("polar point: negative radius");
    if (sp.kappa1 > 0 && p.r >= std::numbers::pi / std::sqrt(sp.kappa1))
        throw DomainError("polar point: radius reaches the antipode");
    if (sp.kappa2 > 0) {
        const double half = std::numbers::pi / std::sqrt(sp.kappa2);
        const double period = 2 * half;
        p.phi -= period * std::ceil((p.phi - half) / period);
    }
    return p;
}

ParallelPoint2 polar_to_parallel2(const CKSpace& sp, const PolarPoint& p) {
    const double tr = ck_tan(sp.kappa1, p.r);
    if (is_pole(tr)) throw DomainError("polar_to_parallel2: radius at a tangent pole");
    const Trig a = ck_trig(sp.kappa2, p.phi);
    return {ck_atan(sp.kappa1, tr * a.C), ck_atan(sp.kappa1 * sp.kappa2, tr * a.S)};
}

PolarPoint parallel2_to_polar(const CKSpace& sp, const ParallelPoint2& q) {
    const double tu = ck_tan(sp.kappa1, q.u);
    const double tv = ck_tan(sp.kappa1 * sp.kappa2, q.v);
    const double tr2 = sq(tu) + sp.kappa2 * sq(tv);
    if (!(tr2 >= 0)) throw DomainError("parallel2_to_polar: point outside the polar chart");
    const double tr = std::sqrt(tr2);
    if (tr == 0) return {0.0, 0.0};
    return {ck_atan(sp.kappa1, tr), ck_atan2(sp.kappa2, tv / tr, tu / tr)};
}

ParallelPoint1 polar_to_parallel1(const CKSpace& sp, const PolarPoint& p) {
    const double sr = ck_sin(sp.kappa1, p.r);
    const Trig a = ck_trig(sp.kappa2, p.phi);
    return {ck_asin(sp.kappa1, sr * a.C), ck_asin(sp.kappa1 * sp.kappa2, sr * a.S)};
}

PolarPoint parallel1_to_polar(const CKSpace& sp, const ParallelPoint1& q) {
    const double sx = ck_sin(sp.kappa1, q.x);
    const double sy = ck_sin(sp.kappa1 * sp.kappa2, q.y);
    const double sr2 = sq(sx) + sp.kappa2 * sq(sy);
    if (!(sr2 >= 0)) throw DomainError("parallel1_to_polar: point outside the polar chart");
    const double sr = std::sqrt(sr2);
    if (sr == 0) return {0.0, 0.0};
    return {ck_asin(sp.kappa1, sr), ck_atan2(sp.kappa2, sy, sx)};
}

double metric_speed2(const CKSpace& sp, const PolarPoint& p, double rdot, double phidot) {
    return sq(rdot) + sp.kappa2 * sq(ck_sin(sp.kappa1, p.r) * phidot);
}

Momenta noether_momenta(const CKSpace& sp, const PolarPoint& p, double rdot, double phidot) {
    const Trig r = ck_trig(sp.kappa1, p.r);
    const Trig f = ck_trig(sp.kappa2, p.phi);
    const double cs = r.C * r.S * phidot;
    return {f.C * rdot - sp.kappa2 * cs * f.S, f.S * rdot + cs * f.C, r.S * r.S * phidot};
}

AmbientPoint embed_ambient(const CKSpace& sp, const PolarPoint& p) {
    const Trig r = ck_trig(sp.kappa1, p.r);
    const Trig f = ck_trig(sp.kappa2, p.phi);
    return {r.C, r.S * f.C, r.S * f.S};
}

double ambient_constraint(const CKSpace& sp, const AmbientPoint& a) {
    return sq(a.s0) + sp.kappa1 * sq(a.s1) + sp.kappa1 * sp.kappa2 * sq(a.s2);
}

PlanePoint stereographic_project(const AmbientPoint& a) {
    const double d = 1.0 + a.s0;
    if (d == 0) return {0.0, 0.0, true};
    return {a.s1 / d, a.s2 / d, false};
}

}  // namespace ck
