#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace ck {

struct CKSpace {
    double kappa1 = 0.0;  // curvature
    double kappa2 = 1.0;  // signature type
};

// E2, S2, H2, M11, dS11, AdS11, G11, NH11, ANH11
[[nodiscard]] std::optional<CKSpace> named_space(std::string_view name);
[[nodiscard]] std::string space_name(const CKSpace& sp);  // "" when not one of the nine

struct PolarPoint {
    double r = 0.0;
    double phi = 0.0;
};

struct ParallelPoint2 {
    double u = 0.0;  // label kappa1
    double v = 0.0;  // label kappa1*kappa2
};

struct ParallelPoint1 {
    double x = 0.0;  // label kappa1
    double y = 0.0;  // label kappa1*kappa2
};

struct AmbientPoint {
    double s0 = 1.0, s1 = 0.0, s2 = 0.0;
};

struct PlanePoint {
    double w1 = 0.0, w2 = 0.0;
    bool at_infinity = false;
};

struct Momenta {
    double P1 = 0.0, P2 = 0.0, J = 0.0;
};

// Throws DomainError when r is outside [0, pi/sqrt(kappa1)) for kappa1 > 0,
// and brings phi to (-pi/sqrt(kappa2), pi/sqrt(kappa2)] for kappa2 > 0.
[[nodiscard]] PolarPoint canonical(const CKSpace& sp, PolarPoint p);

[[nodiscard]] ParallelPoint2 polar_to_parallel2(const CKSpace& sp, const PolarPoint& p);
[[nodiscard]] PolarPoint parallel2_to_polar(const CKSpace& sp, const ParallelPoint2& q);
[[nodiscard]] ParallelPoint1 polar_to_parallel1(const CKSpace& sp, const PolarPoint& p);
[[nodiscard]] PolarPoint parallel1_to_polar(const CKSpace& sp, const ParallelPoint1& q);

[[nodiscard]] double metric_speed2(const CKSpace& sp, const PolarPoint& p, double rdot, double phidot);
[[nodiscard]] Momenta noether_momenta(const CKSpace& sp, const PolarPoint& p, double rdot, double phidot);

[[nodiscard]] AmbientPoint embed_ambient(const CKSpace& sp, const PolarPoint& p);
[[nodiscard]] double ambient_constraint(const CKSpace& sp, const AmbientPoint& a);
[[nodiscard]] PlanePoint stereographic_project(const AmbientPoint& a);

}  // namespace ck
