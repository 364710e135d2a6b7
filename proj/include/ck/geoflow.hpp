#pragma once

#include "ck/ckspace.hpp"
#include "ck/kepler.hpp"

namespace ck {

struct MomentumPoint {
    double P1 = 0, P2 = 0;
};

struct SlowmentumPoint {
    double W1 = 0, W2 = 0;
    bool at_infinity = false;
};

struct PhaseState {
    double r = 0, phi = 0, rdot = 0, phidot = 0;
    double t = 0;
};

struct EccentricityVector {
    double E01 = 0, E02 = 0;
};

// Centre (0, k e / (kappa2 J)) and the kappa2-quadratic form of (P - centre),
// which equals k^2 / (kappa2 J^2) on the hodograph.
[[nodiscard]] MomentumPoint hodograph_center(const OrbitParams& o);
[[nodiscard]] double hodograph_form(const OrbitParams& o, const MomentumPoint& P);

[[nodiscard]] MomentumPoint hodograph_of_phi(const OrbitParams& o, double phi);
[[nodiscard]] MomentumPoint hodograph_of_s(const OrbitParams& o, double s);

[[nodiscard]] EccentricityVector eccentricity_vector(const CKSpace& sp, double k, const PhaseState& st);

[[nodiscard]] SlowmentumPoint slowmentum(const MomentumPoint& P, double kappa2);

[[nodiscard]] double lc_conformal_factor(const MomentumPoint& P, double sigma, double kappa2);
[[nodiscard]] double lc_curvature_numeric(double sigma, double kappa2, const MomentumPoint& P, double h);

[[nodiscard]] SlowmentumPoint geodesic_slowmentum(double sigma, double kappa2, double epsilon, double s);

[[nodiscard]] double epsilon_of_orbit(const OrbitParams& o);

}  // namespace ck
