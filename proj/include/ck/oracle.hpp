#pragma once

#include <array>
#include <vector>

#include "ck/ckspace.hpp"
#include "ck/geoflow.hpp"
#include "ck/kepler.hpp"

namespace ck {

struct IntegrateOptions {
    // Switch to the regularized parameter when |S(r) C(r)| drops below
    // switch_factor * length scale (1/sqrt|kappa1|, or 1 when flat).
    double switch_factor = 1e-4;
    long max_steps = 5'000'000;
};

struct Trajectory {
    CKSpace space;
    double k = 1.0;
    double tol = 1e-10;
    double switch_threshold = 0.0;
    double E0 = 0.0, J0 = 0.0;  // first integrals of the initial state

    std::vector<PhaseState> samples;
    std::vector<char> regularized;  // sample taken while integrating in s
    long steps = 0, rejected = 0;

    // Dense output over one accepted step. Mode t: y = (r, phi, rdot, phidot)
    // in x = t. Mode s: y = (r, phi, dr/dx, t) in x = orientation * s.
    struct Segment {
        bool reg = false;
        double x0 = 0, h = 0, t0 = 0, t1 = 0;
        double E = 0, J = 0, orient = 1;
        std::array<std::array<double, 4>, 5> rc{};
    };
    std::vector<Segment> segments;

    [[nodiscard]] PhaseState at(double t) const;
    [[nodiscard]] double t_begin() const { return samples.empty() ? 0.0 : samples.front().t; }
    [[nodiscard]] double t_end() const { return samples.empty() ? 0.0 : samples.back().t; }
};

// Integrates the equations of motion from init up to t_end (> init.t).
[[nodiscard]] Trajectory integrate(const CKSpace& sp, double k, const PhaseState& init, double t_end, double tol,
                                   const IntegrateOptions& opt = {});

// Phase state at the periastron-side point s of an orbit, from the closed
// forms: handy initial condition for oracle runs.
[[nodiscard]] PhaseState phase_state_of_orbit(const OrbitParams& o, double s);

[[nodiscard]] double energy_of_state(const CKSpace& sp, double k, const PhaseState& st);

[[nodiscard]] double quadrature_t_of_s(const OrbitParams& o, double s, double tol);

struct Drift {
    double dE = 0, dJ = 0, dE01 = 0, dE02 = 0;
};

// Energy and eccentricity vector are compared only at samples outside the
// collision zone, where the polar velocity is finite.
[[nodiscard]] Drift conserved_drift(const Trajectory& traj);

}  // namespace ck
