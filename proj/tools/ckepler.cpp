#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "CLI11.hpp"
#include "ck/ckspace.hpp"
#include "ck/errors.hpp"
#include "ck/geoflow.hpp"
#include "ck/kepler.hpp"
#include "json.hpp"
#include "verify.hpp"

namespace {

constexpr int kExitDomain = 2;
constexpr int kExitIO = 3;
constexpr int kExitUsage = 64;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct IOError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SpaceArgs {
    std::string name;
    std::optional<double> k1, k2;
};

struct OrbitArgs {
    double k = 1.0;
    std::optional<double> E, J, k2J2, e, p;
    double phi0 = 0.0;
};

struct SolveArgs {
    int samples = 100;
    std::string param = "s";
    std::optional<double> span;
    std::string out;
    std::string format = "json";
};

struct PeriodArgs {
    std::optional<double> a;
    std::string format = "text";
};

struct Record {
    double s, t, r, phi, u, v, P1, P2, W1, W2;
};

ck::CKSpace resolve_space(const SpaceArgs& a) {
    if (!a.name.empty()) {
        if (a.k1 || a.k2) throw ck::UsageError("--space excludes --k1/--k2");
        const auto sp = ck::named_space(a.name);
        if (!sp) throw ck::UsageError("unknown space '" + a.name + "'");
        return *sp;
    }
    if (!a.k1 || !a.k2) throw ck::UsageError("give --space NAME or both --k1 and --k2");
    return {*a.k1, *a.k2};
}

ck::OrbitParams resolve_orbit(const ck::CKSpace& sp, const OrbitArgs& a) {
    if (a.E && a.J && !a.k2J2 && !a.e && !a.p) return ck::orbit_from_dynamical(sp, a.k, *a.E, *a.J, a.phi0);
    if (a.E && a.k2J2 && !a.J && !a.e && !a.p) return ck::orbit_from_kappa2_J2(sp, a.k, *a.E, *a.k2J2, a.phi0);
    if (a.e && a.p && !a.E && !a.J && !a.k2J2) return ck::orbit_from_shape(sp, a.k, *a.e, *a.p, a.phi0);
    throw ck::UsageError("give exactly one of: --E --J, --E --k2J2, --e --p");
}

// Evaluates f, mapping quantities the orbit does not define to NaN.
double optional_value(const std::function<double()>& f) {
    try {
        return f();
    } catch (const ck::Unsupported&) {
        return kNaN;
    } catch (const ck::NullInversion&) {
        return kNaN;
    }
}

Record record_at(const ck::OrbitParams& o, double s) {
    Record rec{};
    rec.s = s;
    rec.t = ck::t_of_s(o, s);
    rec.r = ck::r_of_s(o, s);
    rec.phi = optional_value([&] { return ck::phi_of_s(o, s); });
    const auto uv = [&]() -> ck::ParallelPoint2 {
        try {
            return ck::uv_of_s(o, s);
        } catch (const ck::Unsupported&) {
            return {kNaN, kNaN};
        }
    }();
    rec.u = uv.u;
    rec.v = uv.v;
    std::optional<ck::MomentumPoint> P;
    try {
        P = ck::hodograph_of_s(o, s);
    } catch (const ck::Unsupported&) {
    }
    rec.P1 = P ? P->P1 : kNaN;
    rec.P2 = P ? P->P2 : kNaN;
    rec.W1 = rec.W2 = kNaN;
    if (P) {
        try {
            const ck::SlowmentumPoint W = ck::slowmentum(*P, o.space.kappa2);
            rec.W1 = W.W1;
            rec.W2 = W.W2;
        } catch (const ck::NullInversion&) {
        }
    }
    return rec;
}

std::vector<Record> solve_records(const ck::OrbitParams& o, const SolveArgs& a) {
    if (a.samples < 1) throw ck::UsageError("--samples must be positive");
    if (a.param != "s" && a.param != "t") throw ck::UsageError("--param must be s or t");
    const double period = ck::s_period(o);
    double span = a.span.value_or(std::isfinite(period) ? period : 1.0);
    if (!(span > 0) || !std::isfinite(span)) throw ck::UsageError("--span must be positive and finite");
    std::vector<Record> out;
    out.reserve(static_cast<std::size_t>(a.samples));
    const double t_span = a.param == "t" ? ck::t_of_s(o, span) : 0.0;
    for (int i = 0; i < a.samples; ++i) {
        const double frac = static_cast<double>(i) / a.samples;
        const double s = a.param == "s" ? frac * span : ck::s_of_t(o, frac * t_span);
        out.push_back(record_at(o, s));
    }
    return out;
}

nlohmann::json num(double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr); }

std::string fmt17(double x) { return std::isnan(x) ? "nan" : fmt::format("{:.17g}", x); }

nlohmann::json header_json(const ck::OrbitParams& o, const OrbitArgs& oa, const SolveArgs& sa) {
    nlohmann::json cfg{{"kappa1", o.space.kappa1},
                       {"kappa2", o.space.kappa2},
                       {"space", ck::space_name(o.space)},
                       {"k", oa.k},
                       {"phi0", oa.phi0},
                       {"samples", sa.samples},
                       {"param", sa.param},
                       {"format", sa.format}};
    if (sa.span) cfg["span"] = *sa.span;
    if (oa.E) cfg["E"] = *oa.E;
    if (oa.J) cfg["J"] = *oa.J;
    if (oa.k2J2) cfg["k2J2"] = *oa.k2J2;
    if (oa.e) cfg["e"] = *oa.e;
    if (oa.p) cfg["p"] = *oa.p;
    return {{"config", cfg},
            {"derived",
             {{"sigma", num(o.sigma)},
              {"e", num(o.e)},
              {"p", num(o.p)},
              {"epsilon", num(o.epsilon)},
              {"E", num(o.E)},
              {"J", num(o.has_J() ? o.direction * o.J : kNaN)},
              {"s_period", num(ck::s_period(o))}}}};
}

void write_json(std::ostream& os, const nlohmann::json& header, const std::vector<Record>& recs) {
    os << header.dump() << '\n';
    for (const Record& r : recs) {
        const nlohmann::json j{{"s", num(r.s)},   {"t", num(r.t)},   {"r", num(r.r)},   {"phi", num(r.phi)},
                               {"u", num(r.u)},   {"v", num(r.v)},   {"P1", num(r.P1)}, {"P2", num(r.P2)},
                               {"W1", num(r.W1)}, {"W2", num(r.W2)}};
        os << j.dump() << '\n';
    }
}

void write_csv(std::ostream& os, const nlohmann::json& header, const std::vector<Record>& recs) {
    os << "# config " << header["config"].dump() << '\n';
    os << "# derived " << header["derived"].dump() << '\n';
    os << "s,t,r,phi,u,v,P1,P2,W1,W2\n";
    for (const Record& r : recs) {
        os << fmt17(r.s) << ',' << fmt17(r.t) << ',' << fmt17(r.r) << ',' << fmt17(r.phi) << ',' << fmt17(r.u) << ','
           << fmt17(r.v) << ',' << fmt17(r.P1) << ',' << fmt17(r.P2) << ',' << fmt17(r.W1) << ',' << fmt17(r.W2)
           << '\n';
    }
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        std::cout.flush();
        if (!std::cout) throw IOError("cannot write to stdout");
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IOError("cannot open '" + path + "' for writing");
    f << text;
    f.close();
    if (!f) throw IOError("write to '" + path + "' failed");
}

void cmd_solve(const SpaceArgs& spa, const OrbitArgs& oa, const SolveArgs& sa) {
    if (sa.format != "json" && sa.format != "csv") throw ck::UsageError("--format must be json or csv");
    const ck::OrbitParams o = resolve_orbit(resolve_space(spa), oa);
    const std::vector<Record> recs = solve_records(o, sa);
    const nlohmann::json header = header_json(o, oa, sa);
    std::ostringstream os;
    if (sa.format == "json")
        write_json(os, header, recs);
    else
        write_csv(os, header, recs);
    emit(sa.out, os.str());
}

void cmd_period(const SpaceArgs& spa, const OrbitArgs& oa, const PeriodArgs& pa, const std::string& out) {
    if (pa.format != "text" && pa.format != "json") throw ck::UsageError("--format must be text or json");
    if (pa.a.has_value() == oa.E.has_value()) throw ck::UsageError("give exactly one of --a, --E");
    const ck::CKSpace sp = resolve_space(spa);
    const ck::PeriodReport rep = pa.a ? ck::period_of_semimajor(sp, oa.k, *pa.a) : ck::period_of_energy(sp, oa.k, *oa.E);
    std::string text;
    if (pa.format == "json") {
        text = nlohmann::json{{"a", rep.a},
                              {"E", rep.E},
                              {"T", rep.T},
                              {"T_energy", rep.T_energy},
                              {"omega", rep.omega},
                              {"residual", rep.residual_123}}
                   .dump() +
               "\n";
    } else {
        text = fmt::format("a={}\nE={}\nT={}\nT_energy={}\nomega={}\nresidual={}\n", fmt17(rep.a), fmt17(rep.E),
                           fmt17(rep.T), fmt17(rep.T_energy), fmt17(rep.omega), fmt17(rep.residual_123));
    }
    emit(out, text);
}

void add_space_options(CLI::App* sub, SpaceArgs& a) {
    sub->add_option("--space", a.name, "named space: E2 S2 H2 M11 dS11 AdS11 G11 NH11 ANH11");
    sub->add_option("--k1", a.k1, "curvature kappa1");
    sub->add_option("--k2", a.k2, "signature kappa2");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kepler problem on the nine Cayley-Klein planes"};
    app.require_subcommand(1);

    SpaceArgs spa;
    OrbitArgs oa;
    SolveArgs sa;
    PeriodArgs pa;
    std::string period_out;
    std::string suite = "all";
    double tol = 1e-12;

    CLI::App* solve = app.add_subcommand("solve", "sample an orbit");
    add_space_options(solve, spa);
    solve->add_option("--k", oa.k, "coupling constant")->capture_default_str();
    solve->add_option("--E", oa.E, "energy");
    solve->add_option("--J", oa.J, "angular momentum");
    solve->add_option("--k2J2", oa.k2J2, "kappa2*J^2 (allows kappa2 = 0)");
    solve->add_option("--e", oa.e, "eccentricity");
    solve->add_option("--p", oa.p, "semilatus rectum");
    solve->add_option("--phi0", oa.phi0, "periastron angle")->capture_default_str();
    solve->add_option("--samples", sa.samples, "number of records")->capture_default_str();
    solve->add_option("--param", sa.param, "uniform sampling in s or t")->capture_default_str();
    solve->add_option("--span", sa.span, "s-range (default: one period, or 1 for open orbits)");
    solve->add_option("--out", sa.out, "output file (default stdout)");
    solve->add_option("--format", sa.format, "json or csv")->capture_default_str();
    solve->add_option("--tol", tol, "accepted for symmetry with verify; closed forms ignore it");

    CLI::App* period = app.add_subcommand("period", "period and 1-2-3 law of a closed orbit");
    add_space_options(period, spa);
    period->add_option("--k", oa.k, "coupling constant")->capture_default_str();
    period->add_option("--a", pa.a, "semimajor axis");
    period->add_option("--E", oa.E, "energy");
    period->add_option("--format", pa.format, "text or json")->capture_default_str();
    period->add_option("--out", period_out, "output file (default stdout)");

    CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("--suite", suite, "trig ckspace kepler geoflow oracle all")->capture_default_str();
    verify->add_option("--tol", tol, "oracle integrator tolerance")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (solve->parsed()) {
            cmd_solve(spa, oa, sa);
            return 0;
        }
        if (period->parsed()) {
            cmd_period(spa, oa, pa, period_out);
            return 0;
        }
        if (!(tol > 0)) throw ck::UsageError("--tol must be positive");
        return ck::tools::run_verify(suite, tol, std::cout) ? 0 : 1;
    } catch (const ck::InfeasibleOrbit& e) {
        std::cerr << "ckepler: " << e.what() << '\n';
        return kExitDomain;
    } catch (const ck::DomainError& e) {
        std::cerr << "ckepler: domain error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const IOError& e) {
        std::cerr << "ckepler: " << e.what() << '\n';
        return kExitIO;
    } catch (const std::invalid_argument& e) {
        std::cerr << "ckepler: " << e.what() << '\n';
        return kExitUsage;
    }
}
