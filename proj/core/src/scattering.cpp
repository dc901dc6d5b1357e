#include "fvdsr/scattering.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include <boost/math/tools/roots.hpp>

#include "fvdsr/error.hpp"
#include "fvdsr/parallel.hpp"

namespace fvdsr {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
// Below this x*a the ratio sinh(x a)/x (or sin) is replaced by a.
constexpr double kSmallPhase = 1e-8;

std::string num(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

void flag_nan(ScatteringPoint& p, ScatteringRegime flag) {
    p.flag = flag;
    p.r_coef = kNaN;
    p.t_coef = kNaN;
}

// Incident side: fills k_out and returns false (with the flag set) when
// the point cannot carry a scattering interpretation.
bool incident(ScatteringPoint& p, const DeformationModel& model, double e, double v0, double m) {
    p.energy = e;
    const LocalWavenumber in = local_wavenumber(model, e, 0.0, m);
    p.inner = local_wavenumber(model, e, v0, m);
    p.k_out = in.value;
    if (!in.valid || !p.inner.valid) {
        flag_nan(p, ScatteringRegime::MapInvalid);
        return false;
    }
    if (!(in.local_energy > m) || !(in.value > 0.0)) {
        flag_nan(p, ScatteringRegime::NonPropagatingIncidence);
        return false;
    }
    return true;
}

void throw_on_flag(const ScatteringPoint& p) {
    if (p.flag == ScatteringRegime::MapInvalid)
        fail(ErrorCode::MapInvalid, "energy map invalid at E = " + num(p.energy));
    if (p.flag == ScatteringRegime::NonPropagatingIncidence)
        fail(ErrorCode::NonPropagatingIncidence,
             "incident effective energy must exceed m at E = " + num(p.energy));
}

template <class F>
double toms748(F&& f, double lo, double hi, double flo, double fhi) {
    boost::math::tools::eps_tolerance<double> tol(52);
    std::uintmax_t iters = 200;
    auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, tol, iters);
    return 0.5 * (a + b);
}

}  // namespace

void validate(const BarrierConfig& cfg) {
    require_positive_mass(cfg.mass);
    if (!std::isfinite(cfg.height))
        fail(ErrorCode::InvalidArgument, "barrier height must be finite");
    if (!(cfg.width > 0.0) || !std::isfinite(cfg.width))
        fail(ErrorCode::InvalidArgument, "barrier width must be > 0, got " + num(cfg.width));
}

void validate(const StepConfig& cfg) {
    require_positive_mass(cfg.mass);
    if (!(cfg.height > 0.0) || !std::isfinite(cfg.height))
        fail(ErrorCode::InvalidArgument, "step height must be > 0, got " + num(cfg.height));
}

std::string_view regime_name(ScatteringRegime r) noexcept {
    switch (r) {
        case ScatteringRegime::Tunneling: return "tunneling";
        case ScatteringRegime::AboveBarrier: return "above_barrier";
        case ScatteringRegime::Supercritical: return "supercritical";
        case ScatteringRegime::KleinSingular: return "klein_singular";
        case ScatteringRegime::NonPropagatingIncidence: return "nonpropagating_incidence";
        case ScatteringRegime::MapInvalid: return "map_invalid";
    }
    return "unknown";
}

bool has_coefficients(ScatteringRegime r) noexcept {
    return r == ScatteringRegime::Tunneling || r == ScatteringRegime::AboveBarrier ||
           r == ScatteringRegime::Supercritical;
}

ScatteringPoint evaluate_barrier(const BarrierConfig& cfg, const DeformationModel& model, double e) {
    ScatteringPoint p;
    const double m = cfg.mass;
    if (!incident(p, model, e, cfg.height, m)) return p;

    const double k = p.k_out;
    const double x = p.inner.value;
    const double a = cfg.width;
    double factor = 0.0;
    if (p.inner.regime == WaveRegime::Evanescent) {
        p.flag = ScatteringRegime::Tunneling;
        const double s = x * a < kSmallPhase ? a : std::sinh(x * a) / x;
        const double num2 = k * k + x * x;
        factor = num2 * num2 / (4.0 * k * k) * s * s;
    } else {
        p.flag = ScatteringRegime::AboveBarrier;
        const double s = x * a < kSmallPhase ? a : std::sin(x * a) / x;
        const double num2 = k * k - x * x;
        factor = num2 * num2 / (4.0 * k * k) * s * s;
    }
    p.t_coef = 1.0 / (1.0 + factor);
    p.r_coef = 1.0 - p.t_coef;
    return p;
}

ScatteringPoint evaluate_step(const StepConfig& cfg, const DeformationModel& model, double e) {
    ScatteringPoint p;
    const double m = cfg.mass;
    if (!incident(p, model, e, cfg.height, m)) return p;

    const double k = p.k_out;
    if (p.inner.regime == WaveRegime::Evanescent) {
        p.flag = ScatteringRegime::Tunneling;
        p.r_coef = 1.0;
        p.t_coef = 0.0;
        return p;
    }
    double q = p.inner.value;
    if (p.inner.local_energy < 0.0) {
        p.flag = ScatteringRegime::Supercritical;
        q = -q;
    } else {
        p.flag = ScatteringRegime::AboveBarrier;
    }
    const double sum = k + q;
    if (std::abs(sum) <= 1e-12 * k) {
        flag_nan(p, ScatteringRegime::KleinSingular);
        return p;
    }
    p.t_coef = 4.0 * k * q / (sum * sum);
    p.r_coef = 1.0 - p.t_coef;
    return p;
}

ScatteringPoint barrier_transmission(const BarrierConfig& cfg, const DeformationModel& model, double e) {
    validate(cfg);
    validate(model);
    ScatteringPoint p = evaluate_barrier(cfg, model, e);
    throw_on_flag(p);
    return p;
}

ScatteringPoint step_coefficients(const StepConfig& cfg, const DeformationModel& model, double e) {
    validate(cfg);
    validate(model);
    ScatteringPoint p = evaluate_step(cfg, model, e);
    throw_on_flag(p);
    return p;
}

double supercritical_threshold(const StepConfig& cfg, const DeformationModel& model) {
    validate(cfg);
    validate(model);
    const double m = cfg.mass;
    const double v0 = cfg.height;
    if (model.undeformed()) return v0 - m;

    // f(u) = w(u) + m on u = E - V0 <= 0; f(0) = m > 0.
    auto f = [&](double u) { return effective_energy(model, u).deformed + m; };

    double turn = -std::numeric_limits<double>::infinity();
    double c = 0.0;
    if (model.kind == ModelKind::GDSR_Polynomial) c = model.chi;
    if (model.kind == ModelKind::GenericLeadingOrder) c = model.alpha2;
    if (model.kind != ModelKind::DSR_Rational && c > 0.0) turn = -1.0 / (2.0 * c * model.l_p);
    if (model.kind == ModelKind::DSR_Rational && m >= 1.0 / model.l_p)
        fail(ErrorCode::NoRealBranch, "rational map never reaches -m for m >= 1/l_p");

    double hi = 0.0, fhi = m;
    double lo = -m, flo = 0.0;
    bool found = false;
    for (int i = 0; i < 1100; ++i) {
        if (lo <= turn) {
            lo = turn;
            flo = f(lo);
            if (flo > 0.0)
                fail(ErrorCode::NoRealBranch,
                     "SR-connected branch turns at " + num(turn) + " before reaching -m");
            found = true;
            break;
        }
        flo = f(lo);
        if (!std::isfinite(flo)) break;
        if (flo <= 0.0) {
            found = true;
            break;
        }
        hi = lo;
        fhi = flo;
        lo *= 2.0;
    }
    if (!found) fail(ErrorCode::NoBracket, "no bracket for the supercritical threshold");
    if (flo == 0.0) return v0 + lo;
    return v0 + toms748(f, lo, hi, flo, fhi);
}

std::vector<double> resonance_energies(const BarrierConfig& cfg, const DeformationModel& model, int count) {
    validate(cfg);
    validate(model);
    if (count <= 0) fail(ErrorCode::InvalidArgument, "count must be positive, got " + std::to_string(count));
    const double m = cfg.mass;
    const double v0 = cfg.height;
    const double a = cfg.width;

    // Phase q a on the positive above-barrier branch; NaN where invalid or
    // where the inner local energy is not above m.
    auto phase = [&](double e) {
        const LocalWavenumber inner = local_wavenumber(model, e, v0, m);
        const EffectiveEnergy out = effective_energy(model, e);
        if (!inner.valid || !out.valid) return kNaN;
        if (inner.local_energy < m) return -1.0;
        return inner.value * a;
    };
    // Polynomial maps with c < 0 turn over; beyond the turn the SR-connected
    // branch is lost even though the map stays finite.
    double e_cap = std::numeric_limits<double>::infinity();
    if (!model.undeformed()) {
        double c = 0.0;
        if (model.kind == ModelKind::GDSR_Polynomial) c = model.chi;
        if (model.kind == ModelKind::GenericLeadingOrder) c = model.alpha2;
        if (model.kind != ModelKind::DSR_Rational && c < 0.0) e_cap = v0 - 1.0 / (2.0 * c * model.l_p);
    }

    double e_lo = 0.0;
    try {
        e_lo = v0 + invert_effective_energy(model, m);
    } catch (const Error&) {
        fail(ErrorCode::NoBracket, "above-barrier domain is empty");
    }
    if (!(e_lo < e_cap) || std::isnan(phase(e_lo)))
        fail(ErrorCode::NoBracket, "above-barrier domain is empty within map validity");

    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(count));
    const double scale = std::max(1.0, std::abs(e_lo));
    double lo = e_lo;
    for (int j = 1; j <= count; ++j) {
        const double target = j * std::acos(-1.0);
        auto g = [&](double e) { return phase(e) - target; };
        double glo = g(lo);
        double step = 0.25 * scale;
        double hi = lo + step;
        double ghi = g(hi);
        bool truncated = false;
        for (int it = 0; it < 2000 && !(ghi > 0.0); ++it) {
            if (std::isnan(ghi) || hi >= e_cap) {
                // Walk back to the edge of the valid domain.
                double good = lo, bad = std::min(hi, e_cap);
                for (int b = 0; b < 200; ++b) {
                    const double mid = 0.5 * (good + bad);
                    if (mid == good || mid == bad) break;
                    if (std::isnan(phase(mid)) || mid >= e_cap) bad = mid;
                    else good = mid;
                }
                hi = good;
                ghi = g(hi);
                if (!(ghi > 0.0)) truncated = true;
                break;
            }
            lo = hi;
            glo = ghi;
            step *= 2.0;
            hi = lo + step;
            ghi = g(hi);
        }
        if (truncated || !(ghi > 0.0))
            fail(ErrorCode::NoBracket, "map validity truncates resonances at j = " + std::to_string(j));
        const double root = glo == 0.0 ? lo : toms748(g, lo, hi, glo, ghi);
        out.push_back(root);
        lo = root;
    }
    return out;
}

std::vector<ScatteringPoint> rt_scan(const ScatteringGeometry& geometry, const DeformationModel& model,
                                     std::span<const double> e_grid, unsigned threads) {
    validate(model);
    return std::visit(
        [&](const auto& cfg) {
            validate(cfg);
            return parallel_map(
                e_grid,
                [&](double e) {
                    if constexpr (std::is_same_v<std::decay_t<decltype(cfg)>, BarrierConfig>)
                        return evaluate_barrier(cfg, model, e);
                    else
                        return evaluate_step(cfg, model, e);
                },
                threads);
        },
        geometry);
}

}  // namespace fvdsr
