#include "fvdsr/spectra.hpp"

#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <numbers>
#include <string>

#include "fvdsr/error.hpp"

namespace fvdsr {

namespace {

bool in_window(const DeformationModel& model, double e) {
    return model.undeformed() || model.l_p * std::abs(e) < kPerturbativeWindow;
}

// Fills spacing, validity and the truncation marker from a list of E_+
// that holds one level more than the table needs.
SpectrumResult assemble(const DeformationModel& model, int n_first, const std::vector<double>& e_plus) {
    SpectrumResult out;
    out.model = model;
    out.rows.reserve(e_plus.size() - 1);
    for (std::size_t i = 0; i + 1 < e_plus.size(); ++i) {
        SpectrumRow row;
        row.n = n_first + static_cast<int>(i);
        row.e_plus = e_plus[i];
        row.e_minus = -e_plus[i];
        row.spacing_plus = e_plus[i + 1] - e_plus[i];
        row.valid = in_window(model, e_plus[i]);
        if (!row.valid && !out.validity_truncated_at) out.validity_truncated_at = row.n;
        out.rows.push_back(row);
    }
    return out;
}

}  // namespace

void validate(const WellConfig& cfg) {
    require_positive_mass(cfg.mass);
    if (!(cfg.width > 0.0)) fail(ErrorCode::InvalidArgument, "well width must be > 0");
    if (cfg.n_max < 1) fail(ErrorCode::InvalidArgument, "n_max must be >= 1");
}

void validate(const OscillatorConfig& cfg) {
    require_positive_mass(cfg.mass);
    if (!(cfg.omega > 0.0)) fail(ErrorCode::NonpositiveFrequency, "omega must be > 0");
    if (cfg.n_max < 0) fail(ErrorCode::InvalidArgument, "n_max must be >= 0");
}

double well_omega(const WellConfig& cfg, int n) {
    return std::hypot(cfg.mass, n * std::numbers::pi / cfg.width);
}

SpectrumResult well_spectrum(const WellConfig& cfg, const DeformationModel& model) {
    validate(cfg);
    validate(model);
    std::vector<double> e_plus;
    e_plus.reserve(static_cast<std::size_t>(cfg.n_max) + 1);
    for (int n = 1; n <= cfg.n_max + 1; ++n)
        e_plus.push_back(invert_effective_energy(model, well_omega(cfg, n)));
    return assemble(model, 1, e_plus);
}

double fit_growth_exponent(const SpectrumResult& spectrum, int n_lo, int n_hi) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int count = 0;
    for (const auto& row : spectrum.rows) {
        if (row.n < n_lo || row.n > n_hi || row.n < 1) continue;
        if (!(row.e_plus > 0.0)) fail(ErrorCode::InvalidArgument, "growth fit needs positive E_+");
        const double x = std::log(static_cast<double>(row.n));
        const double y = std::log(row.e_plus);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++count;
    }
    if (count < 2) fail(ErrorCode::InsufficientRange, "growth fit needs at least two levels");
    return (count * sxy - sx * sy) / (count * sxx - sx * sx);
}

WellAsymptotics well_asymptotics(const WellConfig& cfg, const DeformationModel& model) {
    validate(cfg);
    if (cfg.n_max * std::numbers::pi / cfg.width < 50.0 * cfg.mass)
        fail(ErrorCode::InsufficientRange,
             "need k_nmax >= 50 m; n_max=" + std::to_string(cfg.n_max) + " is too small");
    const SpectrumResult spectrum = well_spectrum(cfg, model);
    WellAsymptotics out;
    if (model.kind == ModelKind::DSR_Rational && model.l_p > 0.0) out.plateau = 1.0 / model.l_p;
    out.growth_exponent = fit_growth_exponent(spectrum, std::max(1, cfg.n_max / 10), cfg.n_max);
    return out;
}

double oscillator_e0(const OscillatorConfig& cfg, int n, Branch branch) {
    const double e = std::sqrt(cfg.mass * cfg.mass + oscillator_xi(n, cfg.mass, cfg.omega));
    return branch == Branch::Positive ? e : -e;
}

SpectrumResult oscillator_spectrum_undeformed(const OscillatorConfig& cfg) {
    validate(cfg);
    std::vector<double> e_plus;
    for (int n = 0; n <= cfg.n_max + 1; ++n) e_plus.push_back(oscillator_e0(cfg, n, Branch::Positive));
    return assemble(DeformationModel::sr(), 0, e_plus);
}

OscillatorShift oscillator_shift_first_order(const OscillatorConfig& cfg, const DeformationModel& model,
                                             int n, Branch branch) {
    if (model.kind != ModelKind::GenericLeadingOrder)
        fail(ErrorCode::WrongModelKind, "first-order oscillator shift needs a generic leading-order model");
    validate(cfg);
    const double e0 = oscillator_e0(cfg, n, branch);
    const double lambda = oscillator_xi(n, cfg.mass, cfg.omega);
    const double shift =
        model.l_p * (model.alpha2 * e0 * e0 - model.delta_alpha * lambda) * e0 / cfg.mass;
    return {shift, in_window(model, e0)};
}

OscillatorShift oscillator_shift_fv_perturbative(const OscillatorConfig& cfg, const DeformationModel& model,
                                                 int n, Branch branch) {
    validate(cfg);
    const double e0 = oscillator_e0(cfg, n, branch);
    const double xi = oscillator_xi(n, cfg.mass, cfg.omega);
    const FvSpinor s = mode_spinor(e0, cfg.mass);
    const FvMatrix dh = delta_h(model, e0, xi, cfg.mass);
    const complex num = fv_inner(s, dh * s);
    const complex den = fv_inner(s, s);
    return {model.l_p * (num / den).real(), in_window(model, e0)};
}

EffectiveScales oscillator_effective_scales(const DeformationModel& model, double e, double m, double omega) {
    if (model.kind == ModelKind::SR || model.l_p == 0.0) return {omega, m};
    if (model.kind != ModelKind::GenericLeadingOrder)
        fail(ErrorCode::WrongModelKind, "effective oscillator scales need a generic leading-order model");
    const double x = model.l_p * e;
    if (model.is_ac_type()) return {omega * (1.0 - x), m};
    if (model.is_ms_type()) return {omega, m * (1.0 + x)};
    return {omega * (1.0 - model.delta_alpha * x), m * (1.0 + model.alpha2 * x)};
}

double oscillator_exact_deformed(const OscillatorConfig& cfg, const DeformationModel& model, int n,
                                 Branch branch) {
    validate(cfg);
    validate(model);
    const double e0 = oscillator_e0(cfg, n, Branch::Positive);
    double e_plus = 0.0;
    if (model.kind != ModelKind::GenericLeadingOrder || model.l_p == 0.0) {
        e_plus = invert_effective_energy(model, e0);
    } else {
        const double lambda = oscillator_xi(n, cfg.mass, cfg.omega);
        const double p = std::sqrt(lambda);
        auto f = [&](double e) { return mdr_residual(model, e, p, cfg.mass); };
        // Walk away from E0 in the Newton direction until the residual flips.
        const double f0 = f(e0);
        if (f0 == 0.0) {
            e_plus = e0;
        } else {
            const double h = 1e-6 * e0;
            const double slope = (f(e0 + h) - f(e0 - h)) / (2.0 * h);
            const double dir = (-f0 / slope) > 0.0 ? 1.0 : -1.0;
            double step = 1e-3 * e0;
            double lo = e0, hi = e0 + dir * step;
            int tries = 0;
            while (std::signbit(f(hi)) == std::signbit(f0)) {
                lo = hi;
                step *= 2.0;
                hi = e0 + dir * step;
                if (++tries > 60 || hi <= 0.0)
                    fail(ErrorCode::NoRealBranch, "deformed oscillator shell has no SR-connected root");
            }
            if (lo > hi) std::swap(lo, hi);
            boost::uintmax_t iters = 200;
            auto r = boost::math::tools::toms748_solve(f, lo, hi, boost::math::tools::eps_tolerance<double>(52),
                                                       iters);
            e_plus = 0.5 * (r.first + r.second);
        }
    }
    return branch == Branch::Positive ? e_plus : -e_plus;
}

double oscillator_exact_fv(const OscillatorConfig& cfg, const DeformationModel& model, int n, Branch branch) {
    validate(cfg);
    const double xi = oscillator_xi(n, cfg.mass, cfg.omega);
    double e = oscillator_e0(cfg, n, branch);
    for (int it = 0; it < 500; ++it) {
        const auto [hi, lo] = h_fv_deformed(model, e, xi, cfg.mass).eigenvalues();
        const double next = branch == Branch::Positive ? hi.real() : lo.real();
        if (std::abs(next - e) <= 1e-15 * std::abs(e)) return next;
        e = next;
    }
    fail(ErrorCode::NoRealBranch, "self-consistent FV eigenvalue did not converge");
}

SpectrumResult oscillator_spectrum(const OscillatorConfig& cfg, const DeformationModel& model) {
    validate(cfg);
    validate(model);
    if (model.kind == ModelKind::SR) return oscillator_spectrum_undeformed(cfg);
    std::vector<double> e_plus;
    for (int n = 0; n <= cfg.n_max + 1; ++n) {
        if (model.kind == ModelKind::GenericLeadingOrder)
            e_plus.push_back(oscillator_e0(cfg, n, Branch::Positive) +
                             oscillator_shift_first_order(cfg, model, n, Branch::Positive).value);
        else
            e_plus.push_back(oscillator_exact_deformed(cfg, model, n, Branch::Positive));
    }
    return assemble(model, 0, e_plus);
}

}  // namespace fvdsr
