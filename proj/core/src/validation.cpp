#include "fvdsr/validation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <numbers>
#include <random>
#include <vector>

#include "fvdsr/error.hpp"
#include "fvdsr/fvcore.hpp"
#include "fvdsr/oracle.hpp"
#include "fvdsr/scattering.hpp"
#include "fvdsr/spectra.hpp"

namespace fvdsr {

namespace {

template <class... Args>
std::string fmt(const char* f, Args... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
    return v;
}

const BarrierConfig kBarrier{1.0, 2.0, 4.0};

std::vector<DeformationModel> scan_models() {
    return {DeformationModel::sr(), DeformationModel::dsr(0.02), DeformationModel::dsr(0.06),
            DeformationModel::gdsr(0.02, 1.0), DeformationModel::gdsr(0.06, 1.0)};
}

const std::vector<double> kOrderLp{0.04, 0.02, 0.01, 0.005};

bool flux_conservation(unsigned threads, std::string& d) {
    const auto grid = linspace(0.0, 10.0, 500);
    double worst = 0.0;
    int valid = 0;
    bool bounded = true;
    for (const auto& model : scan_models()) {
        for (const auto& p : rt_scan(kBarrier, model, grid, threads)) {
            if (!has_coefficients(p.flag)) continue;
            ++valid;
            worst = std::max(worst, std::abs(p.r_coef + p.t_coef - 1.0));
            if (p.t_coef < 0.0 || p.t_coef > 1.0) bounded = false;
        }
    }
    d = fmt("max|R+T-1| = %.3g over %d valid points, 0<=T<=1: %s", worst, valid, bounded ? "yes" : "no");
    return worst <= 1e-12 && bounded && valid > 0;
}

bool pseudo_hermiticity(std::string& d) {
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> ue(-10.0, 10.0), up2(0.0, 100.0), um(0.1, 5.0), ua(-2.0, 2.0),
        ul(0.0, 0.5);
    int failures = 0;
    const int draws = 10000;
    for (int i = 0; i < draws; ++i) {
        const double e = ue(rng), p2 = up2(rng), m = um(rng), a2 = ua(rng), da = ua(rng), lp = ul(rng);
        const auto model = DeformationModel::generic(lp, a2, da);
        if (!is_sigma3_pseudo_hermitian(h_fv_deformed(model, e, p2, m), 1e-14)) ++failures;
    }
    d = fmt("%d / %d draws violate H^dagger = sigma3 H sigma3", failures, draws);
    return failures == 0;
}

bool barrier_oracle(std::string& d) {
    auto grid = linspace(1.05, 9.95, 49);
    grid.push_back(1.5);
    double worst = 0.0;
    double worst_e = 0.0;
    int tunneling = 0;
    for (const auto& model : scan_models()) {
        for (double e : grid) {
            const ScatteringPoint p = barrier_transmission(kBarrier, model, e);
            const double t_ode = barrier_t_ode(kBarrier, model, e);
            const double rel = std::abs(p.t_coef - t_ode) / t_ode;
            if (p.flag == ScatteringRegime::Tunneling) ++tunneling;
            if (rel > worst) {
                worst = rel;
                worst_e = e;
            }
        }
    }
    const double t_sr = barrier_transmission(kBarrier, DeformationModel::sr(), 1.5).t_coef;
    d = fmt("max relative |T_closed - T_ode| = %.3g (at E=%.4g), %d tunneling points, SR T(1.5) = %.6g", worst,
            worst_e, tunneling, t_sr);
    return worst <= 1e-6 && tunneling > 0;
}

struct FdStats {
    double worst_err = 0.0;
    double min_ratio = 1e300;
    double max_ratio = 0.0;
};

void fd_compare(const std::vector<double>& coarse, const std::vector<double>& fine, const std::vector<double>& exact,
                FdStats& s) {
    for (std::size_t j = 0; j < exact.size(); ++j) {
        const double e1 = std::abs(coarse[j] - exact[j]);
        const double e2 = std::abs(fine[j] - exact[j]);
        s.worst_err = std::max(s.worst_err, e1);
        const double ratio = e1 / e2;
        s.min_ratio = std::min(s.min_ratio, ratio);
        s.max_ratio = std::max(s.max_ratio, ratio);
    }
}

bool spectra_oracle(std::string& d) {
    const int count = 6;
    FdStats well, osc;
    {
        const WellConfig cfg{1.0, 1.0, 5};
        auto lo = well_eigen_fd(cfg, {0.0, 1.0, 2000}, 5);
        auto hi = well_eigen_fd(cfg, {0.0, 1.0, 3999}, 5);
        std::vector<double> exact;
        for (int n = 1; n <= 5; ++n) exact.push_back(well_omega(cfg, n));
        fd_compare(lo, hi, exact, well);
    }
    {
        const OscillatorConfig cfg{1.0, 1.0, 5};
        auto lo = oscillator_eigen_fd(cfg, {-10.0, 10.0, 2000}, count);
        auto hi = oscillator_eigen_fd(cfg, {-10.0, 10.0, 3999}, count);
        std::vector<double> exact;
        for (int n = 0; n < count; ++n) exact.push_back(oscillator_e0(cfg, n, Branch::Positive));
        fd_compare(lo, hi, exact, osc);
    }
    d = fmt("well: max err %.3g, h-halving ratio [%.4g, %.4g]; oscillator: max err %.3g, ratio [%.4g, %.4g]",
            well.worst_err, well.min_ratio, well.max_ratio, osc.worst_err, osc.min_ratio, osc.max_ratio);
    auto ok = [](const FdStats& s) { return s.worst_err <= 1e-4 && s.min_ratio >= 3.5 && s.max_ratio <= 4.5; };
    return ok(well) && ok(osc);
}

bool dsr_saturation(std::string& d) {
    const auto s = well_spectrum({1.0, 1.0, 500}, DeformationModel::dsr(0.2));
    bool bounded = true, increasing = true, spacing_down = true;
    for (std::size_t i = 0; i < s.rows.size(); ++i) {
        if (!(s.rows[i].e_plus < 5.0)) bounded = false;
        if (!(s.rows[i].spacing_plus > 0.0)) increasing = false;
        if (i > 0 && !(s.rows[i].spacing_plus < s.rows[i - 1].spacing_plus)) spacing_down = false;
    }
    const double last = s.rows.back().spacing_plus;
    d = fmt("max E+ = %.10g (bound 5), increasing: %s, spacing decreasing: %s, spacing(500) = %.3g",
            s.rows.back().e_plus, increasing ? "yes" : "no", spacing_down ? "yes" : "no", last);
    return bounded && increasing && spacing_down && last < 1e-3;
}

bool gdsr_exponent(std::string& d) {
    const auto s = well_spectrum({1.0, 1.0, 1000}, DeformationModel::gdsr(0.02, 1.0));
    const double slope = fit_growth_exponent(s, 100, 1000);
    d = fmt("log-log slope of E+ on n in [100, 1000] = %.6f (target [0.45, 0.55])", slope);
    return slope >= 0.45 && slope <= 0.55;
}

bool order_oscillator(std::string& d) {
    const OscillatorConfig cfg{1.0, 1.0, 0};
    bool ok = true;
    std::string parts;
    struct Named {
        const char* name;
        double alpha2, delta_alpha;
    };
    for (const Named& c : {Named{"ac", 0.0, 1.0}, Named{"ms", 1.0, 1.0}}) {
        auto exact = [&](double lp) {
            return oscillator_exact_deformed(cfg, DeformationModel::generic(lp, c.alpha2, c.delta_alpha), 0,
                                             Branch::Positive);
        };
        auto first = [&](double lp) {
            const auto model = DeformationModel::generic(lp, c.alpha2, c.delta_alpha);
            return oscillator_e0(cfg, 0, Branch::Positive) +
                   oscillator_shift_first_order(cfg, model, 0, Branch::Positive).value;
        };
        const OrderFit fit = perturbation_order_check(exact, first, kOrderLp);
        const bool pass = !fit.degenerate && fit.exponent >= 1.8 && fit.exponent <= 2.2;
        ok = ok && pass;
        parts += fmt("%s s = %.4f%s; ", c.name, fit.exponent, fit.degenerate ? " (degenerate)" : "");
    }
    d = "oscillator closed-form shift vs deformed-shell root: " + parts;
    return ok;
}

bool order_well(std::string& d) {
    const WellConfig cfg{1.0, 1.0, 1};
    const double omega = well_omega(cfg, 1);
    auto dsr_exact = [&](double lp) { return well_spectrum(cfg, DeformationModel::dsr(lp)).rows[0].e_plus; };
    auto gdsr_exact = [&](double lp) { return well_spectrum(cfg, DeformationModel::gdsr(lp, 1.0)).rows[0].e_plus; };
    auto expansion = [&](double lp) { return omega * (1.0 - lp * omega); };
    const OrderFit a = perturbation_order_check(dsr_exact, expansion, kOrderLp);
    const OrderFit b = perturbation_order_check(gdsr_exact, expansion, kOrderLp);
    d = fmt("well n=1 vs Omega(1 - l_p Omega): dsr s = %.4f, gdsr s = %.4f", a.exponent, b.exponent);
    auto ok = [](const OrderFit& f) { return !f.degenerate && f.exponent >= 1.8 && f.exponent <= 2.2; };
    return ok(a) && ok(b);
}

bool branch_pairing(std::string& d) {
    int spectra = 0;
    bool exact = true;
    auto scan = [&](const SpectrumResult& s) {
        ++spectra;
        for (const auto& r : s.rows)
            if (r.e_minus != -r.e_plus) exact = false;
    };
    for (double lp : {0.0, 0.02, 0.2}) {
        for (const auto& model :
             {DeformationModel::sr(), DeformationModel::dsr(lp), DeformationModel::gdsr(lp, 1.0)})
            scan(well_spectrum({1.0, 1.0, 50}, model));
    }
    const OscillatorConfig osc{1.0, 1.0, 10};
    for (double lp : {0.0, 0.01, 0.02}) {
        for (const auto& model : {DeformationModel::ac(lp), DeformationModel::ms(lp), DeformationModel::dsr(lp),
                                  DeformationModel::gdsr(lp, 1.0)})
            scan(oscillator_spectrum(osc, model));
    }
    double worst = 0.0;
    for (double lp : {0.01, 0.02}) {
        for (const auto& model : {DeformationModel::ac(lp), DeformationModel::ms(lp)}) {
            for (int n = 0; n <= osc.n_max; ++n) {
                const double up = oscillator_shift_first_order(osc, model, n, Branch::Positive).value;
                const double down = oscillator_shift_first_order(osc, model, n, Branch::Negative).value;
                worst = std::max(worst, std::abs(up + down));
            }
        }
    }
    d = fmt("%d spectra with exact E- = -E+: %s; max |dE- + dE+| = %.3g", spectra, exact ? "yes" : "no", worst);
    return exact && worst <= 1e-14;
}

bool figure_ordering(unsigned threads, std::string& d) {
    bool well_ok = true;
    const WellConfig well{1.0, 1.0, 50};
    for (int which = 0; which < 2; ++which) {
        std::vector<SpectrumResult> s;
        for (double lp : {0.0, 0.02, 0.2})
            s.push_back(well_spectrum(well, which == 0 ? DeformationModel::dsr(lp) : DeformationModel::gdsr(lp, 1.0)));
        for (std::size_t i = 0; i < s[0].rows.size(); ++i)
            if (!(s[0].rows[i].e_plus > s[1].rows[i].e_plus && s[1].rows[i].e_plus > s[2].rows[i].e_plus))
                well_ok = false;
    }

    const auto grid = linspace(0.0, 10.0, 1001);
    const auto sr = rt_scan(kBarrier, DeformationModel::sr(), grid, threads);
    bool coincide = true, monotone = true;
    int window = 0;
    for (int which = 0; which < 2; ++which) {
        std::vector<std::vector<ScatteringPoint>> curves;
        for (double lp : {0.0, 0.02, 0.06})
            curves.push_back(rt_scan(kBarrier, which == 0 ? DeformationModel::dsr(lp) : DeformationModel::gdsr(lp, 1.0),
                                     grid, threads));
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const auto& a = curves[0][i];
            if (std::memcmp(&a.t_coef, &sr[i].t_coef, sizeof(double)) != 0 && !(std::isnan(a.t_coef) && std::isnan(sr[i].t_coef)))
                coincide = false;
            bool deep = true;
            for (const auto& c : curves)
                deep = deep && c[i].flag == ScatteringRegime::Tunneling && c[i].inner.value * kBarrier.width >= 2.0;
            if (!deep) continue;
            ++window;
            const double t0 = curves[0][i].t_coef, t1 = curves[1][i].t_coef, t2 = curves[2][i].t_coef;
            if (!((t0 > t1 && t1 > t2) || (t0 < t1 && t1 < t2))) monotone = false;
        }
    }
    d = fmt("well E+ decreasing in l_p: %s; l_p=0 scans bitwise equal SR: %s; deep-tunneling points %d, "
            "monotone deviation: %s",
            well_ok ? "yes" : "no", coincide ? "yes" : "no", window, monotone ? "yes" : "no");
    return well_ok && coincide && monotone && window > 0;
}

bool supercritical(unsigned threads, std::string& d) {
    const StepConfig step{1.0, 2.0};
    const bool sr_exact = supercritical_threshold(step, DeformationModel::sr()) == 1.0;
    double worst_res = 0.0;
    std::string shifts;
    struct Named {
        const char* name;
        DeformationModel model;
    };
    const std::vector<Named> models{{"dsr", DeformationModel::dsr(0.02)},
                                    {"gdsr", DeformationModel::gdsr(0.02, 1.0)},
                                    {"ms", DeformationModel::ms(0.02)},
                                    {"ac", DeformationModel::ac(0.02)}};
    bool flips = true;
    for (const auto& [name, model] : models) {
        for (double v0 : {2.0, 3.0}) {
            const StepConfig cfg{1.0, v0};
            const double e_star = supercritical_threshold(cfg, model);
            worst_res = std::max(worst_res, std::abs(effective_energy(model, e_star - v0).deformed + 1.0));
            const double delta = 1e-9;
            const auto below = evaluate_step(cfg, model, e_star - delta);
            const auto above = evaluate_step(cfg, model, e_star + delta);
            // Inner local energy crosses -m at E*, whatever the incidence.
            if (!(below.inner.local_energy < -1.0 && above.inner.local_energy > -1.0)) flips = false;
            if (v0 == 3.0 &&
                !(below.flag == ScatteringRegime::Supercritical && above.flag == ScatteringRegime::Tunneling))
                flips = false;
            if (v0 == 2.0) shifts += fmt("%s E*-(V0-m) = %+.3g; ", name, e_star - 1.0);
        }
    }
    const double dsr_star = supercritical_threshold(step, DeformationModel::dsr(0.02));
    const bool dsr_value = std::abs(dsr_star - (2.0 - 1.0 / 0.98)) <= 1e-12;

    // Klein zone of the V0 = 3 step.
    const StepConfig klein{1.0, 3.0};
    double worst_flux = 0.0;
    bool signs = true;
    int count = 0;
    const auto grid = linspace(1.0, 2.0, 500);
    for (const auto& model : {DeformationModel::sr(), DeformationModel::dsr(0.02), DeformationModel::gdsr(0.02, 1.0)}) {
        for (const auto& p : rt_scan(klein, model, grid, threads)) {
            if (p.flag != ScatteringRegime::Supercritical) continue;
            ++count;
            if (!(p.r_coef >= 1.0 && p.t_coef <= 0.0)) signs = false;
            worst_flux = std::max(worst_flux, std::abs(p.r_coef + p.t_coef - 1.0) / std::max(1.0, std::abs(p.r_coef)));
        }
    }
    d = fmt("SR E* == V0-m: %s; dsr E* = %.14g; max residual %.3g; flag flips at E*: %s; %d supercritical "
            "points, R>=1 & T<=0: %s, max|R+T-1|/max(1,R) = %.3g; shifts: ",
            sr_exact ? "yes" : "no", dsr_star, worst_res, flips ? "yes" : "no", count, signs ? "yes" : "no",
            worst_flux) +
        shifts;
    return sr_exact && dsr_value && worst_res <= 1e-10 && flips && signs && count > 0 && worst_flux <= 1e-12;
}

bool step_current(std::string& d) {
    double worst = 0.0;
    int count = 0;
    for (double v0 : {1.0, 2.0, 3.0}) {
        const StepConfig cfg{1.0, v0};
        for (const auto& model : {DeformationModel::sr(), DeformationModel::dsr(0.02), DeformationModel::gdsr(0.06, 1.0)}) {
            for (double e : linspace(1.01, 6.0, 97)) {
                const auto p = evaluate_step(cfg, model, e);
                if (!has_coefficients(p.flag)) continue;
                const StepFlux f = step_rt_fv_current(cfg, model, e);
                const double scale = std::max(1.0, std::abs(p.r_coef));
                worst = std::max({worst, std::abs(f.r - p.r_coef) / scale, std::abs(f.t - p.t_coef) / scale});
                ++count;
            }
        }
    }
    d = fmt("step R, T vs matched FV-mode currents: max scaled deviation %.3g over %d points", worst, count);
    return worst <= 1e-10 && count > 0;
}

bool resonance_ode(std::string& d) {
    double worst = 0.0;
    for (const auto& model : {DeformationModel::sr(), DeformationModel::dsr(0.02), DeformationModel::gdsr(0.02, 1.0)}) {
        for (double e : resonance_energies(kBarrier, model, 5)) {
            worst = std::max(worst, std::abs(barrier_t_ode(kBarrier, model, e) - 1.0));
        }
    }
    const double free_t = barrier_t_ode({1.0, 0.0, 4.0}, DeformationModel::sr(), 2.0);
    d = fmt("ODE T at solved resonances: max|T-1| = %.3g; free propagation |T-1| = %.3g", worst, std::abs(free_t - 1.0));
    return worst <= 1e-6 && std::abs(free_t - 1.0) <= 1e-10;
}

bool massless_well(std::string& d) {
    const auto e = well_eigen_fd({0.0, 1.0, 1}, {0.0, 1.0, 2000}, 1);
    d = fmt("m=0 FD ground level - pi = %.3g", e[0] - std::numbers::pi);
    return std::abs(e[0] - std::numbers::pi) <= 1e-5;
}

}  // namespace

CheckResult run_check(const Check& check) {
    CheckResult r;
    r.name = check.name;
    r.budget_seconds = check.budget_seconds;
    const auto start = std::chrono::steady_clock::now();
    bool ok = false;
    try {
        ok = check.body(r.detail);
    } catch (const Error& e) {
        r.detail = std::string("error ") + std::string(to_string(e.code())) + ": " + e.what();
    } catch (const std::exception& e) {
        r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.passed = ok && r.seconds < r.budget_seconds;
    return r;
}

std::vector<Check> acceptance_checks(unsigned threads) {
    return {
        {"flux_conservation", 1.0, true, [threads](std::string& d) { return flux_conservation(threads, d); }},
        {"pseudo_hermiticity", 1.0, true, pseudo_hermiticity},
        {"barrier_oracle_equivalence", 10.0, true, barrier_oracle},
        {"spectra_oracle_equivalence", 10.0, true, spectra_oracle},
        {"dsr_saturation", 1.0, true, dsr_saturation},
        {"gdsr_growth_exponent", 1.0, true, gdsr_exponent},
        {"perturbative_order", 1.0, true,
         [](std::string& d) {
             std::string a, b;
             const bool osc = order_oscillator(a);
             const bool well = order_well(b);
             d = a + b;
             return osc && well;
         }},
        {"branch_pairing", 1.0, true, branch_pairing},
        {"figure_ordering", 5.0, true, [threads](std::string& d) { return figure_ordering(threads, d); }},
        {"supercritical_threshold", 1.0, true, [threads](std::string& d) { return supercritical(threads, d); }},
    };
}

std::vector<Check> oracle_suite(unsigned threads) {
    return {
        {"flux_conservation", 1.0, true, [threads](std::string& d) { return flux_conservation(threads, d); }},
        {"pseudo_hermiticity", 1.0, true, pseudo_hermiticity},
        {"barrier_closed_form_vs_ode", 10.0, true, barrier_oracle},
        {"fd_spectra_vs_closed_form", 10.0, true, spectra_oracle},
        {"fd_massless_well", 5.0, true, massless_well},
        {"dsr_saturation", 1.0, true, dsr_saturation},
        {"well_first_order_order", 1.0, true, order_well},
        {"branch_pairing", 1.0, true, branch_pairing},
        {"figure_ordering", 5.0, true, [threads](std::string& d) { return figure_ordering(threads, d); }},
        {"supercritical_threshold", 1.0, true, [threads](std::string& d) { return supercritical(threads, d); }},
        {"step_vs_fv_current", 1.0, true, step_current},
        {"resonances_vs_ode", 5.0, true, resonance_ode},
        {"gdsr_growth_exponent", 1.0, false, gdsr_exponent},
        {"oscillator_closed_form_order", 1.0, false, order_oscillator},
    };
}

}  // namespace fvdsr
