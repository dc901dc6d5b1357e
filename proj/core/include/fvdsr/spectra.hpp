#pragma once

// Branch-resolved bound-state spectra: infinite square well under the
// SR / rational / polynomial energy maps, and the 1D KG oscillator with
// its first-order deformation shifts.

#include <optional>
#include <vector>

#include "fvdsr/deformation.hpp"
#include "fvdsr/fvcore.hpp"

namespace fvdsr {

struct WellConfig {
    double mass = 1.0;
    double width = 1.0;
    int n_max = 50;
};

struct OscillatorConfig {
    double mass = 1.0;
    double omega = 1.0;
    int n_max = 10;
};

void validate(const WellConfig& cfg);
void validate(const OscillatorConfig& cfg);

/// Rows flagged invalid once l_p |E_+| reaches this value.
inline constexpr double kPerturbativeWindow = 0.1;

struct SpectrumRow {
    int n = 0;
    double e_plus = 0.0;
    double e_minus = 0.0;
    double spacing_plus = 0.0;  // E_{n+1,+} - E_{n,+}
    bool valid = true;
};

struct SpectrumResult {
    DeformationModel model;
    std::vector<SpectrumRow> rows;
    std::optional<int> validity_truncated_at;  // first n outside the window
};

/// Omega_n = sqrt(m^2 + (n pi / L)^2).
double well_omega(const WellConfig& cfg, int n);

/// n = 1..n_max. E_+ = invert_effective_energy(model, Omega_n), E_- = -E_+.
SpectrumResult well_spectrum(const WellConfig& cfg, const DeformationModel& model);

struct WellAsymptotics {
    std::optional<double> plateau;  // 1/l_p for the rational map
    double growth_exponent = 0.0;   // log-log slope over the top decade of n
};

/// Needs n_max pi / L >= 50 m, otherwise InsufficientRange.
WellAsymptotics well_asymptotics(const WellConfig& cfg, const DeformationModel& model);

/// Least-squares slope of log E_+ against log n over rows with n in [n_lo, n_hi].
double fit_growth_exponent(const SpectrumResult& spectrum, int n_lo, int n_hi);

/// E0_{n,+-} = +-sqrt(m^2 + m w (2n + 1)), n = 0..n_max.
SpectrumResult oscillator_spectrum_undeformed(const OscillatorConfig& cfg);

double oscillator_e0(const OscillatorConfig& cfg, int n, Branch branch);

struct OscillatorShift {
    double value = 0.0;
    bool within_window = true;  // l_p |E0| < kPerturbativeWindow
};

/// Closed first-order level shift
///   dE = l_p [alpha2 (E0)^2 - delta_alpha lambda_n] E0 / m,   lambda_n = m w (2n + 1).
/// Outside the perturbative window the value is still computed and flagged.
OscillatorShift oscillator_shift_first_order(const OscillatorConfig& cfg, const DeformationModel& model,
                                             int n, Branch branch);

/// First-order shift from sigma3-metric perturbation theory evaluated on
/// the 2x2 mode problem: l_p <s|sigma3 dH|s> / <s|sigma3|s> with dH at E0.
OscillatorShift oscillator_shift_fv_perturbative(const OscillatorConfig& cfg, const DeformationModel& model,
                                                 int n, Branch branch);

struct EffectiveScales {
    double omega_eff = 0.0;
    double m_eff = 0.0;
};

/// AC type: w (1 - l_p e), m. MS type: w, m (1 + l_p e). Other generic
/// parameters: w (1 - delta_alpha l_p e), m (1 + alpha2 l_p e).
EffectiveScales oscillator_effective_scales(const DeformationModel& model, double e, double m, double omega);

/// Nonperturbative reference level. SR/DSR/GDSR: inverse energy map of
/// +-sqrt(m^2 + lambda_n). Generic: SR-connected root of the deformed
/// shell E^2 - lambda_n - 2 alpha2 l_p E^3 + 2 delta_alpha l_p E lambda_n = m^2.
double oscillator_exact_deformed(const OscillatorConfig& cfg, const DeformationModel& model, int n,
                                 Branch branch);

/// Self-consistent eigenvalue of the deformed 2x2 oscillator Hamiltonian
/// h(E) = h_osc + l_p dH(E) on the requested branch (fixed-point in E).
double oscillator_exact_fv(const OscillatorConfig& cfg, const DeformationModel& model, int n, Branch branch);

/// Spectrum table for any model: SR undeformed; DSR/GDSR via the exact
/// inverse map; generic via E0 + first-order shift.
SpectrumResult oscillator_spectrum(const OscillatorConfig& cfg, const DeformationModel& model);

}  // namespace fvdsr
