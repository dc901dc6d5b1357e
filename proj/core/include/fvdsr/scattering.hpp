#pragma once

// Stationary scattering off an electrostatic step and a rectangular
// barrier. Deformation enters through the scalar effective energies of
// each region; matching conditions (psi, psi' continuous) are unchanged.

#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "fvdsr/deformation.hpp"

namespace fvdsr {

struct BarrierConfig {
    double mass = 1.0;
    double height = 2.0;  // V0
    double width = 4.0;   // a
};

struct StepConfig {
    double mass = 1.0;
    double height = 2.0;  // V0
};

void validate(const BarrierConfig& cfg);
void validate(const StepConfig& cfg);

enum class ScatteringRegime {
    Tunneling,                // evanescent inner region (total reflection for the step)
    AboveBarrier,             // propagating inner region, positive local energy
    Supercritical,            // step Klein zone: (E - V0)_eff < -m, T < 0 and R > 1
    KleinSingular,            // Klein zone with |q| == k: amplitudes diverge
    NonPropagatingIncidence,  // E_eff <= m on the incident side
    MapInvalid,               // rational-map pole in some region
};

std::string_view regime_name(ScatteringRegime r) noexcept;

struct ScatteringPoint {
    double energy = 0.0;
    double k_out = 0.0;
    LocalWavenumber inner{};
    double r_coef = 0.0;
    double t_coef = 0.0;
    ScatteringRegime flag = ScatteringRegime::Tunneling;
};

/// True for flags where R and T are finite and R + T = 1.
bool has_coefficients(ScatteringRegime r) noexcept;

/// Flags every domain problem instead of throwing; R = T = NaN on
/// NonPropagatingIncidence, MapInvalid and KleinSingular.
ScatteringPoint evaluate_barrier(const BarrierConfig& cfg, const DeformationModel& model, double e);
ScatteringPoint evaluate_step(const StepConfig& cfg, const DeformationModel& model, double e);

/// Transfer-matrix transmission
///   T = 1 / (1 + (k^2 + kappa^2)^2 / (4 k^2 kappa^2) sinh^2(kappa a))     (evanescent)
///   T = 1 / (1 + (k^2 - q^2)^2   / (4 k^2 q^2)     sin^2(q a))           (propagating)
/// with R = 1 - T. Throws NonPropagatingIncidence / MapInvalid.
ScatteringPoint barrier_transmission(const BarrierConfig& cfg, const DeformationModel& model, double e);

/// Single-interface matching. Subcritical: R = ((k-q)/(k+q))^2,
/// T = 4kq/(k+q)^2. Evanescent right side: R = 1, T = 0. Klein zone: the
/// transmitted wave number is -|q| (outgoing group velocity), T <= 0.
/// Throws NonPropagatingIncidence / MapInvalid.
ScatteringPoint step_coefficients(const StepConfig& cfg, const DeformationModel& model, double e);

/// E* with effective_energy(model, E* - V0) = -m on the SR-connected branch.
double supercritical_threshold(const StepConfig& cfg, const DeformationModel& model);

/// First `count` energies with q(E) a = j pi (T = 1), j = 1..count.
std::vector<double> resonance_energies(const BarrierConfig& cfg, const DeformationModel& model, int count);

using ScatteringGeometry = std::variant<BarrierConfig, StepConfig>;

/// Grid-ordered scan; invalid points are flagged, never dropped.
std::vector<ScatteringPoint> rt_scan(const ScatteringGeometry& geometry, const DeformationModel& model,
                                     std::span<const double> e_grid, unsigned threads = 1);

}  // namespace fvdsr
