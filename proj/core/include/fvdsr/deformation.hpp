#pragma once

// Kinematic layer: energy maps, the leading-order modified dispersion
// relation and region-local wave numbers. Natural units (hbar = c = 1).

#include <optional>
#include <string_view>

namespace fvdsr {

enum class ModelKind {
    SR,                   // undeformed special relativity
    DSR_Rational,         // E -> E / (1 - l_p E)
    GDSR_Polynomial,      // E -> E (1 + chi l_p E)
    GenericLeadingOrder,  // E -> E (1 + alpha2 l_p E), momentum factor (1 + delta_alpha l_p E)
};

std::string_view kind_name(ModelKind kind) noexcept;
std::optional<ModelKind> parse_kind(std::string_view name) noexcept;

/// Which momentum-space map is in force and its parameters. The individual
/// alpha1 and alpha3 never appear downstream, only their difference.
struct DeformationModel {
    ModelKind kind = ModelKind::SR;
    double l_p = 0.0;
    double alpha2 = 0.0;
    double delta_alpha = 0.0;
    double chi = 0.0;

    static DeformationModel sr() { return {}; }
    static DeformationModel dsr(double l_p);
    static DeformationModel gdsr(double l_p, double chi);
    static DeformationModel generic(double l_p, double alpha2, double delta_alpha);
    /// Amelino-Camelia type: pure kinetic deformation.
    static DeformationModel ac(double l_p) { return generic(l_p, 0.0, 1.0); }
    /// Magueijo-Smolin type: mass-shell shift plus kinetic deformation.
    static DeformationModel ms(double l_p) { return generic(l_p, 1.0, 1.0); }

    /// True when every energy map is the identity (SR, or l_p == 0).
    bool undeformed() const noexcept { return kind == ModelKind::SR || l_p == 0.0; }

    bool is_ac_type() const noexcept {
        return kind == ModelKind::GenericLeadingOrder && alpha2 == 0.0 && delta_alpha == 1.0;
    }
    bool is_ms_type() const noexcept {
        return kind == ModelKind::GenericLeadingOrder && alpha2 == 1.0 && delta_alpha == 1.0;
    }
};

/// Throws InvalidArgument unless l_p is finite and non-negative.
void validate(const DeformationModel& model);

struct EffectiveEnergy {
    double raw = 0.0;
    double deformed = 0.0;
    bool valid = true;  // false on the pole side of the rational map
};

/// Applies the model's scalar energy map to e (E or E - V as a unit).
/// Domain violations are reported through `valid`, never thrown.
EffectiveEnergy effective_energy(const DeformationModel& model, double e) noexcept;

/// Inverse of effective_energy on the branch continuous with E = target as
/// l_p -> 0. Throws NoRealBranch when that branch has no real preimage.
double invert_effective_energy(const DeformationModel& model, double target);

/// E^2 - p^2 - 2 alpha2 l_p E^3 + 2 delta_alpha l_p E p^2 - m^2.
/// SR evaluates the undeformed shell; DSR/GDSR throw WrongModelKind.
double mdr_residual(const DeformationModel& model, double e, double p, double m);

enum class WaveRegime { Propagating, Evanescent };

struct LocalWavenumber {
    WaveRegime regime = WaveRegime::Propagating;
    double value = 0.0;         // k (propagating) or kappa (evanescent), >= 0
    bool valid = true;
    double local_energy = 0.0;  // deformed (E - V)
};

LocalWavenumber local_wavenumber(const DeformationModel& model, double e, double v, double m) noexcept;

}  // namespace fvdsr
