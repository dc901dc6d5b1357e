#include "fvdsr/deformation.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "fvdsr/error.hpp"

namespace fvdsr {

namespace {

// Coefficient c of the polynomial map E (1 + c l_p E), or nullopt for
// the rational map.
std::optional<double> polynomial_coefficient(const DeformationModel& model) noexcept {
    switch (model.kind) {
        case ModelKind::SR: return 0.0;
        case ModelKind::GDSR_Polynomial: return model.chi;
        case ModelKind::GenericLeadingOrder: return model.alpha2;
        case ModelKind::DSR_Rational: return std::nullopt;
    }
    return 0.0;
}

std::string describe(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

}  // namespace

std::string_view kind_name(ModelKind kind) noexcept {
    switch (kind) {
        case ModelKind::SR: return "sr";
        case ModelKind::DSR_Rational: return "dsr";
        case ModelKind::GDSR_Polynomial: return "gdsr";
        case ModelKind::GenericLeadingOrder: return "generic";
    }
    return "sr";
}

std::optional<ModelKind> parse_kind(std::string_view name) noexcept {
    if (name == "sr") return ModelKind::SR;
    if (name == "dsr") return ModelKind::DSR_Rational;
    if (name == "gdsr") return ModelKind::GDSR_Polynomial;
    if (name == "generic") return ModelKind::GenericLeadingOrder;
    return std::nullopt;
}

DeformationModel DeformationModel::dsr(double l_p) {
    DeformationModel m{ModelKind::DSR_Rational, l_p, 0.0, 0.0, 0.0};
    validate(m);
    return m;
}

DeformationModel DeformationModel::gdsr(double l_p, double chi) {
    DeformationModel m{ModelKind::GDSR_Polynomial, l_p, 0.0, 0.0, chi};
    validate(m);
    return m;
}

DeformationModel DeformationModel::generic(double l_p, double alpha2, double delta_alpha) {
    DeformationModel m{ModelKind::GenericLeadingOrder, l_p, alpha2, delta_alpha, 0.0};
    validate(m);
    return m;
}

void validate(const DeformationModel& model) {
    if (!std::isfinite(model.l_p) || model.l_p < 0.0)
        fail(ErrorCode::InvalidArgument, "l_p must be finite and >= 0, got " + describe(model.l_p));
    if (!std::isfinite(model.alpha2) || !std::isfinite(model.delta_alpha) || !std::isfinite(model.chi))
        fail(ErrorCode::InvalidArgument, "deformation coefficients must be finite");
}

EffectiveEnergy effective_energy(const DeformationModel& model, double e) noexcept {
    EffectiveEnergy out{e, e, true};
    if (model.kind == ModelKind::SR) return out;

    if (auto c = polynomial_coefficient(model)) {
        out.deformed = e * (1.0 + *c * model.l_p * e);
        return out;
    }
    const double denom = 1.0 - model.l_p * e;
    if (!(denom > 0.0)) {
        out.valid = false;
        out.deformed = std::numeric_limits<double>::quiet_NaN();
        return out;
    }
    out.deformed = e / denom;
    return out;
}

double invert_effective_energy(const DeformationModel& model, double target) {
    if (model.kind == ModelKind::SR || model.l_p == 0.0) return target;

    if (auto c = polynomial_coefficient(model)) {
        const double cl = *c * model.l_p;
        if (cl == 0.0) return target;
        const double disc = 1.0 + 4.0 * cl * target;
        if (disc < 0.0)
            fail(ErrorCode::NoRealBranch,
                 "no real SR-connected preimage for target " + describe(target) +
                     " (discriminant " + describe(disc) + ")");
        // Rationalised root (-1 + sqrt(disc)) / (2 c l_p), free of cancellation.
        return 2.0 * target / (1.0 + std::sqrt(disc));
    }

    const double denom = 1.0 + model.l_p * target;
    if (!(denom > 0.0))
        fail(ErrorCode::NoRealBranch,
             "rational map has no preimage for target " + describe(target) + " <= -1/l_p");
    return target / denom;
}

double mdr_residual(const DeformationModel& model, double e, double p, double m) {
    const double shell = e * e - p * p - m * m;
    switch (model.kind) {
        case ModelKind::SR: return shell;
        case ModelKind::GenericLeadingOrder:
            return shell - 2.0 * model.alpha2 * model.l_p * e * e * e +
                   2.0 * model.delta_alpha * model.l_p * e * p * p;
        default:
            fail(ErrorCode::WrongModelKind, "mdr_residual needs a generic leading-order model, got " +
                                                std::string(kind_name(model.kind)));
    }
}

LocalWavenumber local_wavenumber(const DeformationModel& model, double e, double v, double m) noexcept {
    const EffectiveEnergy w = effective_energy(model, e - v);
    LocalWavenumber out;
    out.local_energy = w.deformed;
    if (!w.valid) {
        out.valid = false;
        out.value = std::numeric_limits<double>::quiet_NaN();
        return out;
    }
    const double aw = std::abs(w.deformed);
    // (|w| - m)(|w| + m) keeps precision near the shell edge.
    const double d = (aw - m) * (aw + m);
    if (d >= 0.0) {
        out.regime = WaveRegime::Propagating;
        out.value = std::sqrt(d);
    } else {
        out.regime = WaveRegime::Evanescent;
        out.value = std::sqrt(-d);
    }
    return out;
}

}  // namespace fvdsr
