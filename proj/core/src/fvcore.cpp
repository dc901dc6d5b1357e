#include "fvdsr/fvcore.hpp"

#include <algorithm>
#include <cmath>

#include "fvdsr/error.hpp"

namespace fvdsr {

namespace {
constexpr complex I{0.0, 1.0};
}

complex fv_inner(const FvSpinor& a, const FvSpinor& b) noexcept {
    return std::conj(a.upper) * b.upper - std::conj(a.lower) * b.lower;
}

double fv_density(const FvSpinor& s) noexcept {
    return std::norm(s.upper) - std::norm(s.lower);
}

FvMatrix FvMatrix::from_pauli(const PauliCoefficients& p) {
    return {p.a + p.d, p.b - I * p.c, p.b + I * p.c, p.a - p.d};
}

PauliCoefficients FvMatrix::pauli() const {
    PauliCoefficients p;
    p.a = 0.5 * (e_[0] + e_[3]);
    p.d = 0.5 * (e_[0] - e_[3]);
    p.b = 0.5 * (e_[1] + e_[2]);
    p.c = 0.5 * I * (e_[1] - e_[2]);
    return p;
}

FvMatrix FvMatrix::adjoint() const {
    return {std::conj(e_[0]), std::conj(e_[2]), std::conj(e_[1]), std::conj(e_[3])};
}

std::pair<complex, complex> FvMatrix::eigenvalues() const {
    const complex half_tr = 0.5 * trace();
    const complex root = std::sqrt(half_tr * half_tr - determinant());
    complex l1 = half_tr + root;
    complex l2 = half_tr - root;
    if (l1.real() < l2.real()) std::swap(l1, l2);
    return {l1, l2};
}

FvMatrix FvMatrix::operator+(const FvMatrix& o) const {
    return {e_[0] + o.e_[0], e_[1] + o.e_[1], e_[2] + o.e_[2], e_[3] + o.e_[3]};
}

FvMatrix FvMatrix::operator-(const FvMatrix& o) const {
    return {e_[0] - o.e_[0], e_[1] - o.e_[1], e_[2] - o.e_[2], e_[3] - o.e_[3]};
}

FvMatrix FvMatrix::operator*(const FvMatrix& o) const {
    return {e_[0] * o.e_[0] + e_[1] * o.e_[2], e_[0] * o.e_[1] + e_[1] * o.e_[3],
            e_[2] * o.e_[0] + e_[3] * o.e_[2], e_[2] * o.e_[1] + e_[3] * o.e_[3]};
}

FvMatrix FvMatrix::operator*(complex s) const {
    return {e_[0] * s, e_[1] * s, e_[2] * s, e_[3] * s};
}

FvSpinor FvMatrix::operator*(const FvSpinor& s) const {
    return {e_[0] * s.upper + e_[1] * s.lower, e_[2] * s.upper + e_[3] * s.lower};
}

double FvMatrix::max_abs_diff(const FvMatrix& o) const {
    double worst = 0.0;
    for (std::size_t i = 0; i < 4; ++i) worst = std::max(worst, std::abs(e_[i] - o.e_[i]));
    return worst;
}

FvMatrix h_fv_kinetic(double p2, double m) {
    require_positive_mass(m);
    return FvMatrix::kinetic() * (p2 / (2.0 * m)) + FvMatrix::sigma3() * m;
}

FvMatrix h_fv_free(double p, double m) {
    return h_fv_kinetic(p * p, m);
}

double oscillator_xi(int n, double m, double omega) {
    if (n < 0) fail(ErrorCode::InvalidArgument, "oscillator level must be >= 0");
    require_positive_mass(m);
    if (!(omega > 0.0)) fail(ErrorCode::NonpositiveFrequency, "omega must be > 0");
    return m * omega * (2.0 * n + 1.0);
}

FvMatrix h_fv_oscillator_effective(int n, double m, double omega) {
    return h_fv_kinetic(oscillator_xi(n, m, omega), m);
}

FvMatrix delta_h(const DeformationModel& model, double e, double p2_effective, double m) {
    if (model.kind != ModelKind::GenericLeadingOrder)
        fail(ErrorCode::WrongModelKind,
             "delta_h needs a generic leading-order model, got " + std::string(kind_name(model.kind)));
    require_positive_mass(m);
    // The anticommutator {E, p^2} / (2m) collapses to E p^2 / m for c-number E.
    return FvMatrix::sigma3() * (model.alpha2 * e * e) -
           FvMatrix::kinetic() * (model.delta_alpha * e * p2_effective / m);
}

FvMatrix h_fv_deformed(const DeformationModel& model, double e, double p2_effective, double m) {
    return h_fv_kinetic(p2_effective, m) + delta_h(model, e, p2_effective, m) * model.l_p;
}

bool is_sigma3_pseudo_hermitian(const FvMatrix& h, double tol) {
    if (!(tol > 0.0)) fail(ErrorCode::InvalidArgument, "tolerance must be > 0");
    const FvMatrix s3 = FvMatrix::sigma3();
    return h.adjoint().max_abs_diff(s3 * h * s3) <= tol;
}

FvSpinor mode_spinor(double local_energy, double m) {
    require_positive_mass(m);
    if (local_energy == 0.0 || !std::isfinite(local_energy))
        fail(ErrorCode::InvalidArgument, "mode spinor needs a finite nonzero local energy");
    const double norm = 2.0 * std::sqrt(m * std::abs(local_energy));
    return {(m + local_energy) / norm, (m - local_energy) / norm};
}

PlaneWaveMode plane_wave_mode(double p, double m, Branch branch) {
    require_positive_mass(m);
    const double omega = std::hypot(m, p);
    const double e = branch == Branch::Positive ? omega : -omega;
    return {e, p, m, mode_spinor(e, m), branch};
}

Branch branch_of(const FvSpinor& s) noexcept {
    return fv_density(s) >= 0.0 ? Branch::Positive : Branch::Negative;
}

double fv_current(const FvSpinor& psi, const FvSpinor& dpsi_dx, double m) {
    require_positive_mass(m);
    const FvMatrix kernel = FvMatrix::identity() + FvMatrix::sigma1();
    const complex forward = std::conj(psi.upper) * (kernel * dpsi_dx).upper +
                            std::conj(psi.lower) * (kernel * dpsi_dx).lower;
    const complex backward = std::conj(dpsi_dx.upper) * (kernel * psi).upper +
                             std::conj(dpsi_dx.lower) * (kernel * psi).lower;
    return ((forward - backward) / (2.0 * m * I)).real();
}

double fv_plane_wave_current(double e, double p, double m, complex amplitude, Branch branch) {
    const double w = branch == Branch::Positive ? std::abs(e) : -std::abs(e);
    const FvSpinor psi = mode_spinor(w, m) * amplitude;
    return fv_current(psi, psi * (I * p), m);
}

FvSpinor fv_from_kg(complex phi, complex dphi_dt, double m) {
    require_positive_mass(m);
    const complex time_part = (I / m) * dphi_dt;
    return {0.5 * (phi + time_part), 0.5 * (phi - time_part)};
}

KgState kg_from_fv(const FvSpinor& s, double m) {
    require_positive_mass(m);
    return {s.upper + s.lower, -I * m * (s.upper - s.lower)};
}

}  // namespace fvdsr
