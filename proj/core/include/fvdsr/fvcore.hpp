#pragma once

// Two-component Feshbach-Villars algebra in the momentum (c-number p)
// representation: spinors, 2x2 operators, Hamiltonians, the sigma3
// metric, density and current.

#include <array>
#include <complex>
#include <utility>

#include "fvdsr/deformation.hpp"

namespace fvdsr {

using complex = std::complex<double>;

/// (phi, chi_fv). The lower component is the FV chi, not the G-DSR
/// coefficient.
struct FvSpinor {
    complex upper{};
    complex lower{};

    FvSpinor operator*(complex s) const { return {upper * s, lower * s}; }
    FvSpinor operator+(const FvSpinor& o) const { return {upper + o.upper, lower + o.lower}; }
};

/// Indefinite inner product a^dagger sigma3 b.
complex fv_inner(const FvSpinor& a, const FvSpinor& b) noexcept;

/// |phi|^2 - |chi_fv|^2. Its sign labels the branch.
double fv_density(const FvSpinor& s) noexcept;

/// Coefficients of a 1 + b sigma1 + c sigma2 + d sigma3.
struct PauliCoefficients {
    complex a{}, b{}, c{}, d{};
};

class FvMatrix {
public:
    constexpr FvMatrix() = default;
    constexpr FvMatrix(complex m00, complex m01, complex m10, complex m11)
        : e_{m00, m01, m10, m11} {}

    static FvMatrix identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static FvMatrix sigma1() { return {0.0, 1.0, 1.0, 0.0}; }
    static FvMatrix sigma2() { return {0.0, complex(0, -1), complex(0, 1), 0.0}; }
    static FvMatrix sigma3() { return {1.0, 0.0, 0.0, -1.0}; }
    /// sigma3 + i sigma2 = [[1, 1], [-1, -1]], the nilpotent kinetic structure.
    static FvMatrix kinetic() { return {1.0, 1.0, -1.0, -1.0}; }
    static FvMatrix from_pauli(const PauliCoefficients& p);

    complex operator()(int row, int col) const { return e_[static_cast<std::size_t>(2 * row + col)]; }
    complex& operator()(int row, int col) { return e_[static_cast<std::size_t>(2 * row + col)]; }

    PauliCoefficients pauli() const;
    FvMatrix adjoint() const;
    complex trace() const { return e_[0] + e_[3]; }
    complex determinant() const { return e_[0] * e_[3] - e_[1] * e_[2]; }
    /// Roots of the characteristic polynomial, larger real part first.
    std::pair<complex, complex> eigenvalues() const;

    FvMatrix operator+(const FvMatrix& o) const;
    FvMatrix operator-(const FvMatrix& o) const;
    FvMatrix operator*(const FvMatrix& o) const;
    FvMatrix operator*(complex s) const;
    FvSpinor operator*(const FvSpinor& s) const;

    /// Largest entrywise modulus of (this - o).
    double max_abs_diff(const FvMatrix& o) const;

private:
    std::array<complex, 4> e_{};
};

enum class Branch { Positive, Negative };

/// (sigma3 + i sigma2) p2 / (2m) + m sigma3 for a c-number p^2 (or any
/// eigenvalue standing in for it).
FvMatrix h_fv_kinetic(double p2, double m);

/// Free FV Hamiltonian at momentum p. Eigenvalues are +-sqrt(m^2 + p^2).
FvMatrix h_fv_free(double p, double m);

/// KG oscillator Hamiltonian restricted to Hermite mode n: the ordered
/// product (p + i m w x sigma3)(p - i m w x sigma3) is replaced by its
/// eigenvalue m w (2n + 1), which includes the ordering term.
FvMatrix h_fv_oscillator_effective(int n, double m, double omega);

/// Ordered-product eigenvalue m w (2n + 1) on Hermite mode n.
double oscillator_xi(int n, double m, double omega);

/// First-order deformation alpha2 E^2 sigma3 - delta_alpha (E p2 / m)(sigma3 + i sigma2)
/// with E a c-number. Only GenericLeadingOrder carries (alpha2, delta_alpha).
FvMatrix delta_h(const DeformationModel& model, double e, double p2_effective, double m);

/// h_fv_kinetic(p2, m) + l_p delta_h(model, e, p2, m).
FvMatrix h_fv_deformed(const DeformationModel& model, double e, double p2_effective, double m);

/// max |H^dagger - sigma3 H sigma3| <= tol.
bool is_sigma3_pseudo_hermitian(const FvMatrix& h, double tol);

/// Unit-|density| eigenspinor of h_fv_kinetic for local energy w != 0:
/// ((m + w), (m - w)) / (2 sqrt(m |w|)). Density is sign(w).
FvSpinor mode_spinor(double local_energy, double m);

struct PlaneWaveMode {
    double energy = 0.0;
    double momentum = 0.0;
    double mass = 0.0;
    FvSpinor spinor{};
    Branch branch = Branch::Positive;
};

/// Free plane-wave mode of momentum p on the requested branch.
PlaneWaveMode plane_wave_mode(double p, double m, Branch branch);

/// Branch label from the sign of the FV density (survives deformation).
Branch branch_of(const FvSpinor& s) noexcept;

/// Conserved FV current from a spinor and its x-derivative at one point,
///   j = (1/2mi) [Psi^dag K dPsi - dPsi^dag K Psi],   K = sigma3 (sigma3 + i sigma2) = 1 + sigma1.
/// K is the kernel that makes d_t rho + d_x j = 0 hold for H_FV + V.
double fv_current(const FvSpinor& psi, const FvSpinor& dpsi_dx, double m);

/// Current of amplitude * mode_spinor * exp(i p x). For a unit-density mode
/// this equals |amplitude|^2 p / |e| (= |amplitude|^2 (p/m) (m/|e|)).
double fv_plane_wave_current(double e, double p, double m, complex amplitude, Branch branch);

/// (Phi, dPhi/dt) -> (phi, chi_fv) in natural units.
FvSpinor fv_from_kg(complex phi, complex dphi_dt, double m);

struct KgState {
    complex phi{};
    complex dphi_dt{};
};
/// Inverse map: Phi = phi + chi_fv, i dPhi/dt = m (phi - chi_fv).
KgState kg_from_fv(const FvSpinor& s, double m);

}  // namespace fvdsr
