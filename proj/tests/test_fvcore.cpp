#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "fvdsr/error.hpp"
#include "fvdsr/fvcore.hpp"

using namespace fvdsr;

namespace {

const complex I(0.0, 1.0);

double positive_eigenvalue(const FvMatrix& h) { return h.eigenvalues().first.real(); }

// Self-consistent positive eigenvalue of h_fv_deformed(E) at fixed p^2.
double self_consistent(const DeformationModel& model, double p2, double m) {
    double e = std::sqrt(m * m + p2);
    for (int i = 0; i < 200; ++i) e = positive_eigenvalue(h_fv_deformed(model, e, p2, m));
    return e;
}

}  // namespace

TEST(FvMatrix, PauliAlgebra) {
    const auto s1 = FvMatrix::sigma1(), s2 = FvMatrix::sigma2(), s3 = FvMatrix::sigma3();
    EXPECT_LT((s1 * s2 - s3 * I).max_abs_diff(FvMatrix{}), 1e-15);
    EXPECT_LT((s3 * s3).max_abs_diff(FvMatrix::identity()), 1e-15);
    EXPECT_LT((FvMatrix::kinetic() * FvMatrix::kinetic()).max_abs_diff(FvMatrix{}), 1e-15);
    const auto p = FvMatrix::kinetic().pauli();
    EXPECT_NEAR(std::abs(p.d - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(p.c - I), 0.0, 1e-15);
    EXPECT_LT(FvMatrix::from_pauli(p).max_abs_diff(FvMatrix::kinetic()), 1e-15);
}

TEST(HFvFree, SpectralSymmetry) {
    EXPECT_LT(h_fv_free(0.0, 1.0).max_abs_diff(FvMatrix::sigma3()), 1e-15);
    for (double p : {0.0, 1.0, std::numbers::pi, 7.5}) {
        const auto [hi, lo] = h_fv_free(p, 1.0).eigenvalues();
        const double omega = std::hypot(1.0, p);
        EXPECT_NEAR(hi.real(), omega, 1e-13 * omega);
        EXPECT_NEAR(lo.real(), -omega, 1e-13 * omega);
        EXPECT_NEAR(hi.imag(), 0.0, 1e-13);
    }
    EXPECT_NEAR(positive_eigenvalue(h_fv_free(std::numbers::pi, 1.0)), 3.2969083094756151588, 1e-13);
}

TEST(HFvOscillator, Levels) {
    EXPECT_NEAR(positive_eigenvalue(h_fv_oscillator_effective(0, 1.0, 1.0)), std::sqrt(2.0), 1e-14);
    EXPECT_NEAR(positive_eigenvalue(h_fv_oscillator_effective(2, 1.0, 1.0)), std::sqrt(6.0), 1e-14);
    EXPECT_NEAR(positive_eigenvalue(h_fv_oscillator_effective(0, 1.0, 1e-8)), 1.0, 1e-7);
    EXPECT_THROW(h_fv_oscillator_effective(0, 1.0, 0.0), Error);
    EXPECT_THROW(h_fv_oscillator_effective(-1, 1.0, 1.0), Error);
}

TEST(DeltaH, ReferenceMatrices) {
    EXPECT_LT(delta_h(DeformationModel::generic(0.1, 0.0, 0.0), 3.0, 2.0, 1.0).max_abs_diff(FvMatrix{}), 1e-15);
    EXPECT_LT(delta_h(DeformationModel::generic(0.1, 1.0, 0.0), 2.0, 5.0, 1.0).max_abs_diff(FvMatrix::sigma3() * 4.0),
              1e-15);
    EXPECT_LT(delta_h(DeformationModel::ac(0.1), 1.0, 1.0, 1.0).max_abs_diff(FvMatrix::kinetic() * -1.0), 1e-15);
    EXPECT_THROW(delta_h(DeformationModel::dsr(0.1), 1.0, 1.0, 1.0), Error);
}

TEST(PseudoHermiticity, Probes) {
    EXPECT_TRUE(is_sigma3_pseudo_hermitian(h_fv_free(1.3, 0.7), 1e-14));
    EXPECT_FALSE(is_sigma3_pseudo_hermitian(FvMatrix::sigma1(), 1e-14));
    EXPECT_FALSE(is_sigma3_pseudo_hermitian(FvMatrix::sigma2(), 1e-14));
    // i sigma1 satisfies the identity: both sides equal -i sigma1.
    EXPECT_TRUE(is_sigma3_pseudo_hermitian(FvMatrix::sigma1() * I, 1e-14));
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int i = 0; i < 500; ++i) {
        const auto model = DeformationModel::generic(std::abs(u(rng)) / 10.0, u(rng), u(rng));
        EXPECT_TRUE(is_sigma3_pseudo_hermitian(h_fv_deformed(model, u(rng), u(rng) * u(rng), 0.5 + std::abs(u(rng))),
                                               1e-14));
    }
}

TEST(SquaredOperatorMatching, KineticDeformationIsExact) {
    const auto model = DeformationModel::ac(0.03);
    for (double p : {0.3, 1.0, 2.5}) {
        const double e = self_consistent(model, p * p, 1.0);
        EXPECT_NEAR(mdr_residual(model, e, p, 1.0), 0.0, 1e-12);
    }
}

TEST(SquaredOperatorMatching, MassShellTermAtRestIsSecondOrder) {
    auto residual = [](double lp) {
        const auto model = DeformationModel::generic(lp, 1.0, 1.0);
        return std::abs(mdr_residual(model, self_consistent(model, 0.0, 1.0), 0.0, 1.0));
    };
    EXPECT_GE(residual(0.02) / residual(0.01), 3.5);
}

TEST(SquaredOperatorMatching, MassShellTermMismatchAtFiniteMomentum) {
    // The alpha2 term leaves l_p alpha2 E^2 (E - m)^2 / m at first order.
    const double lp = 1e-5, p = 1.5, m = 1.0;
    const auto model = DeformationModel::generic(lp, 1.0, 0.0);
    const double e = self_consistent(model, p * p, m);
    const double e0 = std::hypot(m, p);
    const double predicted = lp * e0 * e0 * (e0 - m) * (e0 - m) / m;
    EXPECT_NEAR(mdr_residual(model, e, p, m) / predicted, 1.0, 1e-3);
}

TEST(FvDensity, BranchSigns) {
    EXPECT_EQ(fv_density({1.0, 0.0}), 1.0);
    EXPECT_EQ(fv_density({0.0, 1.0}), -1.0);
    EXPECT_EQ(fv_density(plane_wave_mode(0.0, 1.0, Branch::Positive).spinor), 1.0);
    for (double p : {-5.0, -1.0, 0.0, 0.3, 2.0, 40.0}) {
        const auto pos = plane_wave_mode(p, 1.0, Branch::Positive);
        const auto neg = plane_wave_mode(p, 1.0, Branch::Negative);
        EXPECT_NEAR(fv_density(pos.spinor), 1.0, 1e-12);
        EXPECT_NEAR(fv_density(neg.spinor), -1.0, 1e-12);
        EXPECT_EQ(branch_of(pos.spinor), Branch::Positive);
        EXPECT_EQ(branch_of(neg.spinor), Branch::Negative);
        // The spinor is an eigenvector of the free Hamiltonian.
        const FvSpinor hs = h_fv_free(p, 1.0) * pos.spinor;
        EXPECT_NEAR(std::abs(hs.upper - pos.spinor.upper * pos.energy), 0.0, 1e-12 * pos.energy);
        EXPECT_NEAR(std::abs(hs.lower - pos.spinor.lower * pos.energy), 0.0, 1e-12 * pos.energy);
    }
}

TEST(FvCurrent, PlaneWaves) {
    const double e = std::sqrt(2.0);
    EXPECT_EQ(fv_plane_wave_current(1.0, 0.0, 1.0, 1.0, Branch::Positive), 0.0);
    EXPECT_NEAR(fv_plane_wave_current(e, 1.0, 1.0, 1.0, Branch::Positive), 0.70710678118654752440, 1e-15);
    EXPECT_NEAR(fv_plane_wave_current(e, 1.0, 1.0, 1.0, Branch::Positive) /
                    fv_plane_wave_current(e, -1.0, 1.0, 1.0, Branch::Positive),
                -1.0, 1e-15);
    EXPECT_NEAR(fv_plane_wave_current(e, 1.0, 1.0, complex(0.0, 2.0), Branch::Negative), 4.0 / e, 1e-14);
}

TEST(FvCurrent, SameBranchSuperpositionIsStationary) {
    const double m = 1.0, e = 2.0, p = std::sqrt(3.0);
    const FvSpinor u = mode_spinor(e, m);
    const complex a(0.8, 0.1), b(-0.3, 0.45);
    auto at = [&](double x) {
        const complex f = a * std::exp(I * p * x), g = b * std::exp(-I * p * x);
        return std::pair{u * (f + g), u * (I * p * (f - g))};
    };
    const auto [psi0, d0] = at(0.0);
    const double j0 = fv_current(psi0, d0, m);
    for (double x : {0.37, 1.9, -4.2, 11.0}) {
        const auto [psi, d] = at(x);
        EXPECT_NEAR(fv_current(psi, d, m), j0, 1e-12);
    }
    EXPECT_NEAR(j0, (std::norm(a) - std::norm(b)) * p / e, 1e-13);
}

TEST(FvCurrent, ContinuityEquationWithPotential) {
    // d_t rho + d_x j = 0 for i d_t Psi = [(sigma3 + i sigma2)(-d_x^2)/(2m) + m sigma3 + V] Psi.
    const double m = 1.3, v = 0.7, h = 1e-4;
    const complex a(0.4, -0.2), b(0.1, 0.3);
    const double k1 = 0.9, k2 = -1.7;
    auto psi = [&](double x) { return FvSpinor{a * std::exp(I * k1 * x), b * std::exp(I * k2 * x)}; };
    auto dpsi = [&](double x) { return FvSpinor{a * I * k1 * std::exp(I * k1 * x), b * I * k2 * std::exp(I * k2 * x)}; };
    auto d2psi = [&](double x) { return FvSpinor{-a * k1 * k1 * std::exp(I * k1 * x), -b * k2 * k2 * std::exp(I * k2 * x)}; };
    for (double x : {0.0, 0.8, -2.1}) {
        const FvSpinor hpsi = FvMatrix::kinetic() * (d2psi(x) * complex(-1.0 / (2.0 * m))) +
                              FvMatrix::sigma3() * psi(x) * complex(m) + psi(x) * complex(v);
        const FvSpinor dt = hpsi * (-I);
        const double drho = 2.0 * fv_inner(psi(x), dt).real();
        const double dj = (fv_current(psi(x + h), dpsi(x + h), m) - fv_current(psi(x - h), dpsi(x - h), m)) / (2 * h);
        EXPECT_NEAR(drho + dj, 0.0, 1e-8);
    }
}

TEST(FvFromKg, RestModesAndRoundTrip) {
    const double m = 1.0;
    const auto pos = fv_from_kg(1.0, -I * m, m);
    EXPECT_NEAR(std::abs(pos.upper - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(pos.lower), 0.0, 1e-15);
    const auto neg = fv_from_kg(1.0, I * m, m);
    EXPECT_NEAR(std::abs(neg.upper), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(neg.lower - 1.0), 0.0, 1e-15);

    std::mt19937_64 rng(11);
    std::normal_distribution<double> g;
    for (int i = 0; i < 100; ++i) {
        const complex phi(g(rng), g(rng)), dphi(g(rng), g(rng));
        const double mass = 0.2 + std::abs(g(rng));
        const FvSpinor s = fv_from_kg(phi, dphi, mass);
        const KgState back = kg_from_fv(s, mass);
        EXPECT_NEAR(std::abs(back.phi - phi), 0.0, 1e-14 * (1 + std::abs(phi)));
        EXPECT_NEAR(std::abs(back.dphi_dt - dphi), 0.0, 1e-14 * (1 + std::abs(dphi)));
        EXPECT_NEAR(std::abs(s.upper + s.lower - phi), 0.0, 1e-14 * (1 + std::abs(phi)));
        EXPECT_NEAR(std::abs(I * dphi - (s.upper - s.lower) * mass), 0.0, 1e-13 * (1 + std::abs(dphi)));
    }
    EXPECT_THROW(fv_from_kg(1.0, 0.0, 0.0), Error);
}
