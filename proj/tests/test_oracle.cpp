#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "fvdsr/error.hpp"
#include "fvdsr/oracle.hpp"

using namespace fvdsr;

namespace {

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected fvdsr::Error";
    return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(WellFd, GroundLevel) {
    const auto e = well_eigen_fd({1.0, 1.0, 1}, {0.0, 1.0, 2000}, 1);
    ASSERT_EQ(e.size(), 1u);
    EXPECT_NEAR(e[0], 3.2969083094756151588, 1e-5);
    EXPECT_NEAR(well_eigen_fd({0.0, 1.0, 1}, {0.0, 1.0, 2000}, 1)[0], std::numbers::pi, 1e-5);
    EXPECT_TRUE(well_eigen_fd({1.0, 1.0, 1}, {0.0, 1.0, 2000}, 0).empty());
}

TEST(WellFd, SecondOrderConvergence) {
    const WellConfig cfg{1.0, 1.0, 4};
    const auto coarse = well_eigen_fd(cfg, {0.0, 1.0, 1000}, 4);
    const auto fine = well_eigen_fd(cfg, {0.0, 1.0, 1999}, 4);
    for (int n = 1; n <= 4; ++n) {
        const double exact = well_omega(cfg, n);
        const double ratio = (coarse[n - 1] - exact) / (fine[n - 1] - exact);
        EXPECT_NEAR(ratio, 4.0, 0.1);
    }
}

TEST(WellFd, Errors) {
    EXPECT_EQ(code_of([] { well_eigen_fd({1.0, 1.0, 1}, {0.0, 1.0, 64}, 20); }), ErrorCode::GridTooCoarse);
    EXPECT_EQ(code_of([] { well_eigen_fd({1.0, 1.0, 1}, {0.0, 1.0, 10}, 1); }), ErrorCode::InvalidArgument);
    EXPECT_EQ(code_of([] { well_eigen_fd({1.0, 1.0, 1}, {0.0, 1.1, 2000}, 1); }), ErrorCode::InvalidArgument);
}

TEST(OscillatorFd, Levels) {
    const auto e = oscillator_eigen_fd({1.0, 1.0, 3}, {-8.0, 8.0, 4000}, 3);
    EXPECT_NEAR(e[0], std::sqrt(2.0), 1e-5);
    EXPECT_NEAR(e[1], 2.0, 1e-5);
    EXPECT_NEAR(e[2], std::sqrt(6.0), 1e-5);
    EXPECT_NEAR(oscillator_eigen_fd({1.0, 2.0, 1}, {-8.0, 8.0, 2000}, 1)[0], std::sqrt(3.0), 1e-5);
}

TEST(OscillatorFd, OrderingTermShiftsLevels) {
    // The +m w term of the upper FV component moves eigenvalues to 2 m w (n + 1).
    const auto e = oscillator_eigen_fd({1.0, 1.0, 3}, {-8.0, 8.0, 4000}, 3, OscillatorOrdering::Sigma3Upper);
    for (int n = 0; n < 3; ++n) EXPECT_NEAR(e[n], std::sqrt(1.0 + 2.0 * (n + 1)), 1e-5);
}

TEST(OscillatorFd, Errors) {
    EXPECT_EQ(code_of([] { oscillator_eigen_fd({1.0, 1.0, 1}, {-4.0, 4.0, 2000}, 3); }), ErrorCode::GridTooNarrow);
    EXPECT_EQ(code_of([] { oscillator_eigen_fd({1.0, 1.0, 1}, {-40.0, 40.0, 200}, 3); }), ErrorCode::GridTooCoarse);
}

TEST(BarrierOde, ReferenceAndFreePropagation) {
    const BarrierConfig barrier{1.0, 2.0, 4.0};
    EXPECT_NEAR(barrier_t_ode(barrier, DeformationModel::sr(), 1.5), 0.0036678065722560802316, 1e-12);
    EXPECT_NEAR(barrier_t_ode({1.0, 0.0, 4.0}, DeformationModel::sr(), 2.0), 1.0, 1e-10);
    EXPECT_NEAR(barrier_t_ode(barrier, DeformationModel::dsr(0.06), 1.5), 0.0031239764039075030544, 1e-12);
    const double q = std::numbers::pi / 4.0;
    EXPECT_NEAR(barrier_t_ode(barrier, DeformationModel::sr(), 2.0 + std::sqrt(1.0 + q * q)), 1.0, 1e-6);
    EXPECT_EQ(code_of([&] { barrier_t_ode(barrier, DeformationModel::sr(), 0.5); }),
              ErrorCode::NonPropagatingIncidence);
}

TEST(OrderCheck, Fits) {
    const std::vector<double> lps{0.04, 0.02, 0.01, 0.005};
    const auto quad = perturbation_order_check([](double l) { return 1.0 + l + 3.0 * l * l; },
                                               [](double l) { return 1.0 + l; }, lps);
    EXPECT_FALSE(quad.degenerate);
    EXPECT_NEAR(quad.exponent, 2.0, 1e-9);
    const auto same = perturbation_order_check([](double l) { return std::exp(l); }, [](double l) { return std::exp(l); },
                                               lps);
    EXPECT_TRUE(same.degenerate);
    const auto well = perturbation_order_check(
        [](double l) {
            const double o = std::sqrt(1.0 + std::numbers::pi * std::numbers::pi);
            return o / (1.0 + l * o);
        },
        [](double l) {
            const double o = std::sqrt(1.0 + std::numbers::pi * std::numbers::pi);
            return o * (1.0 - l * o);
        },
        lps);
    EXPECT_NEAR(well.exponent, 2.0, 0.2);
    const std::vector<double> uneven{0.04, 0.03, 0.01};
    EXPECT_THROW(perturbation_order_check([](double l) { return l; }, [](double) { return 0.0; }, uneven), Error);
}
