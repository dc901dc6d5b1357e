#pragma once

// Brute-force reference solvers. Kinematics (local wave numbers) come from
// the deformation module; diagonalization, integration and matching are
// independent of the closed forms they check.

#include <functional>
#include <span>
#include <vector>

#include "fvdsr/scattering.hpp"
#include "fvdsr/spectra.hpp"

namespace fvdsr {

struct GridSpec {
    double x_min = 0.0;
    double x_max = 1.0;
    int points = 2000;

    double spacing() const noexcept { return (x_max - x_min) / (points - 1); }
};

/// Throws InvalidArgument unless points >= 64 and x_max > x_min.
void validate(const GridSpec& grid);

/// Lowest `count` values sqrt(m^2 + kappa_j), kappa_j the Dirichlet
/// eigenvalues of the central-difference -d^2/dx^2 on [0, L]. m = 0 is
/// allowed. GridTooCoarse when the Richardson error estimate exceeds 1e-4.
std::vector<double> well_eigen_fd(const WellConfig& cfg, const GridSpec& grid, int count);

enum class OscillatorOrdering {
    Bare,          // -d^2/dx^2 + m^2 w^2 x^2, eigenvalues m w (2n + 1)
    Sigma3Upper,   // adds the +m w ordering term of the upper FV component
};

/// Same for the oscillator operator selected by `ordering`. The grid must
/// reach at least sqrt((2 count + 1)/(m w)) + 5/sqrt(m w) on both sides
/// (GridTooNarrow).
std::vector<double> oscillator_eigen_fd(const OscillatorConfig& cfg, const GridSpec& grid, int count,
                                        OscillatorOrdering ordering = OscillatorOrdering::Bare);

/// Transmission from backward RK4 integration of psi'' + w^2(x) psi = 0,
/// started from a pure outgoing wave beyond the barrier. Step size obeys
/// sqrt(|w^2|) h <= 0.01; the run is repeated at half step and
/// StepSizeTooLarge is raised when the two disagree beyond 1e-8.
double barrier_t_ode(const BarrierConfig& cfg, const DeformationModel& model, double e);

struct StepFlux {
    double r = 0.0;
    double t = 0.0;
};

/// Step R and T as FV current ratios of explicitly matched unit-density
/// FV modes (psi and psi' of the KG field continuous at x = 0).
StepFlux step_rt_fv_current(const StepConfig& cfg, const DeformationModel& model, double e);

struct OrderFit {
    double exponent = 0.0;
    bool degenerate = false;  // residuals at the rounding floor
};

/// Log-log least-squares slope of |f_exact - f_first_order| against l_p.
/// l_p_list must be geometric with at least three positive entries.
OrderFit perturbation_order_check(const std::function<double(double)>& f_exact,
                                  const std::function<double(double)>& f_first_order,
                                  std::span<const double> l_p_list);

}  // namespace fvdsr
