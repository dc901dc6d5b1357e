#include "fvdsr/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

#include "fvdsr/error.hpp"
#include "fvdsr/fvcore.hpp"

namespace fvdsr {

namespace {

using cplx = std::complex<double>;

constexpr double kRichardsonTol = 1e-4;
constexpr double kStepPhase = 0.01;
constexpr double kOdeAgreement = 1e-8;

// Lowest eigenvalues of the symmetric tridiagonal matrix -d^2 + pot(x_i)
// on the interior nodes of [x0, x0 + (n + 1) h].
std::vector<double> tridiagonal_levels(double x0, double h, int interior, int count,
                                       const std::function<double(double)>& pot) {
    Eigen::VectorXd diag(interior);
    Eigen::VectorXd off(std::max(interior - 1, 0));
    const double inv_h2 = 1.0 / (h * h);
    for (int i = 0; i < interior; ++i) diag[i] = 2.0 * inv_h2 + pot(x0 + (i + 1) * h);
    for (int i = 0; i + 1 < interior; ++i) off[i] = -inv_h2;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, off, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) fail(ErrorCode::InvalidArgument, "tridiagonal eigen-solve failed");
    const Eigen::VectorXd& ev = solver.eigenvalues();
    return {ev.data(), ev.data() + count};
}

// Solves on the given grid and on the grid with doubled spacing, returning
// the fine levels after the Richardson error gate.
std::vector<double> fd_levels(const GridSpec& grid, int count, double m,
                              const std::function<double(double)>& pot) {
    const int interior = grid.points - 2;
    if (count > interior / 2)
        fail(ErrorCode::InvalidArgument, "count " + std::to_string(count) + " too large for the grid");
    const double length = grid.x_max - grid.x_min;
    const int coarse_points = (grid.points - 1) / 2 + 1;
    const double h = grid.spacing();
    const double h2 = length / (coarse_points - 1);

    auto fine = tridiagonal_levels(grid.x_min, h, interior, count, pot);
    auto coarse = tridiagonal_levels(grid.x_min, h2, coarse_points - 2, count, pot);
    const double ratio2 = (h2 / h) * (h2 / h);
    std::vector<double> out(static_cast<std::size_t>(count));
    for (int j = 0; j < count; ++j) {
        const double ef = std::sqrt(m * m + fine[j]);
        const double ec = std::sqrt(m * m + coarse[j]);
        const double err = std::abs(ec - ef) / (ratio2 - 1.0);
        if (err > kRichardsonTol)
            fail(ErrorCode::GridTooCoarse, "Richardson error " + std::to_string(err) + " at level " +
                                               std::to_string(j) + " exceeds 1e-4");
        out[j] = ef;
    }
    return out;
}

struct OdeState {
    cplx psi;
    cplx dpsi;
};

// RK4 for psi'' = -s psi from x_start over `steps` steps of size h (h may be negative).
OdeState rk4(OdeState y, double s, double h, long steps) {
    auto f = [s](const OdeState& u) { return OdeState{u.dpsi, -s * u.psi}; };
    for (long i = 0; i < steps; ++i) {
        const OdeState k1 = f(y);
        const OdeState k2 = f({y.psi + 0.5 * h * k1.psi, y.dpsi + 0.5 * h * k1.dpsi});
        const OdeState k3 = f({y.psi + 0.5 * h * k2.psi, y.dpsi + 0.5 * h * k2.dpsi});
        const OdeState k4 = f({y.psi + h * k3.psi, y.dpsi + h * k3.dpsi});
        y.psi += h / 6.0 * (k1.psi + 2.0 * k2.psi + 2.0 * k3.psi + k4.psi);
        y.dpsi += h / 6.0 * (k1.dpsi + 2.0 * k2.dpsi + 2.0 * k3.dpsi + k4.dpsi);
    }
    return y;
}

long steps_for(double length, double s, int refine) {
    const double rate = std::sqrt(std::abs(s));
    const long base = std::max<long>(16, static_cast<long>(std::ceil(rate * length / kStepPhase)));
    return base * refine;
}

double integrate_barrier(double k, double s_in, double a, int refine) {
    const double s_out = k * k;
    const double pad = 0.25 * (2.0 * std::acos(-1.0) / k);
    const cplx i(0.0, 1.0);

    // Pure outgoing wave at x = a + pad, unit amplitude.
    const double x_right = a + pad;
    OdeState y{std::exp(i * k * x_right), i * k * std::exp(i * k * x_right)};

    long n = steps_for(pad, s_out, refine);
    y = rk4(y, s_out, -pad / n, n);
    n = steps_for(a, s_in, refine);
    y = rk4(y, s_in, -a / n, n);
    n = steps_for(pad, s_out, refine);
    y = rk4(y, s_out, -pad / n, n);

    const double x_left = -pad;
    const cplx incident = 0.5 * (y.psi + y.dpsi / (i * k)) * std::exp(-i * k * x_left);
    return 1.0 / std::norm(incident);
}

}  // namespace

void validate(const GridSpec& grid) {
    if (grid.points < 64)
        fail(ErrorCode::InvalidArgument, "grid needs at least 64 points, got " + std::to_string(grid.points));
    if (!(grid.x_max > grid.x_min) || !std::isfinite(grid.x_min) || !std::isfinite(grid.x_max))
        fail(ErrorCode::InvalidArgument, "grid needs finite x_max > x_min");
}

std::vector<double> well_eigen_fd(const WellConfig& cfg, const GridSpec& grid, int count) {
    if (!(cfg.mass >= 0.0) || !std::isfinite(cfg.mass))
        fail(ErrorCode::InvalidArgument, "mass must be finite and >= 0");
    if (!(cfg.width > 0.0)) fail(ErrorCode::InvalidArgument, "well width must be > 0");
    validate(grid);
    if (count < 0) fail(ErrorCode::InvalidArgument, "count must be >= 0");
    const double edge_tol = 1e-12 * cfg.width;
    if (std::abs(grid.x_min) > edge_tol || std::abs(grid.x_max - cfg.width) > edge_tol)
        fail(ErrorCode::InvalidArgument, "grid must span exactly [0, L]");
    if (count == 0) return {};
    return fd_levels(grid, count, cfg.mass, [](double) { return 0.0; });
}

std::vector<double> oscillator_eigen_fd(const OscillatorConfig& cfg, const GridSpec& grid, int count,
                                        OscillatorOrdering ordering) {
    require_positive_mass(cfg.mass);
    if (!(cfg.omega > 0.0)) fail(ErrorCode::NonpositiveFrequency, "omega must be > 0");
    validate(grid);
    if (count < 0) fail(ErrorCode::InvalidArgument, "count must be >= 0");
    if (count == 0) return {};
    const double mw = cfg.mass * cfg.omega;
    const double reach = std::sqrt((2.0 * count + 1.0) / mw) + 5.0 / std::sqrt(mw);
    if (grid.x_max < reach || -grid.x_min < reach)
        fail(ErrorCode::GridTooNarrow, "grid must cover |x| <= " + std::to_string(reach));
    const double shift = ordering == OscillatorOrdering::Sigma3Upper ? mw : 0.0;
    return fd_levels(grid, count, cfg.mass, [mw, shift](double x) { return mw * mw * x * x + shift; });
}

double barrier_t_ode(const BarrierConfig& cfg, const DeformationModel& model, double e) {
    validate(cfg);
    validate(model);
    const double m = cfg.mass;
    const LocalWavenumber out = local_wavenumber(model, e, 0.0, m);
    const LocalWavenumber in = local_wavenumber(model, e, cfg.height, m);
    if (!out.valid || !in.valid) fail(ErrorCode::MapInvalid, "energy map invalid at E = " + std::to_string(e));
    if (!(out.local_energy > m) || !(out.value > 0.0))
        fail(ErrorCode::NonPropagatingIncidence, "incident effective energy must exceed m");

    const double s_in = in.regime == WaveRegime::Propagating ? in.value * in.value : -in.value * in.value;
    const double coarse = integrate_barrier(out.value, s_in, cfg.width, 1);
    const double fine = integrate_barrier(out.value, s_in, cfg.width, 2);
    if (std::abs(fine - coarse) > kOdeAgreement * std::abs(fine))
        fail(ErrorCode::StepSizeTooLarge, "RK4 step-doubling estimate exceeds 1e-8");
    return fine;
}

StepFlux step_rt_fv_current(const StepConfig& cfg, const DeformationModel& model, double e) {
    validate(cfg);
    validate(model);
    const double m = cfg.mass;
    const LocalWavenumber left = local_wavenumber(model, e, 0.0, m);
    const LocalWavenumber right = local_wavenumber(model, e, cfg.height, m);
    if (!left.valid || !right.valid) fail(ErrorCode::MapInvalid, "energy map invalid");
    if (!(left.local_energy > m) || !(left.value > 0.0))
        fail(ErrorCode::NonPropagatingIncidence, "incident effective energy must exceed m");

    const cplx i(0.0, 1.0);
    const double k = left.value;
    const FvSpinor u_left = mode_spinor(left.local_energy, m);
    const auto kg = [](const FvSpinor& s) { return s.upper + s.lower; };
    const cplx c_left = kg(u_left);

    if (right.regime == WaveRegime::Evanescent) {
        // Decaying tail carries no current; only the reflected wave matters.
        const double kappa = right.value;
        // Phi(0): c(1 + r) = tau ; Phi'(0): i k c (1 - r) = -kappa tau
        const cplx r = (i * k + kappa) / (i * k - kappa);
        const FvSpinor inc = u_left;
        const FvSpinor ref = u_left * r;
        const double j_inc = fv_current(inc, inc * (i * k), m);
        const double j_ref = fv_current(ref, ref * (-i * k), m);
        return {-j_ref / j_inc, 0.0};
    }

    // Outgoing transmitted wave: group velocity sign follows the branch.
    const double q = right.local_energy < 0.0 ? -right.value : right.value;
    const FvSpinor u_right = mode_spinor(right.local_energy, m);
    const cplx c_right = kg(u_right);
    // c_l (1 + r) = c_r t ; i k c_l (1 - r) = i q c_r t
    const cplx t = 2.0 * k * c_left / (c_right * (k + q));
    const cplx r = (k - q) / (k + q);

    const FvSpinor inc = u_left;
    const FvSpinor ref = u_left * r;
    const FvSpinor tr = u_right * t;
    const double j_inc = fv_current(inc, inc * (i * k), m);
    const double j_ref = fv_current(ref, ref * (-i * k), m);
    const double j_tr = fv_current(tr, tr * (i * q), m);
    return {-j_ref / j_inc, j_tr / j_inc};
}

OrderFit perturbation_order_check(const std::function<double(double)>& f_exact,
                                  const std::function<double(double)>& f_first_order,
                                  std::span<const double> l_p_list) {
    if (l_p_list.size() < 3) fail(ErrorCode::InvalidArgument, "order check needs at least three l_p values");
    for (double l : l_p_list)
        if (!(l > 0.0) || !std::isfinite(l)) fail(ErrorCode::InvalidArgument, "l_p values must be positive");
    const double ratio = l_p_list[1] / l_p_list[0];
    for (std::size_t i = 2; i < l_p_list.size(); ++i)
        if (std::abs(l_p_list[i] / l_p_list[i - 1] - ratio) > 1e-9 * std::abs(ratio))
            fail(ErrorCode::InvalidArgument, "l_p values must form a geometric sequence");

    OrderFit fit;
    std::vector<double> xs, ys;
    for (double l : l_p_list) {
        const double fe = f_exact(l);
        const double ff = f_first_order(l);
        const double r = std::abs(fe - ff);
        const double floor = 64.0 * std::numeric_limits<double>::epsilon() * std::max({std::abs(fe), std::abs(ff), 1.0});
        if (r <= floor) {
            fit.degenerate = true;
            return fit;
        }
        xs.push_back(std::log(l));
        ys.push_back(std::log(r));
    }
    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    fit.exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return fit;
}

}  // namespace fvdsr
