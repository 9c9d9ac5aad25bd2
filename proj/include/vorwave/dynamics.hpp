#ifndef VORWAVE_DYNAMICS_HPP
#define VORWAVE_DYNAMICS_HPP

#include <string>
#include <vector>

#include <Eigen/Core>

#include "vorwave/energy.hpp"
#include "vorwave/errors.hpp"
#include "vorwave/grid.hpp"
#include "vorwave/params.hpp"

namespace vorwave {

// Time derivatives of the canonical pair:
//   eta_dot = dH/dxi,   xi_dot = -dH/deta - omega * chi.
// Both are dealiased when the configuration asks for it.
struct Rates {
    std::vector<double> eta_dot;
    std::vector<double> xi_dot;
    double solve_residual = 0.0;
};

struct DiagRow {
    double t = 0.0;
    double H = 0.0;
    double mass = 0.0;
    double min_eta = 0.0;
    double max_eta = 0.0;
    double crest = 0.0; // max |eta - mean(eta)|
    double solve_residual = 0.0;
};

struct Trajectory {
    std::vector<SurfaceState> snapshots;
    std::vector<DiagRow> diagnostics;
    bool aborted = false;
    std::string abort_reason;
    ErrorCategory abort_category = ErrorCategory::solver;
};

// One linear mode of the flat-surface problem. The intrinsic frequency mu
// solves mu^2 - omega*tanh(kd)*mu - g*k*tanh(kd) = 0; sigma = mu - omega*d*k
// is the frequency seen at a fixed station and c = sigma/k the phase speed.
struct LinearMode {
    double k = 0.0;
    double mu = 0.0;
    double sigma = 0.0;
    double c = 0.0;
};

Rates rhs(const PeriodicGrid& grid, const WaveParameters& params, const SurfaceState& state);

// Classical four-stage Runge-Kutta step. Removes mean(xi) afterwards when
// gauge normalization is on; aborts when the surface falls below
// eta_floor * d_ref.
SurfaceState step_rk4(const PeriodicGrid& grid, const WaveParameters& params,
                      const SurfaceState& state, double dt);

// Fixed-step integration to t_end with snapshots every `stride` steps. Step
// failures end the run early; the partial trajectory carries the reason.
Trajectory integrate(const PeriodicGrid& grid, const WaveParameters& params,
                     const SurfaceState& state0, double t_end, double dt, int stride);

// Central-difference Jacobian of rhs in the stacked (eta, xi) coordinates,
// with the constant-xi gauge direction projected out of both sides.
Eigen::MatrixXd linearize(const PeriodicGrid& grid, const WaveParameters& params,
                          const SurfaceState& base, double eps);

// branch > 0 picks the root with mu > 0, branch < 0 the one with mu < 0.
LinearMode linear_dispersion(const WaveParameters& params, int m, int branch);

// eta = d + a cos(k_m x) with the matching linear velocity trace, so small
// amplitudes evolve as a single traveling mode.
SurfaceState linear_mode_state(const PeriodicGrid& grid, const WaveParameters& params,
                               int m, double a, int branch);

// 0.5 / sigma_max over the retained modes; RK4 is stable up to
// sigma_max * dt = 2*sqrt(2), so this leaves a wide accuracy margin.
double suggested_dt(const PeriodicGrid& grid, const WaveParameters& params);

DiagRow diagnose(const PeriodicGrid& grid, const WaveParameters& params,
                 const SurfaceState& state);

} // namespace vorwave

#endif
