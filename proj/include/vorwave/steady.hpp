#ifndef VORWAVE_STEADY_HPP
#define VORWAVE_STEADY_HPP

#include <span>
#include <string>
#include <vector>

#include "vorwave/errors.hpp"
#include "vorwave/grid.hpp"
#include "vorwave/params.hpp"

namespace vorwave {

// One traveling wave: profile, speed, and the relative mass flux k_flux
// (the constant value of chi - c*eta along the surface). gauge_rate is the
// constant drift of xi in the lab frame (g*d_ref at zero amplitude).
struct TravelingWaveSolution {
    std::vector<double> eta;
    std::vector<double> xi;
    double c = 0.0;
    double k_flux = 0.0;
    double residual_norm = 0.0;
    double amplitude = 0.0; // first cosine mode of eta
    double gauge_rate = 0.0;
    int iterations = 0;
    WaveParameters params;
};

struct FluxReport {
    double k_mean = 0.0;    // mean of chi - c*eta
    double deviation = 0.0; // max nodewise departure; ~0 exactly when steady
};

struct GuessState {
    std::vector<double> eta;
    std::vector<double> xi;
    double c = 0.0;
};

struct Residuals {
    std::vector<double> R_eta; // dH/dxi + c*eta_x
    std::vector<double> R_xi;  // -dH/deta - omega*chi + c*xi_x (constant at solutions)
};

struct ContinuationResult {
    std::vector<TravelingWaveSolution> members;
    bool completed = true;
    std::string failure;
    ErrorCategory failure_category = ErrorCategory::non_convergence;
};

FluxReport mass_flux(const PeriodicGrid& grid, const WaveParameters& params,
                     const SurfaceState& state, double c);

// Energy in the frame of the wave: H + omega*k*int(eta) + c*omega/2*int(eta^2).
double steady_hamiltonian(const PeriodicGrid& grid, const WaveParameters& params,
                          const SurfaceState& state, double c, double k);

Residuals traveling_residual(const PeriodicGrid& grid, const WaveParameters& params,
                             std::span<const double> eta, std::span<const double> xi,
                             double c);

// Newton iteration on the spectral residual with mean(eta) pinned to d_ref,
// the first eta cosine mode pinned to amplitude_target, the first sine mode
// pinned to zero (crest at x = 0), and the constant part of R_xi absorbed by
// the gauge-rate unknown. amplitude_target = 0 returns the flat solution on
// the linear branch nearest guess.c.
TravelingWaveSolution traveling_solve(const PeriodicGrid& grid, const WaveParameters& params,
                                      const GuessState& guess, double amplitude_target,
                                      double tol = 1e-11, int max_iter = 25);

// Walk the amplitude schedule, seeding each member from the previous one.
// Stops at the first failure and reports the partial family.
ContinuationResult continuation_run(const PeriodicGrid& grid, const WaveParameters& params,
                                    int branch, std::span<const double> amplitude_steps,
                                    double tol = 1e-11, int max_iter = 25);

} // namespace vorwave

#endif
