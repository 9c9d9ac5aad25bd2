#ifndef VORWAVE_PARAMS_HPP
#define VORWAVE_PARAMS_HPP

#include <numbers>

namespace vorwave {

// Physical constants and numerical knobs for one run. A single instance is
// shared by every module; all fields are plain values, so copies are cheap
// and the struct is safe to hand to worker threads.
struct WaveParameters {
    // physics
    double L = 2.0 * std::numbers::pi; // spatial period
    double g = 1.0;                    // gravitational acceleration
    double omega = 0.0;                // constant vorticity (any real, 0 allowed)
    double d_ref = 1.0;                // reference mean depth (basis normalization, flat level)
    double p_atm = 0.0;                // atmospheric pressure constant

    // numerics
    int n = 64;                        // collocation points, even, >= 8
    double dealias_fraction = 2.0 / 3.0;
    bool dealias = true;               // apply the cutoff to time derivatives
    double solver_tol = 1e-10;         // relative Dirichlet residual for the BVP solve
    int volume_quad_order = 24;        // Gauss points per column in the volume energy
    double eta_floor = 1e-6;           // surface-collapse threshold, fraction of d_ref
    bool normalize_gauge = true;       // remove mean(xi) after each time step
    double fd_epsilon = 1e-6;          // default step for the numerical linearization
};

// Throws ConfigError on the grid-level invariants (L, N). Used by make_grid.
void check_grid_fields(const WaveParameters& p);

// Throws ConfigError unless the full invariant set holds (L > 0, g > 0,
// N even >= 8, d_ref > 0, fractions in range). The CLI boundary calls this;
// library code assumes it already ran. g = 0 is rejected here but tolerated
// by the energy routines themselves for diagnostic use.
void check_all_fields(const WaveParameters& p);

} // namespace vorwave

#endif
