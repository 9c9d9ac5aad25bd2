#ifndef VORWAVE_ENERGY_HPP
#define VORWAVE_ENERGY_HPP

#include <span>
#include <vector>

#include "vorwave/grid.hpp"
#include "vorwave/harmonic.hpp"
#include "vorwave/params.hpp"

namespace vorwave {

struct EnergyReport {
    double H_surface = 0.0;
    double H_volume = 0.0;
    double kinetic = 0.0;
    double potential = 0.0;
    double mass = 0.0;
    double relative_mismatch = 0.0; // |H_surface - H_volume| / max(|H_volume|, 1e-12)
};

// Surface form of the total energy:
//   H = 1/2 int xi_x T(eta)xi + g/2 int eta^2
//     - omega/2 int xi_x eta^2 + omega^2/6 int eta^3.
// Invariant under xi -> xi + const.
double energy_surface(const PeriodicGrid& grid, const WaveParameters& params,
                      const SurfaceState& state);

// Same, reusing already-computed traces (one Dirichlet solve saved).
double energy_surface(const PeriodicGrid& grid, const WaveParameters& params,
                      const SurfaceState& state, const SurfaceTraces& traces);

// Volume form: kinetic + potential energy integrated over the fluid domain,
// per-column Gauss quadrature in y, periodic rule in x. Serves as the
// independent oracle for energy_surface.
EnergyReport energy_volume(const PeriodicGrid& grid, const WaveParameters& params,
                           const SurfaceState& state);

// Variational derivative of H with respect to xi: the surface value of
// v - u eta_x, evaluated as xi2 - (xi1 - omega*eta) * eta_x.
std::vector<double> grad_xi(const PeriodicGrid& grid, const WaveParameters& params,
                            const SurfaceState& state, const SurfaceTraces& traces);

// Variational derivative of H with respect to eta (xi held fixed).
std::vector<double> grad_eta(const PeriodicGrid& grid, const WaveParameters& params,
                             const SurfaceState& state, const SurfaceTraces& traces);

// Stream function on the surface: chi = T(eta)xi - (omega/2) eta^2.
std::vector<double> chi_of_state(const PeriodicGrid& grid, const WaveParameters& params,
                                 const SurfaceState& state);

// Quadrature of eta over the period cell; conserved by the evolution.
double mass(const PeriodicGrid& grid, const SurfaceState& state);

// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

} // namespace vorwave

#endif
