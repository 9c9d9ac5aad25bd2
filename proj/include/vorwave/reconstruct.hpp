#ifndef VORWAVE_RECONSTRUCT_HPP
#define VORWAVE_RECONSTRUCT_HPP

#include <array>
#include <span>
#include <vector>

#include "vorwave/grid.hpp"
#include "vorwave/params.hpp"

namespace vorwave {

// One interior sample of the reconstructed flow. velocity_field leaves P and
// phi_t as NaN; pressure_field fills every member.
struct FieldSample {
    double x = 0.0;
    double y = 0.0;
    double u = 0.0;
    double v = 0.0;
    double psi = 0.0;
    double P = 0.0;
    double phi_t = 0.0;
};

std::vector<FieldSample> velocity_field(const PeriodicGrid& grid, const WaveParameters& params,
                                        const SurfaceState& state,
                                        std::span<const std::array<double, 2>> points);

// P = P_atm - phi_t - (u^2 + v^2)/2 - omega*psi - g*y, with phi_t obtained
// from a second Dirichlet solve on the trace xi_t - xi2 * eta_t. Equals
// P_atm on the surface up to solver accuracy.
std::vector<FieldSample> pressure_field(const PeriodicGrid& grid, const WaveParameters& params,
                                        const SurfaceState& state,
                                        std::span<const std::array<double, 2>> points);

// Quadrature of u along the bed; ~0 for every solved state since each basis
// element integrates to zero over the period.
double bed_flow_check(const PeriodicGrid& grid, const WaveParameters& params,
                      const SurfaceState& state);

// nx columns uniform in x, ny samples per column from the bed to the local
// surface. Convenience for field dumps.
std::vector<std::array<double, 2>> sample_lattice(const PeriodicGrid& grid,
                                                  const SurfaceState& state,
                                                  int nx, int ny);

} // namespace vorwave

#endif
