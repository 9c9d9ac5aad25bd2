#ifndef VORWAVE_HARMONIC_HPP
#define VORWAVE_HARMONIC_HPP

#include <array>
#include <span>
#include <vector>

#include "vorwave/grid.hpp"
#include "vorwave/params.hpp"

namespace vorwave {

// Coefficients of the generalized potential in the harmonic basis
//   1,  trig(k_m x) * cosh(k_m y) / cosh(k_m d_ref),  m = 1 .. N/2.
// Every basis element is harmonic, periodic in x, and has zero normal
// derivative on the bed, so those three conditions hold exactly for any
// coefficient vector; only the surface Dirichlet data is fitted.
struct HarmonicField {
    double a0 = 0.0;
    std::vector<double> ac; // m = 1 .. N/2-1
    std::vector<double> as;
    double nyquist = 0.0;   // cosine mode at m = N/2 (makes the collocation square)
    double L = 0.0;
    double d_ref = 0.0;
    double solve_residual = 0.0; // relative Dirichlet mismatch at the nodes
    Spectrum eta_spec;           // surface the field was solved against

    int half_modes() const { return static_cast<int>(ac.size()); }
};

// Everything the energy functionals and the evolution need at the surface.
// xi1, xi2 are the partial derivatives of the potential evaluated along the
// surface (xi1 is not the tangential derivative xi_x; the chain rule gives
// xi_x = xi1 + eta_x * xi2). t_xi is the conjugate-trace transform of xi,
// and chi = t_xi - (omega/2) eta^2 is the stream function on the surface.
struct SurfaceTraces {
    std::vector<double> xi1;
    std::vector<double> xi2;
    std::vector<double> chi;
    std::vector<double> t_xi;
    double solve_residual = 0.0;
};

struct InteriorSample {
    double x = 0.0;
    double y = 0.0;
    double phi = 0.0;
    double u = 0.0;
    double v = 0.0;
    double psi = 0.0;
};

// Order-2 operator-series approximations of the surface data, used as an
// independent oracle for the collocation solve. `normal` approximates the
// normal-derivative data xi2 - eta_x*xi1, `t_xi` the conjugate trace.
struct DnoSeries {
    std::vector<double> normal;
    std::vector<double> t_xi;
};

// Fit the surface condition phi(x_j, eta_j) = xi_j by dense collocation.
// Throws DomainError when the surface touches the bed, SolverError when the
// collocation matrix is numerically singular, ConvergenceError when the
// Dirichlet residual stays above params.solver_tol after refinement.
HarmonicField solve_dirichlet(const PeriodicGrid& grid, const WaveParameters& params,
                              std::span<const double> eta, std::span<const double> xi);

// Analytic differentiation of the basis along the surface; no extra solve.
SurfaceTraces surface_traces(const HarmonicField& field, const PeriodicGrid& grid,
                             const WaveParameters& params, std::span<const double> eta);

// Conjugate trace of xi on the surface eta. Independent of omega.
std::vector<double> hilbert_transform(const PeriodicGrid& grid, const WaveParameters& params,
                                      std::span<const double> eta, std::span<const double> xi);

// Pointwise fields inside the fluid: u = phi_x - omega*y, v = phi_y, and the
// stream function psi (psi = 0 on the bed). Points must satisfy
// 0 <= y <= eta(x) up to a 1e-12*d_ref slack above the surface.
std::vector<InteriorSample> evaluate_interior(const HarmonicField& field,
                                              const WaveParameters& params,
                                              std::span<const std::array<double, 2>> points);

// Flat-strip Taylor expansion about mean(eta), truncated at second order in
// eta - mean(eta). Exact on flat surfaces, O(amplitude^3) otherwise.
DnoSeries dno_series_order2(const PeriodicGrid& grid, const WaveParameters& params,
                            std::span<const double> eta, std::span<const double> xi);

// cosh(k y) / cosh(k d) and sinh(k y) / cosh(k d) in overflow-free form.
double cosh_ratio(double k, double y, double d);
double sinh_ratio(double k, double y, double d);

} // namespace vorwave

#endif
