#include "vorwave/energy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "vorwave/errors.hpp"

namespace vorwave {

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.resize(n);
    weights.resize(n);
    // Newton iteration on P_n from the Chebyshev-angle initial guess; the
    // rule is symmetric so only the lower half is computed.
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double p0 = 0.0, p1 = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            p0 = 1.0;
            p1 = x;
            for (int m = 2; m <= n; ++m) {
                const double p2 = ((2.0 * m - 1.0) * x * p1 - (m - 1.0) * p0) / m;
                p0 = p1;
                p1 = p2;
            }
            const double dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) {
                p0 = 1.0;
                p1 = x;
                for (int m = 2; m <= n; ++m) {
                    const double p2 = ((2.0 * m - 1.0) * x * p1 - (m - 1.0) * p0) / m;
                    p0 = p1;
                    p1 = p2;
                }
                break;
            }
        }
        const double dp = n * (x * p1 - p0) / (x * x - 1.0);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[n - 1 - i] = weights[i];
    }
}

double energy_surface(const PeriodicGrid& grid, const WaveParameters& params,
                      const SurfaceState& state, const SurfaceTraces& traces) {
    grid.require_size(state.eta, "energy_surface eta");
    grid.require_size(state.xi, "energy_surface xi");
    const int n = grid.size();
    std::vector<double> xi_x = grid.derivative(state.xi);
    std::vector<double> integrand(n);
    for (int j = 0; j < n; ++j) {
        const double e = state.eta[j];
        integrand[j] = 0.5 * xi_x[j] * traces.t_xi[j] + 0.5 * params.g * e * e -
                       0.5 * params.omega * xi_x[j] * e * e +
                       params.omega * params.omega / 6.0 * e * e * e;
    }
    return grid.integrate(integrand);
}

double energy_surface(const PeriodicGrid& grid, const WaveParameters& params,
                      const SurfaceState& state) {
    HarmonicField field = solve_dirichlet(grid, params, state.eta, state.xi);
    SurfaceTraces traces = surface_traces(field, grid, params, state.eta);
    return energy_surface(grid, params, state, traces);
}

EnergyReport energy_volume(const PeriodicGrid& grid, const WaveParameters& params,
                           const SurfaceState& state) {
    HarmonicField field = solve_dirichlet(grid, params, state.eta, state.xi);
    SurfaceTraces traces = surface_traces(field, grid, params, state.eta);

    const int n = grid.size();
    const int q = params.volume_quad_order;
    if (q < 2 || q > 128)
        throw ConfigError("energy_volume: volume_quad_order out of range");
    std::vector<double> gx, gw;
    gauss_legendre(q, gx, gw);

    const auto& x = grid.nodes();
    double kinetic = 0.0, potential = 0.0;
    std::vector<std::array<double, 2>> pts(q);
    for (int j = 0; j < n; ++j) {
        const double h = state.eta[j];
        for (int i = 0; i < q; ++i) pts[i] = {x[j], 0.5 * h * (gx[i] + 1.0)};
        const auto samples = evaluate_interior(field, params, pts);
        double kcol = 0.0, pcol = 0.0;
        for (int i = 0; i < q; ++i) {
            const auto& s = samples[i];
            kcol += gw[i] * 0.5 * (s.u * s.u + s.v * s.v);
            pcol += gw[i] * params.g * s.y;
        }
        kinetic += 0.5 * h * kcol;   // Jacobian of [0, h] -> [-1, 1]
        potential += 0.5 * h * pcol;
    }
    kinetic *= grid.spacing();
    potential *= grid.spacing();

    EnergyReport rep;
    rep.kinetic = kinetic;
    rep.potential = potential;
    rep.H_volume = kinetic + potential;
    rep.H_surface = energy_surface(grid, params, state, traces);
    rep.mass = grid.integrate(state.eta);
    rep.relative_mismatch = std::abs(rep.H_surface - rep.H_volume) /
                            std::max(std::abs(rep.H_volume), 1e-12);
    return rep;
}

std::vector<double> grad_xi(const PeriodicGrid& grid, const WaveParameters& params,
                            const SurfaceState& state, const SurfaceTraces& traces) {
    grid.require_size(state.eta, "grad_xi eta");
    const int n = grid.size();
    std::vector<double> eta_x = grid.derivative(state.eta);
    std::vector<double> out(n);
    for (int j = 0; j < n; ++j)
        out[j] = traces.xi2[j] - (traces.xi1[j] - params.omega * state.eta[j]) * eta_x[j];
    return out;
}

std::vector<double> grad_eta(const PeriodicGrid& grid, const WaveParameters& params,
                             const SurfaceState& state, const SurfaceTraces& traces) {
    grid.require_size(state.eta, "grad_eta eta");
    const int n = grid.size();
    const double w = params.omega;
    std::vector<double> eta_x = grid.derivative(state.eta);
    std::vector<double> out(n);
    for (int j = 0; j < n; ++j) {
        const double e = state.eta[j];
        const double x1 = traces.xi1[j], x2 = traces.xi2[j];
        out[j] = -w * e * eta_x[j] * x2 - w * e * x1 + 0.5 * w * w * e * e +
                 0.5 * (x1 * x1 + x2 * x2) + params.g * e - x2 * x2 +
                 x1 * x2 * eta_x[j];
    }
    return out;
}

std::vector<double> chi_of_state(const PeriodicGrid& grid, const WaveParameters& params,
                                 const SurfaceState& state) {
    HarmonicField field = solve_dirichlet(grid, params, state.eta, state.xi);
    return surface_traces(field, grid, params, state.eta).chi;
}

double mass(const PeriodicGrid& grid, const SurfaceState& state) {
    return grid.integrate(state.eta);
}

} // namespace vorwave
