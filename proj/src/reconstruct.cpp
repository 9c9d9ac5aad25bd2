#include "vorwave/reconstruct.hpp"

#include <cmath>
#include <limits>

#include "vorwave/dynamics.hpp"
#include "vorwave/errors.hpp"
#include "vorwave/harmonic.hpp"

namespace vorwave {

std::vector<FieldSample> velocity_field(const PeriodicGrid& grid, const WaveParameters& params,
                                        const SurfaceState& state,
                                        std::span<const std::array<double, 2>> points) {
    HarmonicField field = solve_dirichlet(grid, params, state.eta, state.xi);
    auto samples = evaluate_interior(field, params, points);
    std::vector<FieldSample> out(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        out[i].x = samples[i].x;
        out[i].y = samples[i].y;
        out[i].u = samples[i].u;
        out[i].v = samples[i].v;
        out[i].psi = samples[i].psi;
        out[i].P = std::numeric_limits<double>::quiet_NaN();
        out[i].phi_t = std::numeric_limits<double>::quiet_NaN();
    }
    return out;
}

std::vector<FieldSample> pressure_field(const PeriodicGrid& grid, const WaveParameters& params,
                                        const SurfaceState& state,
                                        std::span<const std::array<double, 2>> points) {
    HarmonicField field = solve_dirichlet(grid, params, state.eta, state.xi);
    SurfaceTraces traces = surface_traces(field, grid, params, state.eta);

    Rates rates = rhs(grid, params, state);
    const int n = grid.size();
    std::vector<double> trace_t(n);
    for (int j = 0; j < n; ++j)
        trace_t[j] = rates.xi_dot[j] - traces.xi2[j] * rates.eta_dot[j];
    HarmonicField field_t = solve_dirichlet(grid, params, state.eta, trace_t);

    auto flow = evaluate_interior(field, params, points);
    auto flow_t = evaluate_interior(field_t, params, points);

    std::vector<FieldSample> out(flow.size());
    for (std::size_t i = 0; i < flow.size(); ++i) {
        const auto& s = flow[i];
        out[i].x = s.x;
        out[i].y = s.y;
        out[i].u = s.u;
        out[i].v = s.v;
        out[i].psi = s.psi;
        out[i].phi_t = flow_t[i].phi;
        out[i].P = params.p_atm - flow_t[i].phi - 0.5 * (s.u * s.u + s.v * s.v) -
                   params.omega * s.psi - params.g * s.y;
    }
    return out;
}

double bed_flow_check(const PeriodicGrid& grid, const WaveParameters& params,
                      const SurfaceState& state) {
    HarmonicField field = solve_dirichlet(grid, params, state.eta, state.xi);
    const auto& x = grid.nodes();
    std::vector<std::array<double, 2>> pts(grid.size());
    for (int j = 0; j < grid.size(); ++j) pts[j] = {x[j], 0.0};
    auto samples = evaluate_interior(field, params, pts);
    std::vector<double> u(grid.size());
    for (int j = 0; j < grid.size(); ++j) u[j] = samples[j].u;
    return grid.integrate(u);
}

std::vector<std::array<double, 2>> sample_lattice(const PeriodicGrid& grid,
                                                  const SurfaceState& state,
                                                  int nx, int ny) {
    if (nx < 1 || ny < 2)
        throw ConfigError("sample_lattice: need nx >= 1 and ny >= 2");
    Spectrum eta_spec = grid.to_spectrum(state.eta);
    std::vector<std::array<double, 2>> pts;
    pts.reserve(static_cast<std::size_t>(nx) * ny);
    for (int i = 0; i < nx; ++i) {
        const double x = grid.length() * i / nx;
        const double surface = eval_spectrum(eta_spec, grid.length(), x);
        for (int j = 0; j < ny; ++j)
            pts.push_back({x, surface * j / (ny - 1)});
    }
    return pts;
}

} // namespace vorwave
