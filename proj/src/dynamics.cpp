#include "vorwave/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "vorwave/harmonic.hpp"

namespace vorwave {

namespace {

void axpy(std::vector<double>& y, double a, const std::vector<double>& x) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

SurfaceState advanced(const SurfaceState& s, double dt_eta, const Rates& r, double t) {
    SurfaceState out = s;
    out.t = t;
    axpy(out.eta, dt_eta, r.eta_dot);
    axpy(out.xi, dt_eta, r.xi_dot);
    return out;
}

Rates rhs_stage(const PeriodicGrid& grid, const WaveParameters& params,
                const SurfaceState& state, int stage) {
    try {
        return rhs(grid, params, state);
    } catch (const Error& e) {
        throw Error(e.category(), "rk4 stage " + std::to_string(stage) + ": " + e.what());
    }
}

} // namespace

Rates rhs(const PeriodicGrid& grid, const WaveParameters& params, const SurfaceState& state) {
    HarmonicField field = solve_dirichlet(grid, params, state.eta, state.xi);
    SurfaceTraces traces = surface_traces(field, grid, params, state.eta);

    Rates r;
    r.eta_dot = grad_xi(grid, params, state, traces);
    std::vector<double> ge = grad_eta(grid, params, state, traces);
    const int n = grid.size();
    r.xi_dot.resize(n);
    for (int j = 0; j < n; ++j)
        r.xi_dot[j] = -ge[j] - params.omega * traces.chi[j];
    r.solve_residual = traces.solve_residual;

    if (params.dealias) {
        r.eta_dot = grid.dealias(r.eta_dot, params.dealias_fraction);
        r.xi_dot = grid.dealias(r.xi_dot, params.dealias_fraction);
    }
    return r;
}

SurfaceState step_rk4(const PeriodicGrid& grid, const WaveParameters& params,
                      const SurfaceState& state, double dt) {
    if (!(dt != 0.0))
        throw ConfigError("step_rk4: dt must be nonzero");
    const double t0 = state.t;

    Rates k1 = rhs_stage(grid, params, state, 1);
    Rates k2 = rhs_stage(grid, params, advanced(state, 0.5 * dt, k1, t0 + 0.5 * dt), 2);
    Rates k3 = rhs_stage(grid, params, advanced(state, 0.5 * dt, k2, t0 + 0.5 * dt), 3);
    Rates k4 = rhs_stage(grid, params, advanced(state, dt, k3, t0 + dt), 4);

    SurfaceState out = state;
    out.t = t0 + dt;
    const int n = grid.size();
    for (int j = 0; j < n; ++j) {
        out.eta[j] += dt / 6.0 * (k1.eta_dot[j] + 2.0 * k2.eta_dot[j] +
                                  2.0 * k3.eta_dot[j] + k4.eta_dot[j]);
        out.xi[j] += dt / 6.0 * (k1.xi_dot[j] + 2.0 * k2.xi_dot[j] +
                                 2.0 * k3.xi_dot[j] + k4.xi_dot[j]);
    }

    if (params.normalize_gauge) {
        const double m = grid.mean(out.xi);
        for (double& v : out.xi) v -= m;
    }

    double min_eta = out.eta[0];
    for (double e : out.eta) min_eta = std::min(min_eta, e);
    // written so that a NaN surface also fails the floor test
    if (!(min_eta > params.eta_floor * params.d_ref))
        throw SurfaceCollapseError("step_rk4: surface reached the bed floor at t = " +
                                   show_number(out.t), out.t);
    return out;
}

Trajectory integrate(const PeriodicGrid& grid, const WaveParameters& params,
                     const SurfaceState& state0, double t_end, double dt, int stride) {
    if (!(dt > 0.0)) throw ConfigError("integrate: dt must be positive");
    if (stride < 1) throw ConfigError("integrate: output stride must be >= 1");
    const double span = t_end - state0.t;
    if (span < 0.0) throw ConfigError("integrate: t_end before the initial time");

    const double steps_real = span / dt;
    const long steps = std::lround(steps_real);
    if (std::abs(steps_real - static_cast<double>(steps)) > 1e-8 * std::max(1.0, steps_real))
        throw ConfigError("integrate: dt does not divide the requested time span");

    Trajectory traj;
    SurfaceState state = state0;
    traj.snapshots.push_back(state);
    traj.diagnostics.push_back(diagnose(grid, params, state));

    for (long i = 1; i <= steps; ++i) {
        try {
            state = step_rk4(grid, params, state, dt);
        } catch (const Error& e) {
            traj.aborted = true;
            traj.abort_reason = e.what();
            traj.abort_category = e.category();
            return traj;
        }
        state.t = state0.t + static_cast<double>(i) * dt; // avoid additive drift
        if (i % stride == 0 || i == steps) {
            traj.snapshots.push_back(state);
            traj.diagnostics.push_back(diagnose(grid, params, state));
        }
    }
    return traj;
}

Eigen::MatrixXd linearize(const PeriodicGrid& grid, const WaveParameters& params,
                          const SurfaceState& base, double eps) {
    if (!(eps > 0.0)) throw ConfigError("linearize: eps must be positive");
    const int n = grid.size();
    Eigen::MatrixXd A(2 * n, 2 * n);

    SurfaceState plus = base, minus = base;
    for (int col = 0; col < 2 * n; ++col) {
        double& vp = (col < n) ? plus.eta[col] : plus.xi[col - n];
        double& vm = (col < n) ? minus.eta[col] : minus.xi[col - n];
        const double keep = vp;
        vp = keep + eps;
        vm = keep - eps;
        Rates rp = rhs(grid, params, plus);
        Rates rm = rhs(grid, params, minus);
        vp = keep;
        vm = keep;
        for (int row = 0; row < n; ++row) {
            A(row, col) = (rp.eta_dot[row] - rm.eta_dot[row]) / (2.0 * eps);
            A(n + row, col) = (rp.xi_dot[row] - rm.xi_dot[row]) / (2.0 * eps);
        }
    }

    // Project the constant-xi gauge direction out of both range and domain.
    Eigen::VectorXd gauge = Eigen::VectorXd::Zero(2 * n);
    for (int row = 0; row < n; ++row) gauge(n + row) = 1.0 / std::sqrt(double(n));
    A -= (A * gauge) * gauge.transpose();
    A -= gauge * (gauge.transpose() * A);
    return A;
}

LinearMode linear_dispersion(const WaveParameters& params, int m, int branch) {
    if (m < 1) throw ConfigError("linear_dispersion: mode index must be >= 1");
    if (branch == 0) throw ConfigError("linear_dispersion: branch must be nonzero");
    LinearMode lm;
    lm.k = 2.0 * std::numbers::pi * m / params.L;
    const double t = std::tanh(lm.k * params.d_ref);
    const double wt = params.omega * t;
    const double disc = wt * wt + 4.0 * params.g * lm.k * t;
    lm.mu = 0.5 * (wt + (branch > 0 ? 1.0 : -1.0) * std::sqrt(disc));
    lm.sigma = lm.mu - params.omega * params.d_ref * lm.k;
    lm.c = lm.sigma / lm.k;
    return lm;
}

SurfaceState linear_mode_state(const PeriodicGrid& grid, const WaveParameters& params,
                               int m, double a, int branch) {
    const int n = grid.size();
    if (m < 1 || m >= grid.dealias_cutoff(params.dealias_fraction))
        throw ConfigError("linear_mode_state: mode " + std::to_string(m) +
                          " outside the retained band");
    LinearMode lm = linear_dispersion(params, m, branch);
    const double t = std::tanh(lm.k * params.d_ref);
    const auto& ct = grid.cos_table();
    const auto& st = grid.sin_table();
    SurfaceState s;
    s.t = 0.0;
    s.eta.resize(n);
    s.xi.resize(n);
    const double xi_amp = a * lm.mu / (lm.k * t);
    for (int j = 0; j < n; ++j) {
        const int idx = (j * m) % n;
        s.eta[j] = params.d_ref + a * ct[idx];
        s.xi[j] = xi_amp * st[idx];
    }
    return s;
}

double suggested_dt(const PeriodicGrid& grid, const WaveParameters& params) {
    const int m_max = params.dealias ? grid.dealias_cutoff(params.dealias_fraction) - 1
                                     : grid.size() / 2;
    double sigma_max = 0.0;
    for (int m = 1; m <= m_max; ++m) {
        for (int branch : {+1, -1}) {
            LinearMode lm = linear_dispersion(params, m, branch);
            sigma_max = std::max(sigma_max, std::abs(lm.sigma));
        }
    }
    return 0.5 / sigma_max;
}

DiagRow diagnose(const PeriodicGrid& grid, const WaveParameters& params,
                 const SurfaceState& state) {
    HarmonicField field = solve_dirichlet(grid, params, state.eta, state.xi);
    SurfaceTraces traces = surface_traces(field, grid, params, state.eta);
    DiagRow row;
    row.t = state.t;
    row.H = energy_surface(grid, params, state, traces);
    row.mass = grid.integrate(state.eta);
    row.min_eta = *std::min_element(state.eta.begin(), state.eta.end());
    row.max_eta = *std::max_element(state.eta.begin(), state.eta.end());
    const double mean_eta = grid.mean(state.eta);
    row.crest = std::max(row.max_eta - mean_eta, mean_eta - row.min_eta);
    row.solve_residual = traces.solve_residual;
    return row;
}

} // namespace vorwave
