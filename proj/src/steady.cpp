#include "vorwave/steady.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "vorwave/dynamics.hpp"
#include "vorwave/energy.hpp"
#include "vorwave/errors.hpp"
#include "vorwave/harmonic.hpp"

namespace vorwave {

namespace {

// Unknown layout for the Newton solve. Pinned eta modes: a0 (depth), ac_1
// (amplitude), as_1 (phase). Pinned xi mode: a0 (gauge). Residual rows: the
// eta equation without its identically-zero mean row, the xi equation with
// the gauge rate added to its mean row. One more row than unknowns; the
// reflection symmetry of the operators makes the system consistent, so each
// step is solved in the least-squares sense.
struct Packing {
    int n;
    int half;                                   // N/2 - 1
    int n_eta() const { return half - 1 + half - 1 + 1; } // ac_2.., as_2.., nyquist
    int n_xi() const { return 2 * half + 1; }   // ac_1.., as_1.., nyquist
    int unknowns() const { return n_eta() + n_xi() + 2; } // + c + gauge rate
    int rows() const { return (n - 1) + n; }
};

struct Point {
    Spectrum eta;
    Spectrum xi;
    double c = 0.0;
    double b = 0.0; // gauge rate
};

Eigen::VectorXd pack(const Packing& p, const Point& pt) {
    Eigen::VectorXd u(p.unknowns());
    int at = 0;
    for (int m = 2; m <= p.half; ++m) u(at++) = pt.eta.ac[m - 1];
    for (int m = 2; m <= p.half; ++m) u(at++) = pt.eta.as[m - 1];
    u(at++) = pt.eta.nyquist;
    for (int m = 1; m <= p.half; ++m) u(at++) = pt.xi.ac[m - 1];
    for (int m = 1; m <= p.half; ++m) u(at++) = pt.xi.as[m - 1];
    u(at++) = pt.xi.nyquist;
    u(at++) = pt.c;
    u(at++) = pt.b;
    return u;
}

void unpack(const Packing& p, const Eigen::VectorXd& u, Point& pt) {
    int at = 0;
    for (int m = 2; m <= p.half; ++m) pt.eta.ac[m - 1] = u(at++);
    for (int m = 2; m <= p.half; ++m) pt.eta.as[m - 1] = u(at++);
    pt.eta.nyquist = u(at++);
    for (int m = 1; m <= p.half; ++m) pt.xi.ac[m - 1] = u(at++);
    for (int m = 1; m <= p.half; ++m) pt.xi.as[m - 1] = u(at++);
    pt.xi.nyquist = u(at++);
    pt.c = u(at++);
    pt.b = u(at++);
}

Eigen::VectorXd residual_vector(const Packing& p, const PeriodicGrid& grid,
                                const WaveParameters& params, const Point& pt) {
    std::vector<double> eta = grid.from_spectrum(pt.eta);
    std::vector<double> xi = grid.from_spectrum(pt.xi);
    Residuals r = traveling_residual(grid, params, eta, xi, pt.c);
    Spectrum se = grid.to_spectrum(r.R_eta);
    Spectrum sx = grid.to_spectrum(r.R_xi);

    Eigen::VectorXd F(p.rows());
    int at = 0;
    for (int m = 1; m <= p.half; ++m) F(at++) = se.ac[m - 1];
    for (int m = 1; m <= p.half; ++m) F(at++) = se.as[m - 1];
    F(at++) = se.nyquist;
    F(at++) = sx.a0 + pt.b;
    for (int m = 1; m <= p.half; ++m) F(at++) = sx.ac[m - 1];
    for (int m = 1; m <= p.half; ++m) F(at++) = sx.as[m - 1];
    F(at++) = sx.nyquist;
    return F;
}

double nodewise_residual_norm(const PeriodicGrid& grid, const Residuals& r) {
    double re = 0.0;
    for (double v : r.R_eta) re = std::max(re, std::abs(v));
    const double mean_rxi = grid.mean(r.R_xi);
    double rx = 0.0;
    for (double v : r.R_xi) rx = std::max(rx, std::abs(v - mean_rxi));
    return std::max(re, rx);
}

TravelingWaveSolution flat_solution(const PeriodicGrid& grid, const WaveParameters& params,
                                    double c_near) {
    const double d = params.d_ref;
    double c = 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (int branch : {+1, -1}) {
        const double cb = linear_dispersion(params, 1, branch).c;
        if (std::abs(cb - c_near) < best) {
            best = std::abs(cb - c_near);
            c = cb;
        }
    }
    TravelingWaveSolution sol;
    sol.eta.assign(grid.size(), d);
    sol.xi.assign(grid.size(), 0.0);
    sol.c = c;
    sol.k_flux = -0.5 * params.omega * d * d - c * d;
    sol.residual_norm = 0.0;
    sol.amplitude = 0.0;
    sol.gauge_rate = params.g * d;
    sol.iterations = 0;
    sol.params = params;
    return sol;
}

} // namespace

FluxReport mass_flux(const PeriodicGrid& grid, const WaveParameters& params,
                     const SurfaceState& state, double c) {
    std::vector<double> chi = chi_of_state(grid, params, state);
    const int n = grid.size();
    std::vector<double> vals(n);
    for (int j = 0; j < n; ++j) vals[j] = chi[j] - c * state.eta[j];
    FluxReport rep;
    rep.k_mean = grid.mean(vals);
    for (double v : vals) rep.deviation = std::max(rep.deviation, std::abs(v - rep.k_mean));
    return rep;
}

double steady_hamiltonian(const PeriodicGrid& grid, const WaveParameters& params,
                          const SurfaceState& state, double c, double k) {
    const int n = grid.size();
    std::vector<double> eta2(n);
    for (int j = 0; j < n; ++j) eta2[j] = state.eta[j] * state.eta[j];
    return energy_surface(grid, params, state) +
           params.omega * k * grid.integrate(state.eta) +
           0.5 * c * params.omega * grid.integrate(eta2);
}

Residuals traveling_residual(const PeriodicGrid& grid, const WaveParameters& params,
                             std::span<const double> eta, std::span<const double> xi,
                             double c) {
    SurfaceState state;
    state.eta.assign(eta.begin(), eta.end());
    state.xi.assign(xi.begin(), xi.end());
    HarmonicField field = solve_dirichlet(grid, params, eta, xi);
    SurfaceTraces traces = surface_traces(field, grid, params, eta);

    std::vector<double> gx = grad_xi(grid, params, state, traces);
    std::vector<double> ge = grad_eta(grid, params, state, traces);
    std::vector<double> eta_x = grid.derivative(eta);
    std::vector<double> xi_x = grid.derivative(xi);

    const int n = grid.size();
    Residuals r;
    r.R_eta.resize(n);
    r.R_xi.resize(n);
    for (int j = 0; j < n; ++j) {
        r.R_eta[j] = gx[j] + c * eta_x[j];
        r.R_xi[j] = -ge[j] - params.omega * traces.chi[j] + c * xi_x[j];
    }
    return r;
}

TravelingWaveSolution traveling_solve(const PeriodicGrid& grid, const WaveParameters& params,
                                      const GuessState& guess, double amplitude_target,
                                      double tol, int max_iter) {
    if (amplitude_target == 0.0) return flat_solution(grid, params, guess.c);

    const int n = grid.size();
    grid.require_size(guess.eta, "traveling_solve eta");
    grid.require_size(guess.xi, "traveling_solve xi");
    const Packing p{n, n / 2 - 1};

    Point pt;
    pt.eta = grid.to_spectrum(guess.eta);
    pt.xi = grid.to_spectrum(guess.xi);
    pt.eta.a0 = params.d_ref;
    pt.eta.ac[0] = amplitude_target;
    pt.eta.as[0] = 0.0;
    pt.xi.a0 = 0.0;
    pt.c = guess.c;
    pt.b = params.g * params.d_ref;

    Eigen::VectorXd u = pack(p, pt);
    Eigen::VectorXd F = residual_vector(p, grid, params, pt);
    double fnorm = F.lpNorm<Eigen::Infinity>();
    double best_fnorm = fnorm;
    int iters = 0;

    for (; iters < max_iter && fnorm > tol; ++iters) {
        Eigen::MatrixXd J(p.rows(), p.unknowns());
        Point work = pt;
        for (int col = 0; col < p.unknowns(); ++col) {
            const double h = 1.5e-8 * (1.0 + std::abs(u(col)));
            Eigen::VectorXd up = u;
            up(col) += h;
            unpack(p, up, work);
            J.col(col) = (residual_vector(p, grid, params, work) - F) / h;
        }

        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(J);
        if (qr.rank() < p.unknowns())
            throw BifurcationError("traveling_solve: singular Jacobian (rank " +
                                   std::to_string(qr.rank()) + " of " +
                                   std::to_string(p.unknowns()) + ")");
        Eigen::VectorXd delta = qr.solve(-F);

        // Backtrack on the residual norm; a persistent increase means the
        // guess is outside the Newton basin.
        double step = 1.0;
        Eigen::VectorXd u_new;
        Eigen::VectorXd F_new;
        double fnorm_new = fnorm;
        bool improved = false;
        for (int bt = 0; bt < 7; ++bt) {
            u_new = u + step * delta;
            unpack(p, u_new, work);
            F_new = residual_vector(p, grid, params, work);
            fnorm_new = F_new.lpNorm<Eigen::Infinity>();
            if (fnorm_new < fnorm || fnorm_new <= tol) {
                improved = true;
                break;
            }
            step *= 0.5;
        }
        if (!improved)
            throw ConvergenceError("traveling_solve: residual stopped decreasing at " +
                                   show_number(best_fnorm), best_fnorm);
        u = u_new;
        F = F_new;
        fnorm = fnorm_new;
        unpack(p, u, pt);
        best_fnorm = std::min(best_fnorm, fnorm);
    }
    if (fnorm > tol)
        throw ConvergenceError("traveling_solve: Newton residual " +
                               show_number(fnorm) + " after " +
                               std::to_string(iters) + " iterations", fnorm);

    TravelingWaveSolution sol;
    sol.eta = grid.from_spectrum(pt.eta);
    sol.xi = grid.from_spectrum(pt.xi);
    sol.c = pt.c;
    sol.gauge_rate = pt.b;
    sol.amplitude = amplitude_target;
    sol.iterations = iters;
    sol.params = params;

    SurfaceState state;
    state.eta = sol.eta;
    state.xi = sol.xi;
    sol.k_flux = mass_flux(grid, params, state, sol.c).k_mean;
    sol.residual_norm =
        nodewise_residual_norm(grid, traveling_residual(grid, params, sol.eta, sol.xi, sol.c));
    return sol;
}

ContinuationResult continuation_run(const PeriodicGrid& grid, const WaveParameters& params,
                                    int branch, std::span<const double> amplitude_steps,
                                    double tol, int max_iter) {
    if (branch == 0) throw ConfigError("continuation_run: branch must be +1 or -1");
    for (std::size_t i = 0; i < amplitude_steps.size(); ++i) {
        if (amplitude_steps[i] < 0.0 ||
            (i > 0 && amplitude_steps[i] <= amplitude_steps[i - 1]))
            throw ConfigError("continuation_run: amplitudes must increase from 0");
    }

    const int n = grid.size();
    const double d = params.d_ref;
    const double c0 = linear_dispersion(params, 1, branch).c;

    ContinuationResult result;
    TravelingWaveSolution prev;
    bool have_prev = false;

    for (double a : amplitude_steps) {
        GuessState guess;
        if (a == 0.0) {
            guess.eta.assign(n, d);
            guess.xi.assign(n, 0.0);
            guess.c = c0;
        } else if (have_prev && prev.amplitude > 0.0) {
            const double scale = a / prev.amplitude;
            guess.eta.resize(n);
            guess.xi.resize(n);
            for (int j = 0; j < n; ++j) {
                guess.eta[j] = d + scale * (prev.eta[j] - d);
                guess.xi[j] = scale * prev.xi[j];
            }
            guess.c = prev.c;
        } else {
            SurfaceState lin = linear_mode_state(grid, params, 1, a, branch);
            guess.eta = lin.eta;
            guess.xi = lin.xi;
            guess.c = c0;
        }

        try {
            prev = traveling_solve(grid, params, guess, a, tol, max_iter);
        } catch (const Error& e) {
            result.completed = false;
            result.failure = "amplitude " + show_number(a) + ": " + e.what();
            result.failure_category = e.category();
            return result;
        }
        have_prev = true;
        result.members.push_back(prev);
    }
    return result;
}

} // namespace vorwave
